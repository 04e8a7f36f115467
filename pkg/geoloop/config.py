# coding=utf-8

import os

from .const import EPS_EQ, ENV_EPS_EQ
from .exceptions import ParseException


def env_eps_eq():
    """The GEOLOOP_EPS_EQ override, or None when unset."""
    raw = os.environ.get(ENV_EPS_EQ, "").strip()
    if not raw:
        return None
    try:
        return _check(float(raw))
    except ValueError:
        raise ParseException("ParseException", "{}={!r} is not a number".format(ENV_EPS_EQ, raw))


def _check(eps_eq):
    if not eps_eq >= 0:
        raise ParseException("ParseException", "eps_eq should be >= 0, got {}".format(eps_eq))
    return eps_eq


def resolve_eps_eq(eps_eq=None):
    """
    Point-coincidence threshold in effect.

    Precedence: explicit argument, then the GEOLOOP_EPS_EQ environment
    variable, then const.EPS_EQ.
    """
    if eps_eq is None:
        eps_eq = env_eps_eq()
        return EPS_EQ if eps_eq is None else eps_eq
    return _check(float(eps_eq))

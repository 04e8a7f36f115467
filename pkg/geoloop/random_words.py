# coding=utf-8
# PCG64：同一个 seed 在所有平台上得到同一组词

import math

import numpy as np

from .const import SPECIES_G, SPECIES_Z_BASED, WALK_STEP_FRACTION
from .exceptions import ValidityException
from .g_logger import logger
from .group import chain_word, as_element
from .words import Word, reduce


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def step_norm(m):
    r = m.chart_radius
    return WALK_STEP_FRACTION * r if math.isfinite(r) else 1.0


def _walk(m, v0, steps, rng):
    step = step_norm(m)
    pts = [v0]
    for _ in range(steps):
        x = pts[-1]
        pts.append(m.exp_map(x, m.random_tangent(rng, x, step)))
    return pts


def _check_length(max_length):
    if int(max_length) != max_length or max_length < 2:
        raise ValidityException("PreconditionException", "max_length should be integer and >= 2, got {}".format(
            max_length))


def random_based_word(m, v0, max_length, rng):
    """An unreduced based path (p, ..., v0) of k <= max_length hops."""
    _check_length(max_length)
    v0 = m.as_point(v0)
    pts = _walk(m, v0, int(rng.integers(1, max_length + 1)), rng)
    return Word(m, pts[::-1], SPECIES_Z_BASED, v0)


def random_closed_word(m, v0, max_length, rng):
    """An unreduced based loop of k <= max_length hops: a walk out of v0 and a chain back."""
    _check_length(max_length)
    v0 = m.as_point(v0)
    pts = _walk(m, v0, int(rng.integers(1, max_length)), rng)
    while True:
        back = chain_word(m, v0, pts[-1])
        traversal = pts + list(back.points[1:])
        if len(traversal) - 1 <= max_length or len(pts) == 1:
            break
        pts.pop()
    if len(traversal) == 1:
        traversal.append(v0)
    return Word(m, traversal[::-1], SPECIES_G, v0)


def random_words(m, v0, count, max_length, seed):
    """count reduced group elements, deterministic per seed."""
    if int(count) != count or count < 0:
        raise ValidityException("PreconditionException", "count should be integer and >= 0, got {}".format(count))
    rng = make_rng(seed)
    words = [as_element(random_closed_word(m, v0, max_length, rng)) for _ in range(int(count))]
    logger.info("GeoLoop.RandomWords.random_words: %s words on %s, seed=%s", len(words), m, seed)
    return words


def random_based_words(m, v0, count, max_length, seed):
    rng = make_rng(seed)
    return [reduce(random_based_word(m, v0, max_length, rng)) for _ in range(int(count))]

# coding=utf-8
import math

import numpy as np

from .config import resolve_eps_eq
from .const import SPHERE_POINT_TOL, TORUS_HALF, ERR_UNIQUENESS, QUADRATURE_NODES
from .exceptions import ValidityException
from .geodesic import GeodesicPath, constant_path, freeze
from .geodesic_solver import DEFAULT_SHOOTING, integrate_geodesic, solve_bvp, shoot_geodesic, metric_at
from . import metrics

_MANIFOLD_DICT = {}


def register_manifold(kind):
    def decorator(cls):
        cls.kind = kind
        _MANIFOLD_DICT[kind] = cls
        return cls

    return decorator


def get_manifold(kind, **kwargs):
    cls = _MANIFOLD_DICT.get(kind)
    if cls is None:
        raise ValidityException("RepresentationException",
                                "unknown manifold kind {!r}, available: {}".format(kind, sorted(_MANIFOLD_DICT)))
    return cls(**kwargs)


def manifold_kinds():
    return sorted(_MANIFOLD_DICT)


class ManifoldSpec:
    kind = None
    # 表示坐标下的欧氏弦长不超过内蕴距离，可用于快速排除
    chord_bounded = False

    def __init__(self, dim, eps_eq=None):
        if int(dim) != dim or dim < 1:
            raise ValidityException("RepresentationException", "dim should be integer and >= 1, got {}".format(dim))
        self.dim = int(dim)
        self.eps_eq = resolve_eps_eq(eps_eq)

    def params(self):
        return (self.kind, self.dim)

    def __eq__(self, other):
        if not isinstance(other, ManifoldSpec):
            return NotImplemented
        return self.params() == other.params() and self.eps_eq == other.eps_eq

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.params(), self.eps_eq))

    def __repr__(self):
        return "{}{}".format(self.__class__.__name__, self.params()[1:])

    # ---- points ----

    @property
    def ambient_dim(self):
        return self.dim

    def point(self, coords):
        """Validate coordinates and return the canonical point."""
        try:
            arr = np.array(coords, dtype=float)
        except (TypeError, ValueError):
            raise ValidityException("RepresentationException", "not a coordinate vector: {!r}".format(coords))
        if arr.shape != (self.ambient_dim,):
            raise ValidityException("RepresentationException",
                                    "{} expects {} coordinates, got shape {}".format(self, self.ambient_dim, arr.shape))
        if not np.all(np.isfinite(arr)):
            raise ValidityException("RepresentationException", "non-finite coordinates {}".format(list(arr)))
        return freeze(self._canonical(arr))

    def _canonical(self, arr):
        return arr

    def as_point(self, x):
        if isinstance(x, np.ndarray) and not x.flags.writeable and x.shape == (self.ambient_dim,):
            return x
        return self.point(x)

    def equal(self, a, b):
        a, b = self.as_point(a), self.as_point(b)
        if self.chord_bounded and np.max(np.abs(a - b)) > self.eps_eq:
            return False
        return self._distance(a, b) <= self.eps_eq

    # ---- metric ----

    def distance(self, a, b):
        return self._distance(self.as_point(a), self.as_point(b))

    def distance_bound(self, a, b):
        """An upper bound on distance; exact on closed-form manifolds."""
        return self.distance(a, b)

    def unique_minimal(self, a, b):
        return self._unique_minimal(self.as_point(a), self.as_point(b))

    def norm(self, a, v):
        """Riemannian norm of the tangent vector v at a."""
        return float(np.linalg.norm(v))

    @property
    def uniqueness_scale(self):
        """Distance below which minimal geodesics are unique."""
        return math.inf

    @property
    def chart_radius(self):
        """Radius ρ_p of the local trivializations."""
        return self.uniqueness_scale / 2.0

    # ---- geodesics ----

    def _require_unique(self, a, b):
        if not self._unique_minimal(a, b):
            raise ValidityException("UniquenessException", ERR_UNIQUENESS.format(list(a), list(b)))

    def geodesic(self, a, b):
        a, b = self.as_point(a), self.as_point(b)
        self._require_unique(a, b)
        if np.array_equal(a, b):
            return constant_path(self, a)
        return self._geodesic(a, b)

    def _geodesic(self, a, b):
        v = self._log(a, b)
        return GeodesicPath(self, a, b, self._distance(a, b), lambda t: self._exp(a, t * v))

    def log_map(self, a, b):
        a, b = self.as_point(a), self.as_point(b)
        self._require_unique(a, b)
        return freeze(self._log(a, b))

    def exp_map(self, a, v):
        a = self.as_point(a)
        v = np.asarray(v, dtype=float)
        if v.shape != (self.ambient_dim,):
            raise ValidityException("RepresentationException", "tangent vector has shape {}".format(v.shape))
        return self._exp(a, v)

    def connecting_curve(self, a, b):
        """A deterministic curve from a to b, used to build chain words."""
        a, b = self.as_point(a), self.as_point(b)
        return self.geodesic(a, b)

    # ---- sampling ----

    def random_point(self, rng):
        raise NotImplementedError

    def random_tangent(self, rng, a, max_norm):
        """A tangent vector at a with Riemannian norm in [0.05, 1) * max_norm."""
        direction = rng.normal(size=self.ambient_dim)
        direction /= np.linalg.norm(direction)
        target = rng.uniform(0.05, 1.0) * max_norm
        return direction * target / self.norm(a, direction)

    def _distance(self, a, b):
        raise NotImplementedError

    def _unique_minimal(self, a, b):
        return True

    def _log(self, a, b):
        raise NotImplementedError

    def _exp(self, a, v):
        raise NotImplementedError


@register_manifold("euclidean")
class Euclidean(ManifoldSpec):
    chord_bounded = True

    def _distance(self, a, b):
        return float(np.linalg.norm(b - a))

    def _log(self, a, b):
        return b - a

    def _exp(self, a, v):
        return freeze(a + v)

    def random_point(self, rng):
        return freeze(rng.normal(size=self.dim))


def _sphere_angle(u, w):
    c = float(np.dot(u, w))
    s = float(np.linalg.norm(w - c * u))
    return math.atan2(s, c)


def _sphere_log(a, b, radius):
    u, w = a / radius, b / radius
    c = float(np.dot(u, w))
    perp = w - c * u
    s = float(np.linalg.norm(perp))
    if s == 0.0:
        return np.zeros_like(a)
    return radius * math.atan2(s, c) * perp / s


def _sphere_exp(a, v, radius):
    u = a / radius
    v = v - np.dot(v, u) * u
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        return np.array(a)
    theta = nv / radius
    x = math.cos(theta) * u + math.sin(theta) * (v / nv)
    return radius * x / np.linalg.norm(x)


def _check_radius(arr, radius):
    n = float(np.linalg.norm(arr))
    if abs(n - radius) > SPHERE_POINT_TOL * radius:
        raise ValidityException("RepresentationException",
                                "|x| = {!r} is not the radius {!r}".format(n, radius))


@register_manifold("sphere")
class Sphere(ManifoldSpec):
    """Round n-sphere of radius r in R^(n+1)."""
    chord_bounded = True

    def __init__(self, dim=2, radius=1.0, eps_eq=None):
        super(Sphere, self).__init__(dim, eps_eq)
        if not radius > 0:
            raise ValidityException("RepresentationException", "radius should be > 0")
        self.radius = float(radius)

    def params(self):
        return (self.kind, self.dim, self.radius)

    @property
    def ambient_dim(self):
        return self.dim + 1

    def _canonical(self, arr):
        _check_radius(arr, self.radius)
        return arr

    def _distance(self, a, b):
        return self.radius * _sphere_angle(a / self.radius, b / self.radius)

    def _unique_minimal(self, a, b):
        return math.pi * self.radius - self._distance(a, b) > self.eps_eq

    def _log(self, a, b):
        return _sphere_log(a, b, self.radius)

    def _exp(self, a, v):
        return freeze(_sphere_exp(a, v, self.radius))

    @property
    def uniqueness_scale(self):
        return math.pi * self.radius

    def connecting_curve(self, a, b):
        a, b = self.as_point(a), self.as_point(b)
        if self._unique_minimal(a, b):
            return self._geodesic(a, b) if not np.array_equal(a, b) else constant_path(self, a)
        # 对径点：沿一个确定的大圆走半圈
        u = a / self.radius
        axis = np.zeros(self.ambient_dim)
        axis[int(np.argmin(np.abs(u)))] = 1.0
        e = axis - np.dot(axis, u) * u
        e /= np.linalg.norm(e)
        r = self.radius
        return GeodesicPath(self, a, b, math.pi * r,
                            lambda t: freeze(r * (math.cos(math.pi * t) * u + math.sin(math.pi * t) * e)))

    def random_point(self, rng):
        x = rng.normal(size=self.ambient_dim)
        return freeze(self.radius * x / np.linalg.norm(x))

    def random_tangent(self, rng, a, max_norm):
        u = a / self.radius
        direction = rng.normal(size=self.ambient_dim)
        direction -= np.dot(direction, u) * u
        direction /= np.linalg.norm(direction)
        return direction * rng.uniform(0.05, 1.0) * max_norm


def _wrap(x):
    y = x - np.floor(x)
    # x - floor(x) 可能因舍入得到 1.0
    y[y >= 1.0] = 0.0
    return y


@register_manifold("flat_torus")
class FlatTorus(ManifoldSpec):
    """R^n / Z^n with coordinates in the fundamental domain [0, 1)^n."""

    def _canonical(self, arr):
        return _wrap(arr)

    def displacement(self, a, b):
        """Minimal lift displacement from a to b, each coordinate in [-1/2, 1/2)."""
        return np.mod(b - a + TORUS_HALF, 1.0) - TORUS_HALF

    def _distance(self, a, b):
        return float(np.linalg.norm(self.displacement(a, b)))

    def _unique_minimal(self, a, b):
        d = np.abs(self.displacement(a, b))
        return bool(np.all(np.abs(d - TORUS_HALF) > self.eps_eq))

    def _log(self, a, b):
        return self.displacement(a, b)

    def _exp(self, a, v):
        return freeze(_wrap(a + v))

    @property
    def uniqueness_scale(self):
        return TORUS_HALF

    def connecting_curve(self, a, b):
        a, b = self.as_point(a), self.as_point(b)
        d = self.displacement(a, b)
        return GeodesicPath(self, a, b, float(np.linalg.norm(d)), lambda t: freeze(_wrap(a + t * d)))

    def random_point(self, rng):
        return freeze(_wrap(rng.uniform(0.0, 1.0, size=self.dim)))


def _mobius_add(x, y):
    xy = float(np.dot(x, y))
    xx = float(np.dot(x, x))
    yy = float(np.dot(y, y))
    return ((1 + 2 * xy + yy) * x + (1 - xx) * y) / (1 + 2 * xy + xx * yy)


@register_manifold("hyperbolic_disk")
class HyperbolicDisk(ManifoldSpec):
    """Poincaré ball model of hyperbolic n-space, curvature -1; n = 2 is the disk."""
    chord_bounded = True

    def __init__(self, dim=2, eps_eq=None):
        super(HyperbolicDisk, self).__init__(dim, eps_eq)
        if self.dim < 2:
            raise ValidityException("RepresentationException", "hyperbolic space needs dim >= 2")

    def _canonical(self, arr):
        if not float(np.dot(arr, arr)) < 1.0:
            raise ValidityException("RepresentationException", "{} is not inside the unit ball".format(list(arr)))
        return arr

    def _distance(self, a, b):
        q = (1.0 - float(np.dot(a, a))) * (1.0 - float(np.dot(b, b)))
        return 2.0 * math.asinh(float(np.linalg.norm(a - b)) / math.sqrt(q))

    @staticmethod
    def _conformal(a):
        return 2.0 / (1.0 - float(np.dot(a, a)))

    def norm(self, a, v):
        return self._conformal(a) * float(np.linalg.norm(v))

    def _log(self, a, b):
        w = _mobius_add(-a, b)
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return np.zeros_like(a)
        return (2.0 / self._conformal(a)) * math.atanh(nw) * w / nw

    def _exp(self, a, v):
        nv = float(np.linalg.norm(v))
        if nv == 0.0:
            return a
        y = math.tanh(self._conformal(a) * nv / 2.0) * v / nv
        return self.point(_mobius_add(a, y))

    def random_point(self, rng):
        direction = rng.normal(size=self.dim)
        direction /= np.linalg.norm(direction)
        return freeze(rng.uniform(0.0, 0.8) * direction)


def _sign_normalize(arr):
    nz = np.flatnonzero(arr)
    if nz.size and arr[nz[0]] < 0:
        return -arr
    return arr


@register_manifold("projective_plane")
class ProjectivePlane(ManifoldSpec):
    """
    RP^n as the quotient of the n-sphere of radius r by x ~ -x.

    Points are sphere representatives whose first nonzero coordinate is positive.
    """

    def __init__(self, dim=2, radius=1.0, eps_eq=None):
        super(ProjectivePlane, self).__init__(dim, eps_eq)
        if not radius > 0:
            raise ValidityException("RepresentationException", "radius should be > 0")
        self.radius = float(radius)

    def params(self):
        return (self.kind, self.dim, self.radius)

    @property
    def ambient_dim(self):
        return self.dim + 1

    def _canonical(self, arr):
        _check_radius(arr, self.radius)
        return _sign_normalize(arr)

    @staticmethod
    def lift_near(a, b):
        """The sphere representative of b closest to the lift a."""
        return b if np.dot(a, b) >= 0 else -b

    def equal(self, a, b):
        a, b = self.as_point(a), self.as_point(b)
        if min(np.max(np.abs(a - b)), np.max(np.abs(a + b))) > self.eps_eq:
            return False
        return self._distance(a, b) <= self.eps_eq

    def _distance(self, a, b):
        r = self.radius
        return r * _sphere_angle(a / r, self.lift_near(a, b) / r)

    def _unique_minimal(self, a, b):
        return 0.5 * math.pi * self.radius - self._distance(a, b) > self.eps_eq

    def _log(self, a, b):
        return _sphere_log(a, self.lift_near(a, b), self.radius)

    def _exp(self, a, v):
        return freeze(_sign_normalize(_sphere_exp(a, v, self.radius)))

    @property
    def uniqueness_scale(self):
        return 0.5 * math.pi * self.radius

    def connecting_curve(self, a, b):
        a, b = self.as_point(a), self.as_point(b)
        lift = self.lift_near(a, b)
        v = _sphere_log(a, lift, self.radius)
        length = float(np.linalg.norm(v))
        return GeodesicPath(self, a, b, length, lambda t: self._exp(a, t * v))

    def random_point(self, rng):
        x = rng.normal(size=self.ambient_dim)
        return freeze(_sign_normalize(self.radius * x / np.linalg.norm(x)))

    def random_tangent(self, rng, a, max_norm):
        u = a / self.radius
        direction = rng.normal(size=self.ambient_dim)
        direction -= np.dot(direction, u) * u
        direction /= np.linalg.norm(direction)
        return direction * rng.uniform(0.05, 1.0) * max_norm


_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(QUADRATURE_NODES)
_GAUSS_NODES = 0.5 * (_GAUSS_NODES + 1.0)
_GAUSS_WEIGHTS = 0.5 * _GAUSS_WEIGHTS


@register_manifold("chart")
class ChartManifold(ManifoldSpec):
    def __init__(self, dim=2, metric="flat", rho_u=None, eps_eq=None, shooting=None):
        """
        A coordinate chart with a metric tensor callback.

        :param dim: chart dimension
        :param metric: a builtin metric name (see metrics.BUILTIN_METRICS) or a ChartMetric
        :param rho_u: declared radius below which minimal geodesics are unique; required, > 0
        :param shooting: ShootingConfig for the geodesic solver
        """
        super(ChartManifold, self).__init__(dim, eps_eq)
        if rho_u is None or not rho_u > 0:
            raise ValidityException("RepresentationException", "rho_u should be > 0, got {}".format(rho_u))
        if isinstance(metric, str):
            metric = metrics.get_metric(metric, self.dim)
        elif not isinstance(metric, metrics.ChartMetric):
            metric = metrics.ChartMetric("callback", self.dim, metric)
        if metric.dim != self.dim:
            raise ValidityException("RepresentationException",
                                    "metric {} does not match dim {}".format(metric, self.dim))
        self.metric = metric
        self.rho_u = float(rho_u)
        self.shooting = shooting or DEFAULT_SHOOTING

    def params(self):
        key = self.metric.name if self.metric.name != "callback" else id(self.metric)
        return (self.kind, self.dim, key, self.rho_u)

    def in_domain(self, x):
        return bool(self.metric.domain(x))

    def _canonical(self, arr):
        if not self.in_domain(arr):
            raise ValidityException("RepresentationException", "{} is outside the chart domain".format(list(arr)))
        return arr

    def straight_length(self, a, b):
        """Riemannian length of the straight chart segment from a to b."""
        d = np.asarray(b, dtype=float) - np.asarray(a, dtype=float)
        if not np.any(d):
            return 0.0
        total = 0.0
        for s, w in zip(_GAUSS_NODES, _GAUSS_WEIGHTS):
            g = metric_at(self, a + s * d)
            total += w * math.sqrt(float(d.dot(g).dot(d)))
        return total

    def equal(self, a, b):
        return self.straight_length(self.as_point(a), self.as_point(b)) <= self.eps_eq

    def _distance(self, a, b):
        if np.array_equal(a, b):
            return 0.0
        return shoot_geodesic(self, a, b, self.shooting).length

    def distance_bound(self, a, b):
        return self.straight_length(self.as_point(a), self.as_point(b))

    def _unique_minimal(self, a, b):
        return self.straight_length(a, b) < self.rho_u

    def norm(self, a, v):
        v = np.asarray(v, dtype=float)
        return math.sqrt(float(v.dot(metric_at(self, a)).dot(v)))

    def _geodesic(self, a, b):
        return solve_bvp(self, a, b, self.shooting)

    def _log(self, a, b):
        if np.array_equal(a, b):
            return np.zeros_like(a)
        return np.array(solve_bvp(self, a, b, self.shooting).initial_velocity)

    def _exp(self, a, v):
        if not np.any(v):
            return a
        return self.point(integrate_geodesic(self, a, v, self.shooting).b)

    @property
    def uniqueness_scale(self):
        return self.rho_u

    @property
    def chart_radius(self):
        return self.rho_u

    def connecting_curve(self, a, b):
        a, b = self.as_point(a), self.as_point(b)
        return GeodesicPath(self, a, b, self.straight_length(a, b), lambda t: self.point(a + t * (b - a)))

    def random_point(self, rng):
        low, high = self.metric.sample_box
        for _ in range(100):
            x = rng.uniform(low, high)
            if self.in_domain(x):
                return freeze(x)
        raise ValidityException("RepresentationException", "sample box of {} misses the chart domain".format(self))

# coding=utf-8
import numpy as np

from .const import RK4_STEPS, NEWTON_MAX_ITERS, BVP_TOLERANCE, FD_STEP, MAX_DAMPING_HALVINGS
from .exceptions import ValidityException, SolverException
from .g_logger import logger
from .geodesic import GeodesicPath, constant_path, freeze


class ShootingConfig:
    def __init__(self, rk4_steps=RK4_STEPS,
                 newton_max_iters=NEWTON_MAX_ITERS,
                 bvp_tolerance=BVP_TOLERANCE,
                 fd_step=FD_STEP):
        """
        :param rk4_steps: RK4 steps over t in [0, 1]
        :param newton_max_iters: Newton iterations before giving up
        :param bvp_tolerance: accepted endpoint error, in chart coordinates
        :param fd_step: finite-difference step for Christoffel symbols and the shooting Jacobian
        """
        if int(rk4_steps) != rk4_steps or rk4_steps < 1:
            raise ValidityException("ShootingConfigException", "rk4_steps should be integer and >= 1")
        if int(newton_max_iters) != newton_max_iters or newton_max_iters < 1:
            raise ValidityException("ShootingConfigException", "newton_max_iters should be integer and >= 1")
        if not bvp_tolerance > 0:
            raise ValidityException("ShootingConfigException", "bvp_tolerance should be > 0")
        if not fd_step > 0:
            raise ValidityException("ShootingConfigException", "fd_step should be > 0")

        self.rk4_steps = int(rk4_steps)
        self.newton_max_iters = int(newton_max_iters)
        self.bvp_tolerance = float(bvp_tolerance)
        self.fd_step = float(fd_step)

    def replace(self, **kwargs):
        values = dict(rk4_steps=self.rk4_steps,
                      newton_max_iters=self.newton_max_iters,
                      bvp_tolerance=self.bvp_tolerance,
                      fd_step=self.fd_step)
        values.update(kwargs)
        return ShootingConfig(**values)

    def __repr__(self):
        return "ShootingConfig(rk4_steps={}, newton_max_iters={}, bvp_tolerance={}, fd_step={})".format(
            self.rk4_steps, self.newton_max_iters, self.bvp_tolerance, self.fd_step)


DEFAULT_SHOOTING = ShootingConfig()


def metric_at(m, x, check=True):
    g = np.asarray(m.metric(x), dtype=float)
    if g.shape != (m.dim, m.dim):
        raise SolverException("GeometryException", "metric at {} has shape {}".format(list(x), g.shape))
    if check:
        if not np.allclose(g, g.T, rtol=1e-12, atol=1e-14):
            raise SolverException("GeometryException", "metric at {} is not symmetric".format(list(x)))
        try:
            np.linalg.cholesky(g)
        except np.linalg.LinAlgError:
            raise SolverException("GeometryException", "metric at {} is not positive definite".format(list(x)))
    return g


def christoffel(m, x, h=FD_STEP):
    """Γ[i, j, k] = Γ^i_jk at x."""
    n = m.dim
    g = metric_at(m, x)
    dg = np.empty((n, n, n))  # dg[k] = ∂_k g
    for k in range(n):
        e = np.zeros(n)
        e[k] = h
        dg[k] = (metric_at(m, x + e, check=False) - metric_at(m, x - e, check=False)) / (2.0 * h)
    # t[l, j, k] = ∂_j g_lk + ∂_k g_lj - ∂_l g_jk
    t = np.transpose(dg, (1, 0, 2)) + np.transpose(dg, (1, 2, 0)) - dg
    return 0.5 * np.einsum("il,ljk->ijk", np.linalg.inv(g), t)


def _acceleration(m, x, v, h):
    return -np.einsum("ijk,j,k->i", christoffel(m, x, h), v, v)


def speed(m, x, v):
    return float(np.sqrt(np.dot(v, metric_at(m, x).dot(v))))


def _check_domain(m, x):
    if not m.in_domain(x):
        raise SolverException("DomainException", "trajectory left the chart at {}".format(list(x)))


def _hermite(positions, velocities, steps):
    def evaluate(t):
        u = t * steps
        i = min(int(u), steps - 1)
        s = u - i
        h = 1.0 / steps
        s2 = s * s
        s3 = s2 * s
        return freeze((2 * s3 - 3 * s2 + 1) * positions[i]
                      + (s3 - 2 * s2 + s) * h * velocities[i]
                      + (-2 * s3 + 3 * s2) * positions[i + 1]
                      + (s3 - s2) * h * velocities[i + 1])

    return evaluate


def integrate_geodesic(m, a, v0, cfg=None):
    """
    Exponential-map trajectory t -> exp(a, t * v0) for t in [0, 1].

    :return: GeodesicPath whose endpoint b is the integrated exp(a, v0); the
        RK4 node states are kept on the path as ``trajectory``.
    """
    cfg = cfg or m.shooting
    a = np.asarray(a, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    if v0.shape != a.shape:
        raise ValidityException("RepresentationException", "tangent vector has shape {}".format(v0.shape))

    steps = cfg.rk4_steps
    h = 1.0 / steps
    fd = cfg.fd_step
    positions = np.empty((steps + 1, m.dim))
    velocities = np.empty((steps + 1, m.dim))
    x, v = a.copy(), v0.copy()
    positions[0], velocities[0] = x, v
    length = speed(m, a, v0)

    for i in range(steps):
        k1x, k1v = v, _acceleration(m, x, v, fd)
        x2, v2 = x + 0.5 * h * k1x, v + 0.5 * h * k1v
        _check_domain(m, x2)
        k2x, k2v = v2, _acceleration(m, x2, v2, fd)
        x3, v3 = x + 0.5 * h * k2x, v + 0.5 * h * k2v
        _check_domain(m, x3)
        k3x, k3v = v3, _acceleration(m, x3, v3, fd)
        x4, v4 = x + h * k3x, v + h * k3v
        _check_domain(m, x4)
        k4x, k4v = v4, _acceleration(m, x4, v4, fd)

        x = x + h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v = v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        _check_domain(m, x)
        positions[i + 1], velocities[i + 1] = x, v

    return GeodesicPath(m, freeze(a), freeze(x), length, _hermite(positions, velocities, steps),
                        initial_velocity=freeze(v0), trajectory=(positions, velocities))


def solve_bvp(m, a, b, cfg=None):
    """
    Geodesic from a to b by shooting.

    Newton starts from the straight chart displacement b - a. A step that does
    not decrease the residual is halved, at most MAX_DAMPING_HALVINGS times.
    """
    estimate = m.straight_length(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    if estimate >= m.rho_u:
        raise ValidityException("UniquenessException",
                                "length estimate {} is not below the uniqueness radius {}".format(estimate, m.rho_u))
    return shoot_geodesic(m, a, b, cfg)


def shoot_geodesic(m, a, b, cfg=None):
    """Shooting without the uniqueness-radius precondition. Only SolverException can come out."""
    cfg = cfg or m.shooting
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.array_equal(a, b):
        return constant_path(m, freeze(a))

    def shoot(v):
        path = integrate_geodesic(m, a, v, cfg)
        return path, path.b - b

    v = b - a
    path, r = shoot(v)
    err = float(np.linalg.norm(r))
    n = m.dim
    for iteration in range(cfg.newton_max_iters):
        logger.debug("GeoLoop.GeodesicSolver.shoot_geodesic: iteration=%s, residual=%s", iteration, err)
        if err < cfg.bvp_tolerance:
            return path.with_endpoints(freeze(a), freeze(b))

        jac = np.empty((n, n))
        for k in range(n):
            e = np.zeros(n)
            e[k] = cfg.fd_step
            jac[:, k] = (shoot(v + e)[1] - r) / cfg.fd_step
        try:
            dv = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            raise SolverException("ConvergenceException", "singular shooting Jacobian at v={}".format(list(v)))

        # 阻尼：残差不下降则步长减半
        step = 1.0
        for _ in range(MAX_DAMPING_HALVINGS + 1):
            trial = v + step * dv
            try:
                trial_path, trial_r = shoot(trial)
            except SolverException as e:
                logger.debug("GeoLoop.GeodesicSolver.shoot_geodesic: trial step %s rejected, %s", step, e)
                step *= 0.5
                continue
            trial_err = float(np.linalg.norm(trial_r))
            if trial_err < err:
                v, path, r, err = trial, trial_path, trial_r, trial_err
                break
            step *= 0.5
        else:
            raise SolverException("ConvergenceException",
                                  "residual stalled at {} after {} iterations".format(err, iteration + 1))

    if err < cfg.bvp_tolerance:
        return path.with_endpoints(freeze(a), freeze(b))

    logger.warning("GeoLoop.GeodesicSolver.shoot_geodesic: no convergence from %s to %s, residual=%s",
                   list(a), list(b), err)
    raise SolverException("ConvergenceException",
                          "residual {} after {} Newton iterations".format(err, cfg.newton_max_iters))

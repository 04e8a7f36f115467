# coding=utf-8

import numpy as np


def freeze(coords):
    """Read-only float copy; the canonical in-memory form of a point."""
    arr = np.array(coords, dtype=float)
    arr.setflags(write=False)
    return arr


class GeodesicPath:
    """
    Constant-speed parameterization t -> point of a geodesic segment, t in [0, 1].

    The endpoints are returned exactly at t <= 0 and t >= 1 so that glued
    segments meet without a gap.
    """

    def __init__(self, manifold, a, b, length, evaluator, initial_velocity=None, trajectory=None):
        self.manifold = manifold
        self.a = a
        self.b = b
        self.length = float(length)
        self._evaluator = evaluator
        # 仅数值求解的测地线才有
        self.initial_velocity = initial_velocity
        self.trajectory = trajectory

    def __call__(self, t):
        if t <= 0:
            return self.a
        if t >= 1:
            return self.b
        return self._evaluator(float(t))

    def raw(self, t):
        """The evaluator without endpoint snapping."""
        return self._evaluator(float(t))

    def points(self, ts):
        return [self(t) for t in ts]

    def with_endpoints(self, a, b):
        return GeodesicPath(self.manifold, a, b, self.length, self._evaluator,
                            initial_velocity=self.initial_velocity, trajectory=self.trajectory)

    def __repr__(self):
        return "GeodesicPath(a={}, b={}, length={})".format(list(self.a), list(self.b), self.length)


def constant_path(manifold, a):
    return GeodesicPath(manifold, a, a, 0.0, lambda t: a)

# coding=utf-8

import math

import numpy as np

from .exceptions import ValidityException


class ChartMetric:
    """
    A metric tensor callback on a coordinate chart.

    :param name: registry name, used in manifold JSON
    :param dim: chart dimension
    :param tensor: callable x -> (dim, dim) array
    :param domain: callable x -> bool, the chart's coordinate domain
    :param sample_box: (low, high) coordinate box inside the domain used for random points
    """

    def __init__(self, name, dim, tensor, domain=None, sample_box=None):
        self.name = name
        self.dim = dim
        self.tensor = tensor
        self.domain = domain or (lambda x: True)
        if sample_box is None:
            sample_box = (-np.ones(dim), np.ones(dim))
        self.sample_box = (np.asarray(sample_box[0], dtype=float), np.asarray(sample_box[1], dtype=float))

    def __call__(self, x):
        return self.tensor(x)

    def __repr__(self):
        return "ChartMetric({}, dim={})".format(self.name, self.dim)


def flat(dim):
    identity = np.eye(dim)
    return ChartMetric("flat", dim, lambda x: identity)


def polar_sphere(dim=2):
    """Unit sphere in (theta, phi): g = diag(1, sin^2 theta), 0 < theta < pi."""
    if dim != 2:
        raise ValidityException("RepresentationException", "polar_sphere is 2-dimensional")

    def tensor(x):
        s = math.sin(x[0])
        return np.array([[1.0, 0.0], [0.0, s * s]])

    return ChartMetric("polar_sphere", 2, tensor,
                       domain=lambda x: 0.0 < x[0] < math.pi,
                       sample_box=([0.5, -math.pi], [math.pi - 0.5, math.pi]))


def poincare_disk(dim=2):
    """Poincaré ball metric 4 / (1 - |u|^2)^2 * I on |u| < 1."""
    identity = np.eye(dim)

    def tensor(x):
        f = 2.0 / (1.0 - float(np.dot(x, x)))
        return f * f * identity

    return ChartMetric("poincare_disk", dim, tensor,
                       domain=lambda x: float(np.dot(x, x)) < 1.0,
                       sample_box=(-0.5 * np.ones(dim), 0.5 * np.ones(dim)))


BUILTIN_METRICS = {
    "flat": flat,
    "polar_sphere": polar_sphere,
    "poincare_disk": poincare_disk,
}


def get_metric(name, dim):
    factory = BUILTIN_METRICS.get(name)
    if factory is None:
        raise ValidityException("RepresentationException",
                                "unknown metric {!r}, available: {}".format(name, sorted(BUILTIN_METRICS)))
    return factory(dim)


def polar_to_unit(x):
    """Embedding of the polar-sphere chart into R^3."""
    theta, phi = float(x[0]), float(x[1])
    return np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])

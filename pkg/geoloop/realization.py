# coding=utf-8
from collections import namedtuple

import numpy as np

from .const import INVARIANCE_SAMPLES, CLOSED_SPECIES
from .exceptions import ValidityException
from .invariants import pi1_class, supports_pi1
from .words import reduce, reduction_steps, require_valid

SAME_IMAGE_TOL = 1e-6


class PiecewiseLoop:
    def __init__(self, word, segments):
        self.word = word
        self.manifold = word.manifold
        self.segments = segments
        self.lengths = np.array([s.length for s in segments], dtype=float)
        self.length = float(self.lengths.sum())
        if self.length > 0:
            deltas = np.concatenate(([0.0], np.cumsum(self.lengths) / self.length))
            deltas[-1] = 1.0
        else:
            deltas = np.linspace(0.0, 1.0, len(segments) + 1)
        self.breakpoints = deltas
        self.start = word.tail
        self.end = word.head

    @property
    def closed(self):
        return self.word.species in CLOSED_SPECIES

    def segment_index(self, t):
        """j such that t lies in [δ_{j-1}, δ_j); zero-length segments are skipped."""
        j = int(np.searchsorted(self.breakpoints, t, side="right"))
        return min(max(j, 1), len(self.segments))

    def __call__(self, t):
        t = float(t)
        if t <= 0.0 or self.length == 0.0:
            return self.start
        if t >= 1.0:
            return self.end
        j = self.segment_index(t)
        lo, hi = self.breakpoints[j - 1], self.breakpoints[j]
        return self.segments[j - 1]((t - lo) / (hi - lo))

    def __repr__(self):
        return "PiecewiseLoop(k={}, length={})".format(len(self.segments), self.length)


def realize(w):
    require_valid(w)
    m = w.manifold
    pts = w.traversal()
    segments = [m.geodesic(pts[j - 1], pts[j]) for j in range(1, len(pts))]
    return PiecewiseLoop(w, segments)


def sample(loop, n):
    if int(n) != n or n < 1:
        raise ValidityException("PreconditionException", "samples should be integer and >= 1, got {}".format(n))
    n = int(n)
    return [loop(float(i) / n) for i in range(n + 1)]


def polyline_length(m, points):
    return float(sum(m.distance(points[i], points[i + 1]) for i in range(len(points) - 1)))


def breakpoint_gap(loop):
    """Largest distance between the end of one segment and the start of the next."""
    m = loop.manifold
    gap = 0.0
    for left, right in zip(loop.segments[:-1], loop.segments[1:]):
        if left.length == 0.0 or right.length == 0.0:
            continue
        gap = max(gap, m.distance(left.raw(1.0), right.raw(0.0)))
    return gap


def excised_realization(w):
    """realize(w) with the there-and-back excursions that reduce deletes cut out."""
    m = w.manifold
    pts = w.points
    # segs[j] 连接列表位置 j 与 j-1，方向 x_0 -> x_k
    segs = [None] + [m.geodesic(pts[j], pts[j - 1]) for j in range(1, len(pts))]
    for j, backtrack in reduction_steps(w):
        if backtrack:
            segs[j:j + 2] = [None]
        else:
            del segs[j]
    return PiecewiseLoop(w, [s for s in segs[1:] if s is not None][::-1])


InvarianceReport = namedtuple("InvarianceReport",
                              "same_image max_deviation excised_length reduced_length pi1_agrees "
                              "excised_same_image")


def _compare(m, u, v, ts):
    deviation = max(m.distance_bound(u(t), v(t)) for t in ts)
    gap = u.length - v.length
    return abs(gap) <= SAME_IMAGE_TOL * max(1.0, u.length) and deviation <= SAME_IMAGE_TOL, deviation, gap


def invariance_report(w, samples=INVARIANCE_SAMPLES):
    """
    Compare realize(w) with realize(reduce(w)).

    Removed duplicates change nothing. Each removed backtrack drops a
    there-and-back excursion, so ``same_image`` is False and the excursion
    length shows up in ``excised_length``. ``excised_same_image`` compares
    against realize(w) with those excursions cut out, which always matches.
    """
    require_valid(w)
    r = reduce(w)
    reduced = realize(r)
    m = w.manifold

    ts = np.linspace(0.0, 1.0, samples)
    same, deviation, excised = _compare(m, realize(w), reduced, ts)
    excised_same = _compare(m, excised_realization(w), reduced, ts)[0]

    agrees = None
    if w.species in CLOSED_SPECIES and supports_pi1(m):
        agrees = pi1_class(w) == pi1_class(r)
    return InvarianceReport(same, float(deviation), float(excised), reduced.length, agrees, excised_same)


def realize_invariance_check(w):
    return invariance_report(w).same_image

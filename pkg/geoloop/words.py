# coding=utf-8
# points[0] 是 x_k，points[-1] 是 x_0

from collections import namedtuple

import numpy as np

from .const import SPECIES, SPECIES_Z, SPECIES_X, SPECIES_G, BASED_SPECIES, ERR_MANIFOLD
from .exceptions import ValidityException


class Word:
    def __init__(self, manifold, points, species=SPECIES_Z, basepoint=None):
        if species not in SPECIES:
            raise ValidityException("RepresentationException",
                                    "species should be one of {}, got {!r}".format(SPECIES, species))
        if len(points) == 0:
            raise ValidityException("RepresentationException", "a word has at least one point")
        if species in BASED_SPECIES and basepoint is None:
            raise ValidityException("RepresentationException", "species {} needs a basepoint".format(species))

        self.manifold = manifold
        self.species = species
        self.points = tuple(_member(manifold, p) for p in points)
        self.basepoint = _member(manifold, basepoint) if basepoint is not None else None

    @property
    def k(self):
        return len(self.points) - 1

    @property
    def head(self):
        return self.points[0]

    @property
    def tail(self):
        return self.points[-1]

    def x(self, i):
        """The point x_i."""
        return self.points[self.k - i]

    def traversal(self):
        """Points from x_0 to x_k."""
        return self.points[::-1]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __repr__(self):
        return "{}({}, k={}, points={})".format(self.__class__.__name__, self.species, self.k,
                                                [[float(c) for c in p] for p in self.points])


class ReducedWord(Word):
    """A word in normal form; only ``reduce`` creates these."""


def _member(manifold, coords):
    shape = np.shape(coords)
    if shape != (manifold.ambient_dim,):
        raise ValidityException("ManifoldMismatchException",
                                "point of shape {} does not belong to {}".format(shape, manifold))
    return manifold.as_point(coords)


class Validation(namedtuple("Validation", "ok index reason")):
    """Result of ``validate``; truthy iff the word is valid. ``index`` is the i of the failing x_i."""

    def __bool__(self):
        return self.ok

    __nonzero__ = __bool__


_VALID = Validation(True, None, None)


def validate(w):
    m = w.manifold
    for i in range(w.k):
        if not m.unique_minimal(w.x(i), w.x(i + 1)):
            return Validation(False, i, "no unique minimal geodesic from x_{} to x_{}".format(i, i + 1))

    if w.species in BASED_SPECIES and not m.equal(w.x(0), w.basepoint):
        return Validation(False, 0, "x_0 is not the basepoint")
    if w.species in (SPECIES_X, SPECIES_G) and not m.equal(w.x(0), w.x(w.k)):
        return Validation(False, w.k, "x_0 != x_k")
    return _VALID


def require_valid(w):
    result = validate(w)
    if not result:
        raise ValidityException("ValidityException", "invalid {} word at index {}: {}".format(
            w.species, result.index, result.reason))


def _reducible(pts, j, eq):
    """Whether the deletion rule fires at list position j (never the head)."""
    if eq(pts[j], pts[j - 1]):
        return True
    return j + 1 < len(pts) and eq(pts[j - 1], pts[j + 1])


def first_reducible(w):
    """Index i of the leftmost applicable deletion, or None for a normal form."""
    eq = w.manifold.equal
    for j in range(1, len(w.points)):
        if _reducible(w.points, j, eq):
            return w.k - j
    return None


def reduction_steps(w):
    """
    The deletions reduce applies, in order, as (j, backtrack) pairs. j is the
    list position at that moment; backtrack is False for a duplicate.
    """
    require_valid(w)
    eq = w.manifold.equal
    pts = list(w.points)
    j = 1
    while j < len(pts):
        if eq(pts[j], pts[j - 1]):
            yield j, False
        elif j + 1 < len(pts) and eq(pts[j - 1], pts[j + 1]):
            yield j, True
        else:
            j += 1
            continue
        del pts[j]
        # 删除只影响 j-1 及其右侧的规则
        j = max(j - 1, 1)


def reduce(w):
    """
    Normal form of w: delete x_i while x_i = x_{i+1} or x_{i+1} = x_{i-1},
    always at the leftmost applicable position. The exact values of x_k and
    x_0 are kept.
    """
    if isinstance(w, ReducedWord):
        return w

    pts = list(w.points)
    for j, _ in reduction_steps(w):
        del pts[j]

    pts[0] = w.points[0]
    if len(pts) > 1:
        pts[-1] = w.points[-1]
    return ReducedWord(w.manifold, pts, w.species, w.basepoint)


def check_same_space(u, v):
    if u.manifold != v.manifold:
        raise ValidityException("ManifoldMismatchException", ERR_MANIFOLD.format(u.manifold, v.manifold))


def class_equal(u, v):
    check_same_space(u, v)
    if u.species != v.species:
        raise ValidityException("SpeciesMismatchException",
                                "cannot compare {} with {} words".format(u.species, v.species))
    ru, rv = reduce(u), reduce(v)
    if len(ru) != len(rv):
        return False
    eq = u.manifold.equal
    return all(eq(p, q) for p, q in zip(ru.points, rv.points))


def project_pi(w):
    """π: the head x_k."""
    require_valid(w)
    return w.head


def concat(u, v, species=SPECIES_Z, basepoint=None):
    """
    Groupoid product u·v of words meeting at x_0(u) = x_k(v).

    The shared junction point appears twice and collapses on reduction.
    """
    check_same_space(u, v)
    if not u.manifold.equal(u.tail, v.head):
        raise ValidityException("ComposabilityException",
                                "x_0 = {} of the left word is not the head {} of the right word".format(
                                    list(u.tail), list(v.head)))
    return Word(u.manifold, u.points + v.points, species, basepoint)


def reverse(w, species=SPECIES_Z, basepoint=None):
    """(x_0, ..., x_k): the inverse path."""
    return Word(w.manifold, w.points[::-1], species, basepoint)


def segment(manifold, *points):
    """The word [points...] with no species constraint, e.g. [x, p]."""
    return Word(manifold, points, SPECIES_Z)


def all_normal_forms(w):
    """
    Every normal form reachable from w by some order of deletions.

    Points are labelled once by coincidence, then the deletion graph is
    searched over label sequences. A single result means the rewriting is
    confluent on w.
    """
    require_valid(w)
    m = w.manifold
    reps = []
    labels = []
    for p in w.points:
        for index, q in enumerate(reps):
            if m.equal(p, q):
                labels.append(index)
                break
        else:
            labels.append(len(reps))
            reps.append(p)

    start = tuple(range(len(w.points)))
    seen = {start}
    stack = [start]
    forms = {}
    while stack:
        state = stack.pop()
        terminal = True
        for j in range(1, len(state)):
            here, left = labels[state[j]], labels[state[j - 1]]
            if here == left or (j + 1 < len(state) and left == labels[state[j + 1]]):
                terminal = False
                nxt = state[:j] + state[j + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if terminal:
            forms.setdefault(tuple(labels[i] for i in state), state)

    return [ReducedWord(m, [w.points[i] for i in state], w.species, w.basepoint)
            for state in forms.values()]

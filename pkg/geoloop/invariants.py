# coding=utf-8
import math

import numpy as np

from .const import SPECIES_G, SPECIES_X, CLOSED_SPECIES, BASED_SPECIES
from .exceptions import ValidityException
from .group import mul, inverse, identity, action_mu, GroupElement
from .words import reduce, concat, reverse, require_valid, check_same_space

LATTICE = "lattice"
SIGN = "sign"
WINDING = "winding"
TRIVIAL = "trivial"


class DeckElement:
    """An element of the deck group of the covering: Z^n, {±1}, Z or the trivial group."""

    def __init__(self, kind, value=None):
        if kind == LATTICE:
            value = tuple(int(v) for v in value)
        elif kind == SIGN:
            if value not in (1, -1):
                raise ValidityException("RepresentationException", "sign should be +1 or -1, got {}".format(value))
            value = int(value)
        elif kind == WINDING:
            value = int(value)
        elif kind == TRIVIAL:
            value = None
        else:
            raise ValidityException("RepresentationException", "unknown deck element kind {!r}".format(kind))
        self.kind = kind
        self.value = value

    def _check(self, other):
        if self.kind != other.kind or (self.kind == LATTICE and len(self.value) != len(other.value)):
            raise ValidityException("ManifoldMismatchException", "cannot compose {} with {}".format(self, other))

    def compose(self, other):
        self._check(other)
        if self.kind == LATTICE:
            return DeckElement(LATTICE, [a + b for a, b in zip(self.value, other.value)])
        if self.kind == SIGN:
            return DeckElement(SIGN, self.value * other.value)
        if self.kind == WINDING:
            return DeckElement(WINDING, self.value + other.value)
        return self

    __mul__ = compose

    def inverse(self):
        if self.kind == LATTICE:
            return DeckElement(LATTICE, [-a for a in self.value])
        if self.kind == WINDING:
            return DeckElement(WINDING, -self.value)
        return self

    @property
    def is_identity(self):
        if self.kind == LATTICE:
            return not any(self.value)
        if self.kind == SIGN:
            return self.value == 1
        if self.kind == WINDING:
            return self.value == 0
        return True

    def __eq__(self, other):
        if not isinstance(other, DeckElement):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.kind, self.value))

    def __repr__(self):
        return "DeckElement({}, {})".format(self.kind, self.value)


def _deck_kind(m):
    if m.kind == "flat_torus":
        return LATTICE
    if m.kind == "projective_plane":
        return SIGN
    if m.kind == "sphere" and m.dim == 1:
        return WINDING
    if m.kind in ("sphere", "euclidean", "hyperbolic_disk"):
        return TRIVIAL
    return None


def supports_pi1(m):
    return _deck_kind(m) is not None


def _require_supported(m):
    kind = _deck_kind(m)
    if kind is None:
        raise ValidityException("UnsupportedInvariantException",
                                "no computable covering for {}".format(m))
    return kind


def deck_identity(m):
    kind = _require_supported(m)
    if kind == LATTICE:
        return DeckElement(LATTICE, [0] * m.dim)
    if kind == SIGN:
        return DeckElement(SIGN, 1)
    if kind == WINDING:
        return DeckElement(WINDING, 0)
    return DeckElement(TRIVIAL)


def _angle(x):
    return math.atan2(x[1], x[0])


def _lift_deck(m, pts):
    """
    Lift the polyline pts from the fixed lift of pts[0] and return the deck
    element carrying the lift of pts[-1] in the fundamental domain to the
    final lift. Consecutive points must be joined by unique minimal geodesics.
    """
    kind = _require_supported(m)
    if kind == LATTICE:
        total = np.array(pts[0], dtype=float)
        for a, b in zip(pts[:-1], pts[1:]):
            total += m.displacement(a, b)
        return DeckElement(LATTICE, np.rint(total - pts[-1]).astype(int))
    if kind == SIGN:
        lift = np.array(pts[0], dtype=float)
        for b in pts[1:]:
            lift = m.lift_near(lift, b)
        return DeckElement(SIGN, 1 if np.dot(lift, pts[-1]) > 0 else -1)
    if kind == WINDING:
        theta = _angle(pts[0])
        for a, b in zip(pts[:-1], pts[1:]):
            theta += math.atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1])
        return DeckElement(WINDING, int(round((theta - _angle(pts[-1])) / (2.0 * math.pi))))
    return DeckElement(TRIVIAL)


def pi1_class(g):
    """Deck element of a closed word (species X or G); invariant under reduction."""
    if g.species not in CLOSED_SPECIES:
        raise ValidityException("SpeciesMismatchException", "pi1_class needs a closed word, got {}".format(g.species))
    require_valid(g)
    return _lift_deck(g.manifold, g.traversal())


def deck_element_of_path(z):
    """The component P_g of the based path z, relative to the fundamental-domain lift of its head."""
    if z.species not in BASED_SPECIES:
        raise ValidityException("SpeciesMismatchException", "deck_element_of_path needs a based word, got {}".format(
            z.species))
    require_valid(z)
    m = z.manifold
    if _require_supported(m) == TRIVIAL:
        raise ValidityException("UnsupportedInvariantException", "{} has no nontrivial covering".format(m))
    return _lift_deck(m, z.traversal())


def polyline_deck_element(m, points, closed=True):
    """Nearest-lift continuation of a sampled curve, e.g. the samples of a realization."""
    pts = [m.as_point(p) for p in points]
    if closed and not m.equal(pts[0], pts[-1]):
        raise ValidityException("PreconditionException", "polyline is not closed")
    for a, b in zip(pts[:-1], pts[1:]):
        if not m.unique_minimal(a, b):
            raise ValidityException("PreconditionException", "polyline samples are too far apart to lift")
    return _lift_deck(m, pts)


def free_loop(z, g):
    """
    The free loop z·g·z⁻¹ at π(z), reduced. z is a based path from v0 to π(z)
    and g a group element at the same basepoint; conjugate pairs (z·h, h⁻¹·g·h)
    give the same loop.
    """
    zg = action_mu(z, g)
    return reduce(concat(zg, reverse(z), SPECIES_X))


def conjugate(g, a):
    """a·g·a⁻¹."""
    return mul(mul(a, g), inverse(a))


def commutator(a, b):
    """[a,b] = a·b·a⁻¹·b⁻¹."""
    return mul(mul(a, b), mul(inverse(a), inverse(b)))


class SurfaceTuple:
    def __init__(self, genus, elements):
        if int(genus) != genus or genus < 1:
            raise ValidityException("SurfaceTupleException", "genus should be integer and >= 1, got {}".format(genus))
        elements = list(elements)
        if len(elements) != 2 * genus:
            raise ValidityException("SurfaceTupleException",
                                    "genus {} needs {} elements, got {}".format(genus, 2 * genus, len(elements)))
        first = elements[0]
        for e in elements:
            if not isinstance(e, GroupElement) or e.species != SPECIES_G:
                raise ValidityException("SurfaceTupleException", "tuple entries should be group elements")
            try:
                check_same_space(first, e)
            except ValidityException as ex:
                raise ValidityException("SurfaceTupleException", ex.reason)
            if not first.manifold.equal(first.basepoint, e.basepoint):
                raise ValidityException("SurfaceTupleException", "tuple entries have different basepoints")
        self.genus = int(genus)
        self.elements = elements

    @property
    def manifold(self):
        return self.elements[0].manifold

    @property
    def basepoint(self):
        return self.elements[0].basepoint


def chi(s):
    """[x_1,x_2]·[x_3,x_4]···[x_{2g-1},x_{2g}]."""
    result = identity(s.manifold, s.basepoint)
    for i in range(s.genus):
        result = mul(result, commutator(s.elements[2 * i], s.elements[2 * i + 1]))
    return result


def is_surface_relator(s):
    """Whether chi(s) is trivial in π1; the π1-level condition for lying in the image of ξ_g."""
    return pi1_class(chi(s)).is_identity


# coding=utf-8
from .const import SPECIES_G, SPECIES_Z_BASED, BASED_SPECIES, CHAIN_STEP_BUDGET, ERR_BASEPOINT, ERR_CHART_DOMAIN
from .exceptions import ValidityException
from .g_logger import logger
from .words import Word, ReducedWord, reduce, concat, reverse, segment, require_valid, check_same_space, \
    class_equal


class GroupElement(ReducedWord):
    """A reduced word of species G: x_0 = x_k = v0."""

    def __init__(self, manifold, points, basepoint):
        ReducedWord.__init__(self, manifold, points, SPECIES_G, basepoint)


def _element(w):
    r = reduce(w)
    if isinstance(r, GroupElement):
        return r
    return GroupElement(r.manifold, r.points, r.basepoint)


def _require_species(w, *species):
    if w.species not in species:
        raise ValidityException("SpeciesMismatchException",
                                "expected a word of species {}, got {}".format(" or ".join(species), w.species))


def _check_basepoint(u, v):
    check_same_space(u, v)
    if not u.manifold.equal(u.basepoint, v.basepoint):
        raise ValidityException("BasepointMismatchException", ERR_BASEPOINT.format(list(u.basepoint),
                                                                                   list(v.basepoint)))


def identity(m, v0):
    v0 = m.point(v0)
    return GroupElement(m, [v0], v0)


def as_element(w):
    """Validate and reduce a G-species word into a GroupElement."""
    _require_species(w, SPECIES_G)
    return _element(w)


def mul(g, h):
    _require_species(g, SPECIES_G)
    _require_species(h, SPECIES_G)
    _check_basepoint(g, h)
    return _element(concat(g, h, SPECIES_G, g.basepoint))


def inverse(g):
    _require_species(g, SPECIES_G)
    return _element(reverse(g, SPECIES_G, g.basepoint))


def action_mu(z, g):
    """z·g: the right action of G(M,∞) on based paths; π(z·g) = π(z)."""
    _require_species(z, SPECIES_Z_BASED)
    _require_species(g, SPECIES_G)
    _check_basepoint(z, g)
    return reduce(concat(z, g, SPECIES_Z_BASED, z.basepoint))


def chain_word(m, v0, p, step_budget=CHAIN_STEP_BUDGET):
    """
    A based word (p, w_{q-1}, ..., w_1, v0) obtained by cutting the manifold's
    connecting curve from v0 to p into q equal parameter steps, for the
    smallest q <= step_budget whose hops all have unique minimal geodesics.
    """
    v0, p = m.as_point(v0), m.as_point(p)
    if m.equal(v0, p):
        return ReducedWord(m, [v0], SPECIES_Z_BASED, v0)

    curve = m.connecting_curve(v0, p)
    for q in range(1, int(step_budget) + 1):
        pts = [curve(float(i) / q) for i in range(q + 1)]
        if all(m.unique_minimal(pts[i], pts[i + 1]) for i in range(q)):
            logger.debug("GeoLoop.Group.chain_word: %s hops from %s to %s", q, list(v0), list(p))
            return reduce(Word(m, pts[::-1], SPECIES_Z_BASED, v0))

    raise ValidityException("SubdivisionException",
                            "no valid chain from {} to {} within {} steps".format(list(v0), list(p), step_budget))


class LocalChart:
    def __init__(self, p, e_p, radius):
        """
        Trivialization data over the neighbourhood of p.

        :param p: chart center
        :param e_p: fixed based word with head p, the fiber basepoint over p
        :param radius: neighbourhood radius, no larger than the manifold's uniqueness scale
        """
        _require_species(e_p, SPECIES_Z_BASED)
        m = e_p.manifold
        if not m.equal(e_p.head, p):
            raise ValidityException("ChartDomainException", "e_p does not lie over the center {}".format(list(p)))
        if not radius > 0 or radius > m.uniqueness_scale:
            raise ValidityException("ChartDomainException",
                                    "radius should be in (0, {}], got {}".format(m.uniqueness_scale, radius))
        self.manifold = m
        self.basepoint = e_p.basepoint
        self.p = e_p.head
        self.e_p = reduce(e_p)
        self.radius = float(radius)

    def contains(self, x):
        m = self.manifold
        return m.unique_minimal(x, self.p) and m.distance_bound(x, self.p) < self.radius

    def require(self, x):
        if not self.contains(x):
            raise ValidityException("ChartDomainException",
                                    ERR_CHART_DOMAIN.format(self.manifold.distance_bound(x, self.p), self.radius))

    def __repr__(self):
        return "LocalChart(p={}, radius={}, k={})".format(list(self.p), self.radius, self.e_p.k)


def local_chart(m, v0, p, step_budget=CHAIN_STEP_BUDGET):
    return LocalChart(m.as_point(p), chain_word(m, v0, p, step_budget), m.chart_radius)


def _check_chart(c, w):
    check_same_space(c.e_p, w)
    if not c.manifold.equal(c.basepoint, w.basepoint):
        raise ValidityException("BasepointMismatchException", ERR_BASEPOINT.format(list(c.basepoint),
                                                                                   list(w.basepoint)))


def phi_p(c, x, g):
    """[x,p]·e_p·g, a based path over x."""
    _require_species(g, SPECIES_G)
    _check_chart(c, g)
    x = c.manifold.as_point(x)
    c.require(x)
    head = concat(segment(c.manifold, x, c.p), c.e_p, SPECIES_Z_BASED, c.basepoint)
    return reduce(concat(head, g, SPECIES_Z_BASED, c.basepoint))


def theta_p(c, e):
    """e_p⁻¹·[p,π(e)]·e, the fiber coordinate of e."""
    _require_species(e, SPECIES_Z_BASED)
    _check_chart(c, e)
    require_valid(e)
    c.require(e.head)
    m = c.manifold
    back = concat(reverse(c.e_p), segment(m, c.p, e.head))
    return _element(concat(back, e, SPECIES_G, c.basepoint))


def transition(cp, cq, x):
    """g_{p,q}(x) = e_p⁻¹·[p,x,q]·e_q."""
    check_same_space(cp.e_p, cq.e_p)
    if not cp.manifold.equal(cp.basepoint, cq.basepoint):
        raise ValidityException("BasepointMismatchException", ERR_BASEPOINT.format(list(cp.basepoint),
                                                                                   list(cq.basepoint)))
    m = cp.manifold
    x = m.as_point(x)
    cp.require(x)
    cq.require(x)
    back = concat(reverse(cp.e_p), segment(m, cp.p, x, cq.p))
    return _element(concat(back, cq.e_p, SPECIES_G, cp.basepoint))


def trivialize(c, e):
    """e -> (π(e), θ_p(e))."""
    return e.head, theta_p(c, e)


def fiber_translation(c, e, e2):
    """The g with e·g = e2, for based paths e and e2 over the same point."""
    if not c.manifold.equal(e.head, e2.head):
        raise ValidityException("PreconditionException", "fiber words lie over different points {} and {}".format(
            list(e.head), list(e2.head)))
    return mul(inverse(theta_p(c, e)), theta_p(c, e2))


def cocycle_holds(cp, cq, cr, x):
    return class_equal(mul(transition(cp, cq, x), transition(cq, cr, x)), transition(cp, cr, x))


def _as_based_path(w):
    _require_species(w, *BASED_SPECIES)
    if w.species == SPECIES_Z_BASED:
        return w
    return Word(w.manifold, w.points, SPECIES_Z_BASED, w.basepoint)


def contract_step(t, w):
    """
    Move the head x_k a fraction t along the geodesic toward x_{k-1}.

    w must be based and have no duplicate or backtrack at the head. The result
    is a based path (species Z_based), unreduced.
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValidityException("PreconditionException", "t should be in [0, 1], got {}".format(t))
    w = _as_based_path(w)
    require_valid(w)
    m = w.manifold
    if w.k == 0:
        raise ValidityException("PreconditionException", "the word (v0) has no head segment to contract")
    if m.equal(w.x(w.k), w.x(w.k - 1)):
        raise ValidityException("PreconditionException", "x_k = x_(k-1)")
    if w.k >= 2 and m.equal(w.x(w.k), w.x(w.k - 2)):
        raise ValidityException("PreconditionException", "x_k = x_(k-2)")

    head = m.geodesic(w.head, w.x(w.k - 1))(t)
    return Word(m, (head,) + w.points[1:], SPECIES_Z_BASED, w.basepoint)


def contraction_path(w):
    """Reduced words visited by repeated contract_step(1, ·), ending at (v0)."""
    current = reduce(_as_based_path(w))
    path = [current]
    while current.k > 0:
        current = reduce(contract_step(1.0, current))
        path.append(current)
    logger.debug("GeoLoop.Group.contraction_path: %s steps", len(path) - 1)
    return path


def is_identity(g):
    m = g.manifold
    r = reduce(g)
    return r.k == 0 and m.equal(r.head, g.basepoint)

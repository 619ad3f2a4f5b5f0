"""Max-plus tropical polynomials, regular subdivisions and mixed subdivisions.

Lifts use the lower-hull convention: the exponent ``v`` with coefficient
``a_v`` is lifted to ``(v, -a_v)``. A lower face with functional ``(c, 1)``
corresponds to the point ``x = -c`` of the tropical hypersurface, where every
monomial on the face attains the maximum.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, DimensionUnsupported, DuplicateExponent, LengthMismatch
from .geometry import LatticePolytope, convex_hull, minkowski_sum
from .linalg import dot, frac_vec, primitive


@dataclass(frozen=True)
class TropicalPolynomial:
    terms: tuple  # sorted ((exponent, coefficient), ...)
    dim: int

    @classmethod
    def from_dict(cls, terms):
        if not terms:
            raise ValueError("a tropical polynomial needs at least one term")
        items = sorted((tuple(int(x) for x in v), Fraction(a)) for v, a in terms.items())
        dims = {len(v) for v, _ in items}
        if len(dims) != 1:
            raise DimensionMismatch("exponent vectors have mixed dimensions")
        return cls(tuple(items), dims.pop())

    def as_dict(self):
        return dict(self.terms)

    def support(self):
        return [v for v, _ in self.terms]

    def newton_polytope(self):
        return convex_hull(self.support())

    def shift(self, c):
        """Add a constant to every coefficient."""
        return TropicalPolynomial(tuple((v, a + Fraction(c)) for v, a in self.terms), self.dim)

    def __mul__(self, other):
        """Tropical product."""
        if self.dim != other.dim:
            raise DimensionMismatch("tropical product of different dimensions")
        out = {}
        for v, a in self.terms:
            for w, b in other.terms:
                key = tuple(x + y for x, y in zip(v, w))
                out[key] = max(out.get(key, a + b), a + b)
        return TropicalPolynomial.from_dict(out)


def trop_eval(phi, x):
    x = frac_vec(x)
    if len(x) != phi.dim:
        raise DimensionMismatch(f"point of dimension {len(x)} for a polynomial in {phi.dim} variables")
    return max(a + dot(v, x) for v, a in phi.terms)


def tropicalize(support, magnitudes):
    support = [tuple(int(x) for x in v) for v in support]
    if len(support) != len(magnitudes):
        raise LengthMismatch("support and magnitudes differ in length")
    if len(set(support)) != len(support):
        raise DuplicateExponent("repeated exponent vector")
    return TropicalPolynomial.from_dict(dict(zip(support, magnitudes)))


@dataclass(frozen=True)
class MixedCell:
    summands: tuple  # LatticePolytope per input
    supports: tuple  # exponent tuples per input
    total: LatticePolytope
    type: tuple
    dual_point: tuple  # vertex of the tropical intersection, or None for faces

    @property
    def dim(self):
        return self.total.intrinsic_dim

    def is_transverse(self):
        return self.total.intrinsic_dim == sum(self.type)

    def face(self, u):
        """Face minimizing the linear functional ``u`` on every summand."""
        u = frac_vec(u)
        supports = []
        for pts in self.supports:
            best = min(dot(u, p) for p in pts)
            supports.append(tuple(p for p in pts if dot(u, p) == best))
        return _make_cell(supports, None)


def _make_cell(supports, dual_point):
    summands = tuple(convex_hull(s) for s in supports)
    total = summands[0]
    for P in summands[1:]:
        total = minkowski_sum(total, P)
    return MixedCell(
        summands=summands,
        supports=tuple(tuple(s) for s in supports),
        total=total,
        type=tuple(P.intrinsic_dim for P in summands),
        dual_point=dual_point,
    )


@dataclass(frozen=True)
class MixedSubdivision:
    base: LatticePolytope
    cells: tuple
    polys: tuple

    def transverse(self):
        return all(c.is_transverse() for c in self.cells)


def _lift(phi):
    return [tuple(Fraction(x) for x in v) + (-a,) for v, a in phi.terms]


def _lower_functionals(lifted, n):
    """Vectors c with (c, 1) supporting a lower face of conv(lifted) whose
    projection is n-dimensional."""
    hull = convex_hull(lifted)
    if hull.intrinsic_dim == n + 1:
        out = []
        for normal, _ in hull.facets:
            k = normal[n]
            if k > 0:
                out.append(tuple(Fraction(x, k) for x in normal[:n]))
        return out
    if hull.intrinsic_dim == n:
        for h, _ in hull.equations:
            if h[n] != 0:
                return [tuple(Fraction(x, h[n]) for x in h[:n])]
    raise DimensionUnsupported("Newton polytope is not full-dimensional")


def cayley_mixed_subdivision(polys):
    """Maximal cells of the mixed subdivision induced by the tropical
    product of ``polys`` (equivalently, the Cayley lift sliced at the
    barycenter)."""
    polys = tuple(polys)
    if not polys:
        raise ValueError("need at least one tropical polynomial")
    n = polys[0].dim
    if any(p.dim != n for p in polys):
        raise DimensionMismatch("tropical polynomials of different dimensions")
    lifts = [_lift(p) for p in polys]
    lifted_sum = convex_hull(lifts[0])
    for L in lifts[1:]:
        lifted_sum = minkowski_sum(lifted_sum, convex_hull(L))
    cells = []
    for c in _lower_functionals(list(lifted_sum.vertices), n):
        supports = []
        for phi in polys:
            vals = [(dot(c, v) - a, v) for v, a in phi.terms]
            best = min(val for val, _ in vals)
            supports.append(tuple(tuple(Fraction(x) for x in v) for val, v in vals if val == best))
        cells.append(_make_cell(supports, tuple(-x for x in c)))
    cells.sort(key=lambda cell: cell.dual_point)
    base = polys[0].newton_polytope()
    for p in polys[1:]:
        base = minkowski_sum(base, p.newton_polytope())
    return MixedSubdivision(base=base, cells=tuple(cells), polys=polys)


@dataclass(frozen=True)
class RegularSubdivision:
    cells: tuple
    cell_support: tuple
    dual_points: tuple


def regular_subdivision(phi):
    if len(phi.terms) == 1:
        v = phi.terms[0][0]
        return RegularSubdivision((convex_hull([v]),), ((v,),), ())
    ms = cayley_mixed_subdivision([phi])
    return RegularSubdivision(
        cells=tuple(c.total for c in ms.cells),
        cell_support=tuple(tuple(tuple(int(x) for x in p) for p in c.supports[0]) for c in ms.cells),
        dual_points=tuple(c.dual_point for c in ms.cells),
    )


def check_transverse(ms):
    return ms.transverse()


def codim_one_faces(ms):
    """(n-1)-dimensional faces of the maximal cells.

    Returns a list of (face cell, [(index of maximal cell, inner normal u)]).
    Faces with one incident maximal cell lie on the boundary of the base.
    """
    n = ms.base.ambient_dim
    faces = {}
    for idx, cell in enumerate(ms.cells):
        for normal, _ in cell.total.facets:
            tau = cell.face(normal)
            if tau.total.intrinsic_dim != n - 1:
                continue
            faces.setdefault(tau.supports, [tau, []])[1].append((idx, tuple(normal)))
    return [tuple(v) for _, v in sorted(faces.items())]


@dataclass(frozen=True)
class SkeletonCell:
    kind: str  # "vertex", "segment" or "ray"
    points: tuple
    direction: tuple
    dual: object


def hypersurface_skeleton(phi):
    """Vertices and one-dimensional cells of V(phi)."""
    if phi.dim > 3:
        raise DimensionUnsupported("explicit skeleton geometry needs dim <= 3")
    if len(phi.terms) == 1:
        return []
    ms = cayley_mixed_subdivision([phi])
    out = [SkeletonCell("vertex", (c.dual_point,), None, c) for c in ms.cells]
    for tau, incident in codim_one_faces(ms):
        if len(incident) == 2:
            (i, _), (j, _) = incident
            a, b = ms.cells[i].dual_point, ms.cells[j].dual_point
            d = primitive(tuple(y - x for x, y in zip(a, b)))
            out.append(SkeletonCell("segment", (a, b), d, tau))
        else:
            (i, u), = incident
            d = tuple(-x for x in primitive(u))
            out.append(SkeletonCell("ray", (ms.cells[i].dual_point,), d, tau))
    return out

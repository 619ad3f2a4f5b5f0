"""Exact lattice-polytope arithmetic in ambient dimension at most 4.

All coordinates are ``Fraction``. Polytopes are immutable and carry both a
vertex list (lexicographically sorted) and an irredundant inequality system
``<normal, x> >= offset`` with primitive integer inner normals. Polytopes of
lower dimension also carry the equations of their affine hull.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, factorial, floor, gcd, lcm

from .errors import (
    DegenerateSum,
    DimensionMismatch,
    DimensionUnsupported,
    EmptyInput,
    NotFullDimensional,
    NotPrimitive,
    Unbounded,
)
from .linalg import (
    dot,
    frac_vec,
    int_det,
    int_normal,
    int_rank,
    inverse,
    nullspace,
    primitive,
    rank,
    row_reduce,
    solve,
)

MAX_DIM = 4


@dataclass(frozen=True)
class LatticePolytope:
    vertices: tuple
    facets: tuple
    facet_vertices: tuple
    equations: tuple
    ambient_dim: int
    intrinsic_dim: int

    def contains(self, x, strict=False):
        """Membership test; ``strict`` asks for the relative interior."""
        x = frac_vec(x)
        for h, c in self.equations:
            if dot(h, x) != c:
                return False
        for a, b in self.facets:
            val = dot(a, x)
            if val < b or (strict and val == b):
                return False
        return True

    def is_full_dimensional(self):
        return self.intrinsic_dim == self.ambient_dim

    def translate(self, v):
        v = frac_vec(v)
        return convex_hull([tuple(a + b for a, b in zip(p, v)) for p in self.vertices])

    def scale(self, c):
        c = Fraction(c)
        return convex_hull([tuple(c * a for a in p) for p in self.vertices])

    def centroid(self):
        k = len(self.vertices)
        return tuple(sum(col, Fraction(0)) / k for col in zip(*self.vertices))


def _idot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _affine_rank(points):
    p0 = points[0]
    return int_rank([tuple(a - b for a, b in zip(q, p0)) for q in points[1:]])


def _plane(points, interior):
    """Inner primitive normal and offset of the hyperplane through integer
    ``points`` (affine rank d-1 in Z^d); ``interior`` is a scaled interior
    point ``(vector, denominator)``."""
    base = points[0]
    normal = int_normal([tuple(a - b for a, b in zip(q, base)) for q in points[1:]])
    offset = _idot(normal, base)
    vec, den = interior
    if _idot(normal, vec) < offset * den:
        normal = tuple(-x for x in normal)
        offset = -offset
    return normal, offset


def _hull_full(pts):
    """Beneath-beyond on distinct, lex-sorted, full-dimensional integer points.

    Returns (vertex indices, {(normal, offset): frozenset of point indices}).
    """
    d = len(pts[0])
    if d == 1:
        lo, hi = 0, len(pts) - 1
        return [lo, hi], {((1,), pts[lo][0]): frozenset([lo]),
                          ((-1,), -pts[hi][0]): frozenset([hi])}

    simplex = [0]
    for i in range(1, len(pts)):
        if _affine_rank([pts[j] for j in simplex] + [pts[i]]) == len(simplex):
            simplex.append(i)
            if len(simplex) == d + 1:
                break
    interior = (tuple(sum(col) for col in zip(*(pts[j] for j in simplex))), d + 1)

    facets = {}
    for skip in simplex:
        face = [j for j in simplex if j != skip]
        facets[_plane([pts[j] for j in face], interior)] = set(face)

    in_simplex = set(simplex)
    for i in range(len(pts)):
        if i in in_simplex:
            continue
        p = pts[i]
        visible = [k for k in facets if _idot(k[0], p) < k[1]]
        if not visible:
            for k, s in facets.items():
                if _idot(k[0], p) == k[1]:
                    s.add(i)
            continue
        vis_set = set(visible)
        invisible = [k for k in facets if k not in vis_set]
        new_planes = set()
        for f in visible:
            for g in invisible:
                ridge = facets[f] & facets[g]
                if len(ridge) < d - 1:
                    continue
                ridge_pts = [pts[j] for j in sorted(ridge)]
                if _affine_rank(ridge_pts) != d - 2:
                    continue
                new_planes.add(_plane(ridge_pts + [p], interior))
        candidates = set().union(*facets.values()) | {i}
        for k in visible:
            del facets[k]
        for k, s in facets.items():
            if _idot(k[0], p) == k[1]:
                s.add(i)
        for k in new_planes:
            if k in facets:
                continue
            facets[k] = {j for j in candidates if _idot(k[0], pts[j]) == k[1]}

    incident = {}
    for k, s in facets.items():
        for j in s:
            incident.setdefault(j, []).append(k[0])
    verts = sorted(j for j, normals in incident.items() if int_rank(normals) == d)
    vset = set(verts)
    return verts, {k: frozenset(s & vset) for k, s in facets.items()}


def convex_hull(points):
    """Convex hull of a finite set of rational points (dimension <= 4)."""
    pts = sorted(set(frac_vec(p) for p in points))
    if not pts:
        raise EmptyInput("convex_hull needs at least one point")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch("points have mixed dimensions")
    if n > MAX_DIM:
        raise DimensionUnsupported(f"ambient dimension {n} exceeds {MAX_DIM}")

    scale = lcm(*(x.denominator for p in pts for x in p))
    ipts = [tuple(int(x * scale) for x in p) for p in pts]
    p0 = ipts[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in ipts[1:]]
    _, pivots = row_reduce(diffs) if diffs else ([], [])
    d = len(pivots)
    equations = []
    for h in (nullspace(diffs, ncols=n) if diffs else nullspace([], n)):
        h = primitive(h)
        equations.append((h, dot(h, pts[0])))
    equations.sort()

    if d == 0:
        return LatticePolytope((pts[0],), (), (), tuple(equations), n, 0)

    local = [tuple(p[c] for c in pivots) for p in ipts]
    vidx, facet_map = _hull_full(local)
    vertices = tuple(pts[j] for j in vidx)
    pos = {j: r for r, j in enumerate(vidx)}

    facets = []
    for (normal, offset), members in facet_map.items():
        amb = [0] * n
        for c, a in zip(pivots, normal):
            amb[c] = a
        facets.append((tuple(amb), Fraction(offset, scale), tuple(sorted(pos[j] for j in members))))
    facets.sort()
    return LatticePolytope(
        vertices=vertices,
        facets=tuple((a, b) for a, b, _ in facets),
        facet_vertices=tuple(s for _, _, s in facets),
        equations=tuple(equations),
        ambient_dim=n,
        intrinsic_dim=d,
    )


def polytope_from_halfspaces(halfspaces, dim):
    """Polytope {x : <a, x> >= b} from (a, b) pairs.

    Returns None when the system is infeasible. Raises Unbounded when the
    feasible region is not bounded.
    """
    normals = [frac_vec(a) for a, _ in halfspaces]
    if not normals or rank(normals) < dim:
        raise Unbounded("inequality normals do not span the space")
    # bounded iff the origin is interior to conv(normals)
    hull = convex_hull(normals)
    if hull.intrinsic_dim < dim or not hull.contains([0] * dim, strict=True):
        raise Unbounded("feasible region is unbounded")
    found = set()
    for subset in combinations(range(len(halfspaces)), dim):
        a = [normals[i] for i in subset]
        x = solve(a, [Fraction(halfspaces[i][1]) for i in subset])
        if x is None:
            continue
        if all(dot(nv, x) >= Fraction(b) for nv, (_, b) in zip(normals, halfspaces)):
            found.add(x)
    if not found:
        return None
    return convex_hull(found)


def minkowski_sum(P, Q):
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("Minkowski summands live in different dimensions")
    return convex_hull([tuple(a + b for a, b in zip(p, q))
                        for p in P.vertices for q in Q.vertices])


def minkowski_combination(polys, coeffs):
    total = None
    for P, c in zip(polys, coeffs):
        scaled = P.scale(c) if c != 1 else P
        total = scaled if total is None else minkowski_sum(total, scaled)
    return total


def _simplices(points):
    """Triangulate conv(points) (full-dimensional in its own coordinates)
    by pulling from the first vertex, recursing into facets."""
    hull = convex_hull(points)
    if hull.intrinsic_dim == 0:
        return [hull.vertices]
    apex = 0
    out = []
    for members in hull.facet_vertices:
        if apex in members:
            continue
        for simp in _simplices([hull.vertices[j] for j in members]):
            out.append((hull.vertices[apex],) + tuple(simp))
    return out


def _full_volume(points, d):
    scale = lcm(*(x.denominator for p in points for x in p))
    ipts = [tuple(int(x * scale) for x in p) for p in points]
    total = 0
    for simp in _simplices(ipts):
        base = simp[0]
        total += abs(int_det([tuple(a - b for a, b in zip(q, base)) for q in simp[1:]]))
    return Fraction(total, factorial(d) * scale ** d)


def euclidean_volume(P, projection=None, strict=False):
    """Exact Euclidean volume.

    With ``projection`` (a UnimodularMap) the vertices are mapped first, which
    gives the lattice-normalized volume of a polytope inside a hyperplane.
    Lower-dimensional input without a projection has volume 0, or raises
    NotFullDimensional when ``strict``.
    """
    if projection is not None:
        img = [projection.apply(v) for v in P.vertices]
        Q = convex_hull(img)
        if Q.intrinsic_dim < Q.ambient_dim:
            return Fraction(0)
        return _full_volume(list(Q.vertices), Q.ambient_dim)
    if P.intrinsic_dim < P.ambient_dim:
        if strict:
            raise NotFullDimensional(
                f"polytope has dimension {P.intrinsic_dim} in R^{P.ambient_dim}")
        return Fraction(0)
    return _full_volume(list(P.vertices), P.ambient_dim)


def lattice_points(P):
    """All integer points of P in lexicographic order."""
    lo = [ceil(min(v[i] for v in P.vertices)) for i in range(P.ambient_dim)]
    hi = [floor(max(v[i] for v in P.vertices)) for i in range(P.ambient_dim)]
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [x for x in product(*ranges) if P.contains(x)]


def interior_lattice_points(P):
    return [x for x in lattice_points(P) if P.contains(x, strict=True)]


@dataclass(frozen=True)
class UnimodularMap:
    """Lattice map Z^n -> Z^{n-1} killing ``gamma`` and sending ``basis``
    (a basis of normal^perp ∩ Z^n) to the standard basis."""

    matrix: tuple
    determinant_abs: int
    normal: tuple
    gamma: tuple
    basis: tuple

    def apply(self, x):
        x = frac_vec(x)
        return tuple(dot(row, x) for row in self.matrix)


def _ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _column_reduce(normal):
    """Unimodular U with normal @ U = (1, 0, ..., 0)."""
    n = len(normal)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    row = list(normal)

    def colop(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for r in range(n):
            ui, uj = U[r][i], U[r][j]
            U[r][i], U[r][j] = a * ui + b * uj, c * ui + d * uj
        vi, vj = row[i], row[j]
        row[i], row[j] = a * vi + b * vj, c * vi + d * vj

    for j in range(1, n):
        if row[j] == 0:
            continue
        g, x, y = _ext_gcd(row[0], row[j])
        a0, aj = row[0], row[j]
        colop(0, j, x, y, -aj // g, a0 // g)
    if row[0] == -1:
        for r in range(n):
            U[r][0] = -U[r][0]
        row[0] = 1
    assert row[0] == 1 and all(v == 0 for v in row[1:])
    return U


def _hnf_rows(rows):
    """Row Hermite normal form of an integer matrix with independent rows."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if all(m[i][c] == 0 for i in range(r, len(m))):
            continue
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
    return [tuple(row) for row in m]


def facet_projection(normal, gamma=None):
    """Unimodular projection along ``gamma`` onto normal^perp ∩ Z^n.

    ``gamma`` defaults to a canonical lattice vector with <gamma, normal> = 1.
    """
    normal = tuple(int(a) for a in normal)
    g = 0
    for a in normal:
        g = gcd(g, a)
    if g != 1:
        raise NotPrimitive(f"normal {normal} is not a primitive vector")
    n = len(normal)
    U = _column_reduce(normal)
    cols = [tuple(U[r][c] for r in range(n)) for c in range(n)]
    basis = tuple(_hnf_rows(cols[1:]))
    if gamma is None:
        gamma = cols[0]
        # canonical representative: reduce gamma against the HNF basis
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x != 0)
            q = gamma[lead] // b[lead]
            gamma = tuple(x - q * y for x, y in zip(gamma, b))
    gamma = tuple(int(a) for a in gamma)
    if sum(a * b for a, b in zip(gamma, normal)) != 1:
        raise ValueError("gamma must pair to 1 with the normal")
    B = [[basis[k][r] for k in range(n - 1)] + [gamma[r]] for r in range(n)]
    Binv = inverse(B)
    matrix = tuple(tuple(int(x) for x in Binv[k]) for k in range(n - 1))
    return UnimodularMap(matrix=matrix, determinant_abs=1, normal=normal,
                         gamma=gamma, basis=basis)


def intrinsic_volume(P):
    """Lattice-normalized volume of a polytope spanning a hyperplane
    (codimension-one) or of a full-dimensional polytope."""
    if P.intrinsic_dim == P.ambient_dim:
        return euclidean_volume(P)
    if P.intrinsic_dim != P.ambient_dim - 1:
        raise NotFullDimensional("intrinsic volume needs codimension at most one")
    (h, _), = P.equations
    return euclidean_volume(P, projection=facet_projection(h))


def _vandermonde_solve(xs, ys):
    """Coefficients c_k of sum c_k x^k through the given samples."""
    k = len(xs)
    return solve([[Fraction(x) ** e for e in range(k)] for x in xs], ys)


def volume_polynomial(polys):
    """Coefficients of vol(sum lambda_i P_i) as {exponent tuple: rational},
    interpolated on the grid {1, ..., n+1}^m."""
    m = len(polys)
    n = polys[0].ambient_dim
    nodes = list(range(1, n + 2))
    grid = {}
    for lam in product(nodes, repeat=m):
        grid[lam] = euclidean_volume(minkowski_combination(polys, lam))
    # peel one axis at a time
    table = {lam: v for lam, v in grid.items()}
    for axis in range(m):
        new = {}
        keys = {k[:axis] + k[axis + 1:] for k in table}
        for rest in keys:
            ys = [table[rest[:axis] + (x,) + rest[axis:]] for x in nodes]
            coeffs = _vandermonde_solve(nodes, ys)
            for e, c in enumerate(coeffs):
                new[rest[:axis] + (e,) + rest[axis:]] = c
        table = new
    return {k: v for k, v in table.items() if v != 0}


def mixed_volume(polys):
    """Mixed volume normalized so that MV(P, ..., P) = vol(P)."""
    polys = list(polys)
    if not polys:
        raise EmptyInput("mixed_volume needs n polytopes")
    n = polys[0].ambient_dim
    if any(P.ambient_dim != n for P in polys):
        raise DimensionMismatch("polytopes live in different dimensions")
    if len(polys) != n:
        raise DimensionMismatch(f"need exactly {n} polytopes in R^{n}")
    if minkowski_combination(polys, [1] * n).intrinsic_dim < n:
        raise DegenerateSum("Minkowski sum is not full-dimensional")
    groups = []
    for P in polys:
        for g in groups:
            if g[0].vertices == P.vertices:
                g[1] += 1
                break
        else:
            groups.append([P, 1])
    distinct = [g[0] for g in groups]
    mult = tuple(g[1] for g in groups)
    coeff = volume_polynomial(distinct).get(mult, Fraction(0))
    count = factorial(n)
    for k in mult:
        count //= factorial(k)
    return coeff / count

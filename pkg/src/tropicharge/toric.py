"""Smooth toric Fano ray data, divisor polytopes, Mori generators and
intersection numbers through mixed volumes."""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from .errors import (
    DegenerateFacet,
    FanoInequalityViolated,
    NotAmple,
    NotReflexive,
    NotSmooth,
    NotStrictlyConvex,
    RaysNotNormalized,
    Unbounded,
)
from .geometry import (
    convex_hull,
    facet_projection,
    interior_lattice_points,
    mixed_volume,
    polytope_from_halfspaces,
)
from .linalg import det, dot, solve


@dataclass(frozen=True)
class FanData:
    n: int
    p: int
    rays: tuple
    cones: tuple  # maximal cones as sorted tuples of ray indices

    def extra_rays(self):
        return self.rays[self.n:]

    def anticanonical_excess(self, s):
        """sum_i v_{n+s,i} - 1 for the 0-based extra-ray index s."""
        return sum(self.rays[self.n + s]) - 1


@dataclass(frozen=True)
class DivisorData:
    coefficients: tuple
    polytope: object  # LatticePolytope or None when empty
    nice: bool  # exactly p facets with inner normals {v_j}


@dataclass(frozen=True)
class MoriData:
    generators: tuple


def _halfspace_polytope(rays, a):
    return polytope_from_halfspaces([(v, -Fraction(x)) for v, x in zip(rays, a)], len(rays[0]))


def validate_fan(rays):
    rays = tuple(tuple(int(x) for x in v) for v in rays)
    if not rays:
        raise RaysNotNormalized("no rays given")
    n = len(rays[0])
    p = len(rays)
    if p <= n or any(len(v) != n for v in rays):
        raise RaysNotNormalized("need more than n rays of common dimension n")
    for i in range(n):
        if rays[i] != tuple(int(i == j) for j in range(n)):
            raise RaysNotNormalized("the first n rays must be the standard basis")
    for v in rays:
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            raise RaysNotNormalized(f"ray {v} is not primitive")
    if len(set(rays)) != p:
        raise RaysNotNormalized("repeated ray")

    for s, v in enumerate(rays[n:]):
        if sum(v) - 1 >= 0:
            raise FanoInequalityViolated(f"extra ray {s + 1}: sum of entries minus one is {sum(v) - 1}")

    try:
        gcan = _halfspace_polytope(rays, [1] * p)
    except Unbounded as exc:
        raise NotReflexive("G_can is unbounded") from exc
    if gcan is None or gcan.intrinsic_dim < n:
        raise NotReflexive("G_can is not full-dimensional")
    if any(x.denominator != 1 for v in gcan.vertices for x in v):
        raise NotReflexive("G_can has a non-integral vertex")
    interior = interior_lattice_points(gcan)
    if interior != [tuple([0] * n)]:
        raise NotReflexive(f"interior lattice points {interior}")
    normals = {tuple(a) for a, _ in gcan.facets}
    if normals != set(rays):
        raise NotReflexive("some ray does not support a facet of G_can")

    pv = convex_hull(rays)
    for j, v in enumerate(rays):
        sep = [0] * n
        for (a, _), members in zip(pv.facets, pv.facet_vertices):
            if v in [tuple(int(x) for x in pv.vertices[k]) for k in members]:
                sep = [x + y for x, y in zip(sep, a)]
        val = dot(sep, v)
        if any(dot(sep, w) <= val for i, w in enumerate(rays) if i != j):
            raise NotStrictlyConvex(f"ray {v} is not a strict vertex of P_V")

    cones = []
    for m in gcan.vertices:
        tight = tuple(j for j, v in enumerate(rays) if dot(v, m) == -1)
        if len(tight) != n or abs(det([rays[j] for j in tight])) != 1:
            raise NotSmooth(f"cone {tight} is not unimodular")
        cones.append(tight)
    return FanData(n=n, p=p, rays=rays, cones=tuple(sorted(cones)))


def g_can(fan):
    return _halfspace_polytope(fan.rays, [1] * fan.p)


def divisor_polytope(fan, a):
    a = tuple(Fraction(x) for x in a)
    if len(a) != fan.p:
        raise ValueError(f"expected {fan.p} divisor coefficients")
    P = _halfspace_polytope(fan.rays, a)
    nice = False
    if P is not None and P.intrinsic_dim == fan.n:
        nice = sorted(tuple(x) for x, _ in P.facets) == sorted(fan.rays)
    return DivisorData(coefficients=a, polytope=P, nice=nice)


def cone_vertices(fan, a):
    """The point m_sigma with <m, v_j> = -a_j on each maximal cone."""
    a = [Fraction(x) for x in a]
    out = {}
    for cone in fan.cones:
        out[cone] = solve([fan.rays[j] for j in cone], [-a[j] for j in cone])
    return out


def is_ample(fan, a):
    a = [Fraction(x) for x in a]
    if len(a) != fan.p:
        return False
    for cone, m in cone_vertices(fan, a).items():
        for j, v in enumerate(fan.rays):
            if j not in cone and not dot(m, v) > -a[j]:
                return False
    return True


def mori_generators(fan):
    gens = []
    for s, v in enumerate(fan.extra_rays()):
        tail = [int(s == k) for k in range(fan.p - fan.n)]
        gens.append(tuple([sum(v) - 1] + [-x for x in v] + tail))
    return MoriData(generators=tuple(gens))


def full_weights(fan, lam):
    """Pad the extra-ray weights with zeros on the standard-basis rays."""
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != fan.p - fan.n:
        raise ValueError(f"expected {fan.p - fan.n} weights")
    return tuple([Fraction(0)] * fan.n) + lam


def g_trop(fan, lam):
    a = full_weights(fan, lam)
    if not is_ample(fan, a):
        raise NotAmple(f"weights {lam} do not give an ample divisor")
    return divisor_polytope(fan, a).polytope


def facet_face(P, normal):
    """Face of P minimizing <normal, .>."""
    best = min(dot(normal, v) for v in P.vertices)
    return convex_hull([v for v in P.vertices if dot(normal, v) == best])


def intersection_numbers(fan, family):
    """(N_1..N_p, N_tot) for a family of n-1 ample divisors."""
    n = fan.n
    if len(family) != n - 1:
        raise ValueError(f"a curve family needs {n - 1} divisors")
    for d in family:
        if not is_ample(fan, d.coefficients):
            raise NotAmple(f"divisor {d.coefficients} is not ample")
    polys = [d.polytope for d in family]
    N = []
    for v in fan.rays:
        psi = facet_projection(v)
        faces = []
        for P in polys:
            F = facet_face(P, v)
            if F.intrinsic_dim != n - 1:
                raise DegenerateFacet(f"facet with normal {v} has dimension {F.intrinsic_dim}")
            faces.append(convex_hull([psi.apply(x) for x in F.vertices]))
        N.append(factorial(n - 1) * mixed_volume(faces))
    tot = sum((mixed_volume([G] + polys) for G in polys), Fraction(0))
    return tuple(N), factorial(n) * tot

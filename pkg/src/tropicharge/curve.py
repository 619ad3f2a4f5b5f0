"""Tropical complete-intersection curves from a nice family of divisors."""

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import DoesNotFit, NewtonMismatch, NotAmple, NotTransverse, WrongFacet
from .geometry import euclidean_volume, intrinsic_volume
from .linalg import dot, primitive
from .toric import full_weights, g_trop, is_ample
from .tropical import cayley_mixed_subdivision, codim_one_faces


@dataclass(frozen=True)
class NiceFamily:
    fan: object
    divisors: tuple
    tropical_polys: tuple
    subdivision: object


@dataclass(frozen=True)
class CurveVertex:
    position: tuple
    cell: object


@dataclass(frozen=True)
class CurveEdge:
    endpoints: tuple  # (i, j) for bounded edges, (i, None) for ends
    direction: tuple  # primitive, pointing away from endpoints[0]
    weight: Fraction
    cell: object
    facet: object  # ray index j for ends, None otherwise


@dataclass(frozen=True)
class TropicalCurveGraph:
    n: int
    vertices: tuple
    edges: tuple

    @property
    def ends(self):
        return tuple((k, e.facet) for k, e in enumerate(self.edges) if e.facet is not None)

    def with_weight(self, k, w):
        edges = list(self.edges)
        edges[k] = replace(edges[k], weight=Fraction(w))
        return replace(self, edges=tuple(edges))


@dataclass(frozen=True)
class CurveInvariants:
    V: Fraction
    E: tuple


def check_nice_family(fan, divisors, tropical_polys):
    divisors = tuple(divisors)
    tropical_polys = tuple(tropical_polys)
    if len(divisors) != fan.n - 1 or len(tropical_polys) != fan.n - 1:
        raise ValueError(f"a curve family in dimension {fan.n} needs {fan.n - 1} members")
    for d, f in zip(divisors, tropical_polys):
        if not is_ample(fan, d.coefficients):
            raise NotAmple(f"divisor {d.coefficients} is not ample")
        if f.newton_polytope().vertices != d.polytope.vertices:
            raise NewtonMismatch(f"Newton polytope differs from the divisor polytope of {d.coefficients}")
    ms = cayley_mixed_subdivision(tropical_polys)
    if not ms.transverse():
        raise NotTransverse("tropical hypersurfaces do not meet transversely")
    return NiceFamily(fan=fan, divisors=divisors, tropical_polys=tropical_polys, subdivision=ms)


def _is_vertex_type(t):
    return sorted(t) == [1] * (len(t) - 1) + [2]


def build_curve(family):
    ms = family.subdivision
    rays = family.fan.rays
    n = family.fan.n
    index = {}
    vertices = []
    for i, cell in enumerate(ms.cells):
        if _is_vertex_type(cell.type):
            index[i] = len(vertices)
            vertices.append(CurveVertex(position=cell.dual_point, cell=cell))
    edges = []
    for tau, incident in codim_one_faces(ms):
        if tau.type != (1,) * (n - 1):
            continue
        w = intrinsic_volume(tau.total)
        if len(incident) == 2:
            (i, _), (j, _) = incident
            a, b = index[i], index[j]
            d = primitive(tuple(y - x for x, y in zip(vertices[a].position, vertices[b].position)))
            edges.append(CurveEdge((a, b), d, w, tau, None))
        else:
            (i, u), = incident
            u = primitive(u)
            if u not in rays:
                raise WrongFacet(f"boundary cell with normal {u} lies on no facet of G")
            edges.append(CurveEdge((index[i], None), tuple(-x for x in u), w, tau, rays.index(u)))
    return TropicalCurveGraph(n=n, vertices=tuple(vertices), edges=tuple(edges))


def check_balanced(graph):
    sums = [[Fraction(0)] * graph.n for _ in graph.vertices]
    for e in graph.edges:
        a, b = e.endpoints
        for k in range(graph.n):
            sums[a][k] += e.weight * e.direction[k]
            if b is not None:
                sums[b][k] -= e.weight * e.direction[k]
    return all(x == 0 for row in sums for x in row)


def curve_invariants(graph, p):
    V = sum((euclidean_volume(v.cell.total) for v in graph.vertices), Fraction(0))
    E = [Fraction(0)] * p
    for e in graph.edges:
        if e.facet is not None:
            E[e.facet] += intrinsic_volume(e.cell.total)
    return CurveInvariants(V=V, E=tuple(E))


@dataclass(frozen=True)
class PlacedEnd:
    edge: int
    facet: int
    vertex: int
    point: tuple


@dataclass(frozen=True)
class PlacedCurve:
    graph: TropicalCurveGraph
    weights: tuple
    polytope: object
    shrink: Fraction
    translation: tuple
    positions: tuple
    ends: tuple
    reflected: bool = False


def clip_to_g_trop(graph, fan, lam, shrink):
    """Place the curve in G_trop by x -> shrink*x + c with the centroid of
    the vertices sent to the centroid of G_trop; ends stop on their facets."""
    shrink = Fraction(shrink)
    if shrink <= 0:
        raise ValueError("shrink must be positive")
    G = g_trop(fan, lam)
    chi = full_weights(fan, lam)
    k = len(graph.vertices)
    c0 = [sum((v.position[i] for v in graph.vertices), Fraction(0)) / k for i in range(fan.n)]
    g0 = G.centroid()
    c = tuple(g - shrink * x for g, x in zip(g0, c0))
    positions = tuple(tuple(shrink * x + y for x, y in zip(v.position, c)) for v in graph.vertices)
    for y in positions:
        if not G.contains(y, strict=True):
            raise DoesNotFit(f"vertex {y} is not inside G_trop; try a smaller shrink")
    ends = []
    for idx, e in enumerate(graph.edges):
        if e.facet is None:
            continue
        y = positions[e.endpoints[0]]
        exits = {}
        for j, v in enumerate(fan.rays):
            rate = dot(v, e.direction)
            if rate < 0:
                exits[j] = -(chi[j] + dot(v, y)) / rate
        first = min(exits.values())
        hit = sorted(j for j, s in exits.items() if s == first)
        if hit != [e.facet]:
            raise WrongFacet(f"edge {idx} leaves G_trop through facets {hit}, expected {e.facet}")
        point = tuple(a + first * d for a, d in zip(y, e.direction))
        for j, v in enumerate(fan.rays):
            if j != e.facet and not chi[j] + dot(v, point) > 0:
                raise DoesNotFit(f"end of edge {idx} is not in the relative interior of its facet")
        ends.append(PlacedEnd(edge=idx, facet=e.facet, vertex=e.endpoints[0], point=point))
    return PlacedCurve(
        graph=graph,
        weights=tuple(e.weight for e in graph.edges),
        polytope=G,
        shrink=shrink,
        translation=c,
        positions=positions,
        ends=tuple(ends),
    )

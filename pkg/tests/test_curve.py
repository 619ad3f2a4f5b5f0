import random
from fractions import Fraction as F

import pytest

from conftest import make_family
from tropicharge.curve import (
    build_curve,
    check_balanced,
    check_nice_family,
    clip_to_g_trop,
    curve_invariants,
)
from tropicharge.errors import DoesNotFit, NewtonMismatch, NotAmple, NotTransverse
from tropicharge.geometry import lattice_points
from tropicharge.toric import divisor_polytope, intersection_numbers
from tropicharge.tropical import tropicalize


def random_family(fan, divisors, rng, tries=50):
    for _ in range(tries):
        coeffs = []
        for a in divisors:
            k = len(lattice_points(divisor_polytope(fan, a).polytope))
            coeffs.append([rng.randint(-4, 4) for _ in range(k)])
        try:
            return make_family(fan, divisors, coeffs)
        except NotTransverse:
            continue
    raise AssertionError("no transverse draw")


def test_p2_line_curve(p2, p2_line):
    g = build_curve(p2_line)
    assert len(g.vertices) == 1
    assert len(g.edges) == 3
    assert sorted(e.direction for e in g.edges) == [(-1, 0), (0, -1), (1, 1)]
    assert all(e.weight == 1 for e in g.edges)
    assert check_balanced(g)
    inv = curve_invariants(g, p2.p)
    assert inv.V == F(1, 2)
    assert inv.E == (1, 1, 1)


def test_p3_two_planes_curve(p3, p3_planes):
    g = build_curve(p3_planes)
    assert len(g.vertices) == 2
    assert len(g.ends) == 4
    assert sorted(j for _, j in g.ends) == [0, 1, 2, 3]
    assert check_balanced(g)
    inv = curve_invariants(g, p3.p)
    assert inv.V == 1
    assert inv.E == (1, 1, 1, 1)
    assert sum(inv.E) == 4


def test_conic_in_p2(p2):
    rng = random.Random(4)
    fam = random_family(p2, [(0, 0, 2)], rng)
    g = build_curve(fam)
    cells = [c for c in fam.subdivision.cells if c.total.intrinsic_dim == 2]
    assert len(g.vertices) == len(cells)
    inv = curve_invariants(g, p2.p)
    assert inv.V == 2
    assert 2 * inv.V == 4
    assert inv.E == (2, 2, 2)


def test_identical_planes_are_rejected(p3):
    with pytest.raises(NotTransverse):
        make_family(p3, [(0, 0, 0, 1)] * 2, [[0, 0, 0, 0]] * 2)


def test_newton_mismatch_and_non_ample(p2):
    D = divisor_polytope(p2, (0, 0, 1))
    with pytest.raises(NewtonMismatch):
        check_nice_family(p2, [D], [tropicalize([(0, 0), (1, 0), (0, 2)], [0, 0, 0])])
    with pytest.raises(NotAmple):
        check_nice_family(p2, [divisor_polytope(p2, (0, 0, 0))], [tropicalize([(0, 0)], [0])])


def test_duality_counts(p1p1, p1p1_curve):
    g = build_curve(p1p1_curve)
    cells = p1p1_curve.subdivision.cells
    assert len(g.vertices) == sum(1 for c in cells if c.total.intrinsic_dim == 2)


def test_corrupted_weight_breaks_balance(p2_line):
    g = build_curve(p2_line)
    assert check_balanced(g)
    assert not check_balanced(g.with_weight(0, 2))


def test_coefficient_shift_keeps_invariants(p2):
    a = make_family(p2, [(0, 0, 2)], [[0, 1, -2, 3, 0, -1]])
    b = make_family(p2, [(0, 0, 2)], [[7, 8, 5, 10, 7, 6]])
    ia = curve_invariants(build_curve(a), p2.p)
    ib = curve_invariants(build_curve(b), p2.p)
    assert ia == ib


@pytest.mark.parametrize("which,divisors,count,seed", [
    ("p2", [(0, 0, 1)], 4, 1),
    ("p2", [(0, 0, 2)], 4, 2),
    ("p1p1", [(0, 0, 1, 1)], 4, 3),
    ("p1p1", [(0, 0, 1, 2)], 3, 4),
    ("p3", [(0, 0, 0, 1)] * 2, 3, 5),
])
def test_random_families_match_intersection_numbers(which, divisors, count, seed, request):
    fan = request.getfixturevalue(which)
    rng = random.Random(seed)
    for _ in range(count):
        fam = random_family(fan, divisors, rng)
        g = build_curve(fam)
        assert check_balanced(g)
        inv = curve_invariants(g, fan.p)
        N, tot = intersection_numbers(fan, fam.divisors)
        assert 2 * inv.V == tot
        assert inv.E == N
        for e in g.edges:
            if e.facet is not None:
                assert e.direction == tuple(-x for x in fan.rays[e.facet])


def test_placed_line_has_one_end_per_facet(p2, p2_line):
    placed = clip_to_g_trop(build_curve(p2_line), p2, [1], F(1, 4))
    assert sorted(e.facet for e in placed.ends) == [0, 1, 2]
    G = placed.polytope
    for end in placed.ends:
        assert G.contains(end.point)
        assert not G.contains(end.point, strict=True)


def test_too_large_shrink_does_not_fit(p3, p3_planes):
    with pytest.raises(DoesNotFit):
        clip_to_g_trop(build_curve(p3_planes), p3, [1], 1)


def test_halving_shrink_halves_vertex_distances(p3, p3_planes):
    g = build_curve(p3_planes)
    a = clip_to_g_trop(g, p3, [1], F(1, 16))
    b = clip_to_g_trop(g, p3, [1], F(1, 32))

    def gap(placed):
        y, z = placed.positions
        return tuple(s - t for s, t in zip(y, z))

    assert gap(b) == tuple(x / 2 for x in gap(a))

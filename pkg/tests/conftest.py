import pytest

from tropicharge.curve import check_nice_family
from tropicharge.geometry import lattice_points
from tropicharge.toric import divisor_polytope, validate_fan
from tropicharge.tropical import tropicalize

P2_RAYS = [(1, 0), (0, 1), (-1, -1)]
P3_RAYS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
P1P1_RAYS = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def make_family(fan, divisors, coefficients):
    """Nice family from divisor coefficient vectors and one magnitude list per
    divisor (ordered like the sorted lattice points of its polytope)."""
    ds = [divisor_polytope(fan, a) for a in divisors]
    polys = [tropicalize(lattice_points(d.polytope), c) for d, c in zip(ds, coefficients)]
    return check_nice_family(fan, ds, polys)


@pytest.fixture(scope="session")
def p2():
    return validate_fan(P2_RAYS)


@pytest.fixture(scope="session")
def p3():
    return validate_fan(P3_RAYS)


@pytest.fixture(scope="session")
def p1p1():
    return validate_fan(P1P1_RAYS)


@pytest.fixture(scope="session")
def p2_line(p2):
    return make_family(p2, [(0, 0, 1)], [[0, 0, 0]])


@pytest.fixture(scope="session")
def p3_planes(p3):
    return make_family(p3, [(0, 0, 0, 1)] * 2, [[0, 0, 0, 0], [-1, -3, -2, -5]])


@pytest.fixture(scope="session")
def p1p1_curve(p1p1):
    return make_family(p1p1, [(0, 0, 1, 1)], [[0, -1, -2, -4]])

"""Brute-force reference computations used to cross-check the package."""

import itertools
import math
from fractions import Fraction


def box_points(lo, hi, dim):
    return itertools.product(range(lo, hi + 1), repeat=dim)


def interior_count(halfspaces, dim, box=6):
    """Lattice points strictly inside {x : <a, x> >= b} within a box."""
    return sum(
        1 for x in box_points(-box, box, dim)
        if all(sum(ai * xi for ai, xi in zip(a, x)) > b for a, b in halfspaces)
    )


def facets_by_subsets(points):
    """Supporting hyperplanes through d-subsets of full-dimensional points in
    R^3, found by testing every triple."""
    out = set()
    for a, b, c in itertools.combinations(points, 3):
        u = [b[i] - a[i] for i in range(3)]
        v = [c[i] - a[i] for i in range(3)]
        n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if n == (0, 0, 0):
            continue
        vals = [sum(ni * pi for ni, pi in zip(n, p)) for p in points]
        h = sum(ni * ai for ni, ai in zip(n, a))
        if all(x >= h for x in vals) or all(x <= h for x in vals):
            g = math.gcd(*n)
            sign = 1 if all(x >= h for x in vals) else -1
            out.add(tuple(sign * x // g for x in n))
    return out


def drecip_numeric(a, eps=1e-6):
    """d/de [1/Gamma(1 + a + e)] at e = 0 by central differences."""
    def f(e):
        z = 1 + a + e
        return 1 / math.gamma(z)
    return (f(eps) - f(-eps)) / (2 * eps)


def kp2_mirror_coefficient(m):
    """Coefficient of t^m in the K_P2 mirror map minus log t."""
    return Fraction(-3 * (-1) ** (m + 1) * math.factorial(3 * m - 1), math.factorial(m) ** 3)


def kp2_constant_term(order):
    """Constant terms of log(1 + z1 + z2 + t/(z1 z2)) up to t^order by
    expanding log(1+u) = sum (-1)^(k+1) u^k / k with u = z1 + z2 + t/(z1 z2)."""
    out = {}
    for k in range(1, 3 * order + 1):
        for i in range(k + 1):
            for j in range(k - i + 1):
                m = k - i - j
                if i == m and j == m and 1 <= m <= order:
                    c = Fraction((-1) ** (k + 1), k) * math.comb(k, i) * math.comb(k - i, j)
                    out[m] = out.get(m, 0) + c
    return out


def cramer_2x2(a, b, c, d, e, f):
    """Solution of a x + b y = e, c x + d y = f."""
    det = a * d - b * c
    return Fraction(e * d - b * f, det), Fraction(a * f - e * c, det)


def reflexive_2d(rays):
    """Reflexivity of {m : <m, v> >= -1} for plane rays: bounded, integral
    vertices, every ray supporting an edge, origin the only interior point."""
    def val(v, m):
        return v[0] * m[0] + v[1] * m[1]

    for v in rays:
        for d in ((-v[1], v[0]), (v[1], -v[0])):
            if all(val(w, d) >= 0 for w in rays):
                return False
    verts = set()
    for v, w in itertools.combinations(rays, 2):
        det = v[0] * w[1] - v[1] * w[0]
        if det == 0:
            continue
        m = (Fraction(-w[1] + v[1], det), Fraction(-v[0] + w[0], det))
        if all(val(u, m) >= -1 for u in rays):
            verts.add(m)
    if any(x.denominator != 1 for m in verts for x in m):
        return False
    for v in rays:
        if sum(1 for m in verts if val(v, m) == -1) < 2:
            return False
    return interior_count([(v, -1) for v in rays], 2) == 1

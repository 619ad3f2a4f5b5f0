"""Small exact linear algebra over the rationals.

Everything here works on tuples/lists of ``Fraction`` (ints are accepted and
promoted). Matrices are lists of rows.
"""

from fractions import Fraction
from math import gcd, lcm


def frac_vec(v):
    return tuple(Fraction(x) for x in v)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def row_reduce(rows):
    """Reduced row echelon form. Returns (rref rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(row_reduce(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {x : rows @ x = 0} as a list of rational vectors."""
    if not rows:
        n = ncols
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red, pivots = row_reduce(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a, b):
    """Unique solution of the square system a x = b, or None if singular."""
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a, b)]
    red, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in red)


def det(m):
    """Determinant by fraction-exact Gaussian elimination."""
    a = [list(map(Fraction, r)) for r in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def inverse(m):
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def primitive(v):
    """Scale a nonzero rational vector to the primitive integer vector with
    the same direction."""
    v = frac_vec(v)
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


def affine_rank(points):
    """Dimension of the affine hull of a finite point set (-1 if empty)."""
    points = list(points)
    if not points:
        return -1
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


def int_det(m):
    """Determinant of an integer matrix by Bareiss elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_rank(rows):
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f, g = a[i][c], a[r][c]
                a[i] = [x * g - y * f for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def int_normal(rows):
    """Generator of the integer kernel of d-1 independent integer rows in
    Z^d, by signed maximal minors; primitive. Extra dependent rows are
    dropped."""
    d = len(rows[0])
    if len(rows) > d - 1:
        picked = []
        for r in rows:
            if int_rank(picked + [r]) > len(picked):
                picked.append(r)
                if len(picked) == d - 1:
                    break
        rows = picked
    if len(rows) < d - 1:
        raise ValueError("rows are dependent")
    out = []
    for i in range(d):
        minor = [[x for k, x in enumerate(r) if k != i] for r in rows]
        out.append((-1) ** i * int_det(minor))
    g = 0
    for x in out:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("rows are dependent")
    return tuple(x // g for x in out)

"""Truncated multivariate power series over Q + Q*gamma.

``gamma`` is the Euler-Mascheroni constant, kept as a formal symbol of
degree at most one. Series are truncated by total degree. ``LogSeries``
adds formal symbols ``L_s = log t_s`` of total degree at most one.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

from .errors import BadConstantTerm, GammaResidue, GammaSquared


@dataclass(frozen=True)
class GammaRational:
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def lift(x):
        return x if isinstance(x, GammaRational) else GammaRational(Fraction(x))

    def __add__(self, other):
        o = GammaRational.lift(other)
        return GammaRational(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return GammaRational(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-GammaRational.lift(other))

    def __rsub__(self, other):
        return GammaRational.lift(other) - self

    def __mul__(self, other):
        o = GammaRational.lift(other)
        if self.b and o.b:
            raise GammaSquared("product of two gamma terms")
        return GammaRational(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = Fraction(other)
        return GammaRational(self.a / c, self.b / c)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, GammaRational):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        if not self.b:
            return str(self.a)
        return f"({self.a} + {self.b}*gamma)"


ZERO = GammaRational(Fraction(0))


def recip_gamma_int(a):
    """1/Gamma(1+a) at an integer."""
    return Fraction(1, factorial(a)) if a >= 0 else Fraction(0)


def drecip_gamma_int(a):
    """d/de [1/Gamma(1+a+e)] at e = 0, for integer a."""
    if a >= 0:
        harmonic = sum((Fraction(1, k) for k in range(1, a + 1)), Fraction(0))
        return GammaRational(-harmonic / factorial(a), Fraction(1, factorial(a)))
    k = -1 - a
    return GammaRational(Fraction((-1) ** k * factorial(k)))


def multi_indices(nvars, order):
    """All exponent tuples of total degree <= order, graded then lex."""
    out = []
    for deg in range(order + 1):
        for m in product(range(deg + 1), repeat=nvars):
            if sum(m) == deg:
                out.append(m)
    return out


class MultiSeries:
    """Truncated power series in ``nvars`` variables up to total degree ``order``."""

    __slots__ = ("nvars", "order", "coeffs")

    def __init__(self, nvars, order, coeffs=None):
        self.nvars = nvars
        self.order = order
        clean = {}
        for m, c in (coeffs or {}).items():
            m = tuple(m)
            if sum(m) <= order:
                c = GammaRational.lift(c)
                if c:
                    clean[m] = c
        self.coeffs = clean

    @classmethod
    def constant(cls, nvars, order, c):
        return cls(nvars, order, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, order, s):
        return cls(nvars, order, {tuple(int(i == s) for i in range(nvars)): 1})

    def __getitem__(self, m):
        return self.coeffs.get(tuple(m), ZERO)

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError("series in different numbers of variables")
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, MultiSeries):
            other = MultiSeries.constant(self.nvars, self.order, other)
        order = self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, ZERO) + c
        return MultiSeries(self.nvars, order, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.nvars, self.order, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            c = GammaRational.lift(other)
            return MultiSeries(self.nvars, self.order, {m: c * v for m, v in self.coeffs.items()})
        order = self._check(other)
        out = {}
        for m1, c1 in self.coeffs.items():
            d1 = sum(m1)
            for m2, c2 in other.coeffs.items():
                if d1 + sum(m2) > order:
                    continue
                key = tuple(a + b for a, b in zip(m1, m2))
                out[key] = out.get(key, ZERO) + c1 * c2
        return MultiSeries(self.nvars, order, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = MultiSeries.constant(self.nvars, self.order, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            other = MultiSeries.constant(self.nvars, self.order, other)
        order = min(self.order, other.order)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self[m] == other[m] for m in keys if sum(m) <= order)

    def __hash__(self):
        return hash((self.nvars, self.order, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        terms = " + ".join(f"{c}*t^{m}" for m, c in sorted(self.coeffs.items()))
        return f"MultiSeries[{self.order}]({terms or '0'})"

    def truncate(self, order):
        return MultiSeries(self.nvars, min(order, self.order), self.coeffs)

    def with_order(self, order):
        """Same coefficients, declared valid up to ``order``."""
        return MultiSeries(self.nvars, order, self.coeffs)

    def constant_term(self):
        return self[(0,) * self.nvars]

    def gamma_part(self):
        return MultiSeries(self.nvars, self.order, {m: c.b for m, c in self.coeffs.items()})

    def rational_part(self):
        return MultiSeries(self.nvars, self.order, {m: c.a for m, c in self.coeffs.items()})

    def is_rational(self):
        return all(c.b == 0 for c in self.coeffs.values())

    def rational_coeffs(self):
        """{multi-index: Fraction}; raises GammaResidue if gamma survives."""
        if not self.is_rational():
            raise GammaResidue("series still carries gamma terms")
        return {m: c.a for m, c in sorted(self.coeffs.items())}

    def shift(self, s):
        """Multiply by t_s."""
        out = {}
        for m, c in self.coeffs.items():
            k = list(m)
            k[s] += 1
            out[tuple(k)] = c
        return MultiSeries(self.nvars, self.order, out)

    def compose(self, subs):
        """Substitute series ``subs[s]`` (no constant term) for t_s."""
        order = min([self.order] + [g.order for g in subs])
        nv = subs[0].nvars
        out = MultiSeries(nv, order)
        powers = [[MultiSeries.constant(nv, order, 1)] for _ in subs]
        for s, g in enumerate(subs):
            for _ in range(order):
                powers[s].append(powers[s][-1] * g)
        for m, c in self.coeffs.items():
            term = MultiSeries.constant(nv, order, c)
            for s, k in enumerate(m):
                term = term * powers[s][k]
            out = out + term
        return out


def series_exp(x):
    if x.constant_term():
        raise BadConstantTerm("exp needs a series without constant term")
    result = MultiSeries.constant(x.nvars, x.order, 1)
    term = MultiSeries.constant(x.nvars, x.order, 1)
    for k in range(1, x.order + 1):
        term = term * x * Fraction(1, k)
        result = result + term
    return result


def series_log(u):
    if u.constant_term() != 1:
        raise BadConstantTerm("log needs constant term 1")
    y = u - 1
    result = MultiSeries(u.nvars, u.order)
    power = MultiSeries.constant(u.nvars, u.order, 1)
    for k in range(1, u.order + 1):
        power = power * y
        result = result + power * Fraction((-1) ** (k + 1), k)
    return result


def invert_map(forward):
    """Compositional inverse of t -> (t_s * unit_s(t))."""
    r = len(forward)
    order = min(g.order for g in forward)
    if order == 0:
        return [MultiSeries(r, 0) for _ in range(r)]
    units = []
    for s, g in enumerate(forward):
        unit = {}
        for m, c in g.coeffs.items():
            if m[s] == 0:
                raise BadConstantTerm(f"component {s} is not divisible by t_{s}")
            k = list(m)
            k[s] -= 1
            unit[tuple(k)] = c
        u = MultiSeries(r, order, unit)
        if u.constant_term() != 1:
            raise BadConstantTerm(f"component {s} does not start with t_{s}")
        units.append(u)
    inv_units = [series_exp(-series_log(u)) for u in units]
    t = [MultiSeries.variable(r, order, s) for s in range(r)]
    for _ in range(order + 1):
        t = [inv_units[s].compose(t).shift(s) for s in range(r)]
    return t


class LogSeries:
    """sum over log-monomials L^e of MultiSeries, total log-degree <= 1."""

    __slots__ = ("nvars", "order", "parts")

    def __init__(self, nvars, order, parts=None):
        self.nvars = nvars
        self.order = order
        self.parts = {}
        for e, ser in (parts or {}).items():
            e = tuple(e)
            if sum(e) > 1:
                raise ValueError("log-degree above one is out of scope")
            ser = ser.truncate(order)
            if ser.coeffs:
                self.parts[e] = ser

    def part(self, e):
        return self.parts.get(tuple(e), MultiSeries(self.nvars, self.order))

    def log_coefficient(self, s):
        e = tuple(int(i == s) for i in range(self.nvars))
        return self.part(e)

    def series(self):
        return self.part((0,) * self.nvars)

    def __add__(self, other):
        order = min(self.order, other.order)
        parts = {}
        for e in set(self.parts) | set(other.parts):
            parts[e] = self.part(e).truncate(order) + other.part(e).truncate(order)
        return LogSeries(self.nvars, order, parts)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, c):
        return LogSeries(self.nvars, self.order, {e: s * c for e, s in self.parts.items()})

    def shift(self, s):
        return LogSeries(self.nvars, self.order, {e: ser.shift(s) for e, ser in self.parts.items()})

    def with_order(self, order):
        return LogSeries(self.nvars, order, {e: ser.with_order(order) for e, ser in self.parts.items()})

    def theta(self, k):
        """t_k d/dt_k, with t_k d/dt_k L_r = delta_{kr}."""
        parts = {}
        for e, ser in self.parts.items():
            scaled = MultiSeries(self.nvars, self.order, {m: c * m[k] for m, c in ser.coeffs.items()})
            parts[e] = parts.get(e, MultiSeries(self.nvars, self.order)) + scaled
            if e[k]:
                lower = list(e)
                lower[k] -= 1
                lower = tuple(lower)
                parts[lower] = parts.get(lower, MultiSeries(self.nvars, self.order)) + ser
        return LogSeries(self.nvars, self.order, parts)

    def is_zero(self):
        return not self.parts

    def __eq__(self, other):
        keys = set(self.parts) | set(other.parts)
        return all(self.part(e) == other.part(e) for e in keys)

    def __repr__(self):
        return f"LogSeries({self.parts})"


def _mori(fan):
    from .toric import mori_generators

    return mori_generators(fan).generators


def frobenius_w(fan, order):
    gens = _mori(fan)
    r = len(gens)
    out = {}
    for m in multi_indices(r, order):
        val = Fraction(1)
        for j in range(fan.p + 1):
            val *= recip_gamma_int(sum(gens[s][j] * m[s] for s in range(r)))
            if not val:
                break
        out[m] = val
    return MultiSeries(r, order, out)


def mirror_map(fan, s, order):
    """log of the mirror coordinate: the rho_s-derivative of the Frobenius
    solution at rho = 0."""
    gens = _mori(fan)
    r = len(gens)
    series = {}
    for m in multi_indices(r, order):
        A = [sum(gens[k][j] * m[k] for k in range(r)) for j in range(fan.p + 1)]
        total = ZERO
        for j in range(fan.p + 1):
            if not gens[s][j]:
                continue
            term = drecip_gamma_int(A[j]) * gens[s][j]
            for i in range(fan.p + 1):
                if i != j:
                    term = term * recip_gamma_int(A[i])
                    if not term:
                        break
            total = total + term
        series[m] = total
    ser = MultiSeries(r, order, series)
    if not ser.is_rational():
        raise GammaResidue(f"gamma survives in the mirror map for s={s}")
    w0 = frobenius_w(fan, order)
    e = tuple(int(i == s) for i in range(r))
    return LogSeries(r, order, {e: w0, (0,) * r: ser})


def c1_series(fan, order):
    rays = fan.extra_rays()
    r = len(rays)
    n = fan.n
    out = {}
    for m in multi_indices(r, order):
        if not any(m):
            continue
        c = [-sum(rays[s][i] * m[s] for s in range(r)) for i in range(n)]
        if any(x < 0 for x in c):
            continue
        q = sum((sum(rays[s]) - 1) * m[s] for s in range(r))
        sign = -1 if q % 2 == 0 else 1
        val = Fraction(sign * factorial(-1 - q))
        for x in c:
            val /= factorial(x)
        for x in m:
            val /= factorial(x)
        out[m] = val
    return MultiSeries(r, order, out)


def _log_monomials(fan, shift):
    """Monomials (t-exponent, z-exponent) of X with log(1 + X) the expanded
    logarithm; ``shift`` is a 0-based ray index or None."""
    n, r = fan.n, fan.p - fan.n
    zero_t = (0,) * r
    base = [(zero_t, tuple([0] * n))]
    base += [(zero_t, tuple(int(i == k) for i in range(n))) for k in range(n)]
    for s, v in enumerate(fan.extra_rays()):
        base.append((tuple(int(i == s) for i in range(r)), tuple(v)))
    if shift is None:
        return base[1:]
    dt, dz = base[shift + 1]
    out = []
    for k, (t, z) in enumerate(base):
        if k == shift + 1:
            continue
        out.append((tuple(a - b for a, b in zip(t, dt)), tuple(a - b for a, b in zip(z, dz))))
    return out


def _compositions(k, parts):
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def log_degree_bound(fan, order):
    return order * max(1 + sum(abs(x) for x in v) for v in fan.extra_rays())


def constant_monomials(fan, order, shift=None):
    """Constant (in z) monomials of log(1 + X) by multinomial enumeration:
    a list of (t-exponent, power k, coefficient (-1)^(k+1)/k * multinomial)."""
    monos = _log_monomials(fan, shift)
    K = log_degree_bound(fan, order)
    n = fan.n
    found = []
    for k in range(1, K + 1):
        for counts in _compositions(k, len(monos)):
            z = [0] * n
            for c, (_, zz) in zip(counts, monos):
                if c:
                    for i in range(n):
                        z[i] += c * zz[i]
            if any(z):
                continue
            t = [0] * len(monos[0][0])
            for c, (tt, _) in zip(counts, monos):
                for i in range(len(t)):
                    t[i] += c * tt[i]
            if any(x < 0 for x in t):
                raise BadConstantTerm(f"constant monomial with negative t-exponent {t}")
            if sum(t) > order:
                continue
            multinom = factorial(k)
            for c in counts:
                multinom //= factorial(c)
            found.append((tuple(t), k, Fraction((-1) ** (k + 1), k) * multinom))
    # a-priori bound: every constant monomial of t-degree <= order has k <= K
    return found


def constant_term_log(fan, shift=None, order=6):
    r = fan.p - fan.n
    out = {}
    for t, _, c in constant_monomials(fan, order, shift):
        out[t] = out.get(t, Fraction(0)) + c
    return MultiSeries(r, order, out)


def pf_apply(fan, s, sol):
    """Apply the Picard-Fuchs operator L_s to a LogSeries."""
    gens = _mori(fan)
    r = len(gens)

    def vartheta(j, x):
        out = LogSeries(r, x.order)
        for k in range(r):
            if gens[k][j]:
                out = out + x.theta(k) * gens[k][j]
        return out

    def falling(j, count, x):
        for i in range(count):
            x = vartheta(j, x) - x * i
        return x

    pos = sol
    neg = sol
    for j, l in enumerate(gens[s]):
        if l > 0:
            pos = falling(j, l, pos)
        elif l < 0:
            neg = falling(j, -l, neg)
    result = pos - neg.shift(s)
    return result.with_order(sol.order - 1)

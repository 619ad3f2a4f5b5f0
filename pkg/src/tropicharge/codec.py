"""JSON encoding with exact rationals written as "num/den" strings."""

import json
from fractions import Fraction

from .charge import CentralCharge, Check, PuiseuxSeries, VerificationReport
from .series import GammaRational, LogSeries, MultiSeries

REPORT_SCHEMA = "tropicharge-report/1"
CONFIG_SCHEMA = "tropicharge-config/1"


def rat(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s):
    if isinstance(s, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"expected a rational string or integer, got {s!r}")


def encode(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, float):
        return round(obj, 12)
    if isinstance(obj, GammaRational):
        return rat(obj.a) if not obj.b else {"rational": rat(obj.a), "gamma": rat(obj.b)}
    if isinstance(obj, MultiSeries):
        return {
            "nvars": obj.nvars,
            "order": obj.order,
            "coeffs": [[list(m), encode(c)] for m, c in sorted(obj.coeffs.items())],
        }
    if isinstance(obj, LogSeries):
        return {"order": obj.order, "parts": [[list(e), encode(s)] for e, s in sorted(obj.parts.items())]}
    if isinstance(obj, PuiseuxSeries):
        return {"exact_below": rat(obj.bound), "coeffs": [[rat(e), rat(c)] for e, c in obj.coeffs]}
    if isinstance(obj, CentralCharge):
        return {
            "n": obj.n,
            "log_coeffs": [rat(x) for x in obj.log_coeffs],
            "series_part": encode(obj.series_part),
            "half_integer_part": rat(obj.half_integer_part),
        }
    if isinstance(obj, Check):
        return {"name": obj.name, "passed": obj.passed, "lhs": encode(obj.lhs),
                "rhs": encode(obj.rhs), "order": obj.order}
    if isinstance(obj, VerificationReport):
        return [encode(c) for c in obj.checks]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if hasattr(obj, "tolist"):
        return encode(obj.tolist())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj):
    return json.dumps(encode(obj), sort_keys=True, indent=1) + "\n"

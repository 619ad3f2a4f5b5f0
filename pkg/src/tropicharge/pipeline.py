"""Job configuration and the end-to-end verification pipeline."""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import amoeba as amoeba_lab
from .charge import (
    VerificationReport,
    c2_vanishing,
    lagrangian_charge,
    mirror_maps,
    verify_divisor_identity,
    verify_gs_equivalence,
    verify_mirror_triple,
    verify_theorem1,
    verify_theorem2,
    z_intersection,
    z_tropical,
)
from .codec import CONFIG_SCHEMA, REPORT_SCHEMA, parse_rat
from .curve import (
    build_curve,
    check_balanced,
    check_nice_family,
    clip_to_g_trop,
    curve_invariants,
)
from .errors import ConfigInvalid, DoesNotFit, NotTransverse, TropichargeError
from .geometry import euclidean_volume, lattice_points
from .series import LogSeries, MultiSeries, c1_series, pf_apply
from .toric import divisor_polytope, intersection_numbers, is_ample, validate_fan
from .tropical import tropicalize

MAX_REDRAWS = 50
MAX_HALVINGS = 20
PF_ORDER = 4
AMOEBA_SAMPLE_CAP = 1500


@dataclass
class JobConfig:
    fan: list
    family: list  # [{"divisor": [...], "coefficients": [[exponent, value], ...] or None}]
    lam: list
    check_lambdas: list
    truncation_order: int = 6
    shrink: Fraction = Fraction(1, 4)
    amoeba: dict = None
    seed: int = 0
    coefficient_range: tuple = (-3, 3)
    outputs: dict = field(default_factory=dict)
    name: str = "job"


def _rats(values, what):
    try:
        return [parse_rat(x) for x in values]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ConfigInvalid(f"{what}: {exc}") from exc


def parse_config(data, name="job"):
    if not isinstance(data, dict):
        raise ConfigInvalid("config must be a JSON object")
    if data.get("schema", CONFIG_SCHEMA) != CONFIG_SCHEMA:
        raise ConfigInvalid(f"unknown config schema {data.get('schema')!r}")
    for key in ("fan", "family", "lambda"):
        if key not in data:
            raise ConfigInvalid(f"missing key {key!r}")
    fan = data["fan"]
    if not isinstance(fan, list) or not all(isinstance(v, list) and all(isinstance(x, int) for x in v) for v in fan):
        raise ConfigInvalid("fan must be a list of integer vectors")
    family = []
    for item in data["family"]:
        if not isinstance(item, dict) or "divisor" not in item:
            raise ConfigInvalid("family members need a 'divisor' entry")
        coeffs = item.get("coefficients")
        if coeffs is not None:
            try:
                coeffs = [(tuple(int(x) for x in v), parse_rat(c)) for v, c in coeffs]
            except (ValueError, TypeError) as exc:
                raise ConfigInvalid(f"bad tropical coefficients: {exc}") from exc
        family.append({"divisor": _rats(item["divisor"], "divisor"), "coefficients": coeffs})
    lam = _rats(data["lambda"], "lambda")
    extra = [_rats(x, "check_lambdas") for x in data.get("check_lambdas", [])]
    order = data.get("truncation_order", 6)
    if not isinstance(order, int) or order < 0:
        raise ConfigInvalid("truncation_order must be a non-negative integer")
    shrink = _rats([data.get("shrink", "1/4")], "shrink")[0]
    if shrink <= 0:
        raise ConfigInvalid("shrink must be positive")
    amoeba = data.get("amoeba")
    if amoeba is not None:
        ts = amoeba.get("t_sequence")
        if not ts or not all(isinstance(t, (int, float)) and 0 < t < 1 for t in ts):
            raise ConfigInvalid("amoeba.t_sequence must hold numbers in (0, 1)")
        amoeba = {"t_sequence": [float(t) for t in ts], "resolution": int(amoeba.get("resolution", 60))}
    lo, hi = data.get("coefficient_range", [-3, 3])
    return JobConfig(
        fan=fan,
        family=family,
        lam=lam,
        check_lambdas=extra or [lam],
        truncation_order=order,
        shrink=shrink,
        amoeba=amoeba,
        seed=int(data.get("seed", 0)),
        coefficient_range=(int(lo), int(hi)),
        outputs=dict(data.get("outputs", {})),
        name=str(data.get("name", name)),
    )


def load_config(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigInvalid(f"cannot read config {path}: {exc}") from exc
    return parse_config(data, name=path.stem)


def _validate(cfg):
    try:
        fan = validate_fan(cfg.fan)
    except TropichargeError as exc:
        raise ConfigInvalid(f"invalid fan: {exc}") from exc
    if len(cfg.family) != fan.n - 1:
        raise ConfigInvalid(f"family needs {fan.n - 1} divisors, got {len(cfg.family)}")
    divisors = []
    for item in cfg.family:
        a = item["divisor"]
        if len(a) != fan.p:
            raise ConfigInvalid(f"divisor {a} needs {fan.p} coefficients")
        if not is_ample(fan, a):
            raise ConfigInvalid(f"divisor {[str(x) for x in a]} is not ample")
        d = divisor_polytope(fan, a)
        if any(x.denominator != 1 for v in d.polytope.vertices for x in v):
            raise ConfigInvalid("divisor polytopes must be lattice polytopes")
        divisors.append(d)
    for lam in [cfg.lam] + cfg.check_lambdas:
        if len(lam) != fan.p - fan.n:
            raise ConfigInvalid(f"lambda {lam} needs {fan.p - fan.n} entries")
        if not is_ample(fan, [0] * fan.n + list(lam)):
            raise ConfigInvalid(f"lambda {[str(x) for x in lam]} is not ample")
    return fan, divisors


def _draw_family(fan, divisors, cfg):
    rng = random.Random(cfg.seed)
    lo, hi = cfg.coefficient_range
    random_members = [item["coefficients"] is None for item in cfg.family]
    for attempt in range(1, MAX_REDRAWS + 1):
        polys = []
        for item, d in zip(cfg.family, divisors):
            if item["coefficients"] is not None:
                support, vals = zip(*item["coefficients"])
            else:
                support = lattice_points(d.polytope)
                vals = [rng.randint(lo, hi) for _ in support]
            try:
                polys.append(tropicalize(support, list(vals)))
            except TropichargeError as exc:
                raise ConfigInvalid(f"bad tropical polynomial: {exc}") from exc
        try:
            return check_nice_family(fan, divisors, polys), attempt
        except NotTransverse:
            if not any(random_members):
                raise ConfigInvalid("explicit tropical coefficients are not transverse")
        except TropichargeError as exc:
            raise ConfigInvalid(f"family is not nice: {exc}") from exc
    raise ConfigInvalid(f"no transverse draw within {MAX_REDRAWS} attempts")


def _place(graph, fan, lam, shrink):
    for _ in range(MAX_HALVINGS):
        try:
            return clip_to_g_trop(graph, fan, lam, shrink)
        except DoesNotFit:
            shrink /= 2
    return clip_to_g_trop(graph, fan, lam, shrink)


def _pf_checks(fan, maps):
    report = VerificationReport()
    r = fan.p - fan.n
    order = min(PF_ORDER, maps[0].order)
    one = LogSeries(r, order, {(0,) * r: MultiSeries.constant(r, order, 1)})
    for s in range(r):
        report.add(f"PF operator {s + 1} kills 1", pf_apply(fan, s, one).is_zero(), True, order=order)
        for k, m in enumerate(maps):
            out = pf_apply(fan, s, m.with_order(order))
            report.add(f"PF operator {s + 1} kills mirror map {k + 1}", out.is_zero(), True, order=order)
    return report


def _curve_summary(graph, placed):
    vertices = [{"position": v.position, "type": v.cell.type, "volume": euclidean_volume(v.cell.total),
                 "placed": placed.positions[i]} for i, v in enumerate(graph.vertices)]
    end_points = {e.edge: e.point for e in placed.ends}
    edges = [{"endpoints": list(e.endpoints), "direction": e.direction, "weight": e.weight,
              "facet": None if e.facet is None else e.facet + 1, "end_point": end_points.get(k)}
             for k, e in enumerate(graph.edges)]
    return {"vertices": vertices, "edges": edges, "balanced": check_balanced(graph)}


def _amoeba_section(fan, lam, settings):
    rep = amoeba_lab.convergence_report(fan, lam, settings["t_sequence"], settings["resolution"])
    phi = amoeba_lab.superpotential_trop(fan, lam)
    final = amoeba_lab.sample_amoeba(fan, lam, settings["t_sequence"][-1], settings["resolution"])
    inside = amoeba_lab.points_inside_g_trop(final, fan, lam, rep.rows[-1][1])
    checks = VerificationReport()
    checks.add("amoeba distance decreases monotonically", rep.monotone, True)
    checks.add("final amoeba distance below tolerance", rep.rows[-1][1] < amoeba_lab.DEFAULTS.final_distance, True)
    checks.add("unreflected skeleton is farther at every t", all(u > d for _, d, u, _ in rep.rows), True)
    checks.add("no sample point deep inside G_trop", len(inside), 0)
    step = max(1, len(final.points) // AMOEBA_SAMPLE_CAP)
    pts = [[round(float(x), 4), round(float(y), 4)] for x, y in final.points[::step]]
    skeleton = []
    for a, d, ray in amoeba_lab._skeleton_pieces(phi, True):
        skeleton.append({"start": [float(x) for x in a], "vector": [float(x) for x in d], "ray": ray})
    section = {
        "rows": [{"t": t, "distance": d, "unreflected": u, "reverse_estimate": rv} for t, d, u, rv in rep.rows],
        "sample": pts,
        "skeleton": skeleton,
    }
    return section, checks


def run_job(cfg, skip_amoeba=False):
    """Run every stage; returns (report dict, all checks passed)."""
    fan, divisors = _validate(cfg)
    family, draws = _draw_family(fan, divisors, cfg)
    graph = build_curve(family)
    inv = curve_invariants(graph, fan.p)
    numbers = intersection_numbers(fan, divisors)
    order = cfg.truncation_order
    maps = mirror_maps(fan, order)
    placed = _place(graph, fan, cfg.lam, cfg.shrink)

    checks = VerificationReport()
    checks.add("curve is balanced", check_balanced(graph), True)
    checks.extend(verify_theorem1(fan, inv, numbers, maps))
    checks.extend(verify_divisor_identity(fan, inv))
    checks.extend(verify_mirror_triple(fan, order, maps))
    checks.extend(_pf_checks(fan, maps))
    checks.extend(c2_vanishing(fan, order))
    lagrangian = {}
    for lam in cfg.check_lambdas:
        pl = _place(graph, fan, lam, cfg.shrink)
        checks.extend(verify_theorem2(pl, fan, inv, lam, maps, order))
        lagrangian[",".join(str(x) for x in lam)] = lagrangian_charge(pl, fan, lam, order)
    checks.extend(verify_gs_equivalence(fan, order, maps))

    report = {
        "schema": REPORT_SCHEMA,
        "name": cfg.name,
        "fan": {"n": fan.n, "p": fan.p, "rays": fan.rays, "cones": fan.cones},
        "family": {
            "divisors": [d.coefficients for d in divisors],
            "tropical_coefficients": [[[list(v), a] for v, a in f.terms] for f in family.tropical_polys],
            "seed": cfg.seed,
            "draws": draws,
        },
        "lambda": cfg.lam,
        "truncation_order": order,
        "shrink": {"requested": cfg.shrink, "used": placed.shrink},
        "g_trop": placed.polytope.vertices,
        "curve": _curve_summary(graph, placed),
        "invariants": {"V": inv.V, "E": inv.E},
        "intersection_numbers": {"N": numbers[0], "N_tot": numbers[1]},
        "mirror_maps": [m.series().rational_part() for m in maps],
        "c1": c1_series(fan, order),
        "central_charges": {
            "tropical": z_tropical(fan, inv, maps),
            "intersection": z_intersection(fan, numbers, maps),
            "lagrangian": lagrangian,
        },
    }
    if cfg.amoeba and fan.n == 2 and not skip_amoeba:
        section, amoeba_checks = _amoeba_section(fan, cfg.lam, cfg.amoeba)
        report["amoeba"] = section
        checks.extend(amoeba_checks)
    report["verifications"] = checks
    report["passed"] = checks.passed
    return report, checks.passed

"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import json
import random
import time
from fractions import Fraction as F
from math import factorial

import pytest

from conftest import make_family
from oracles import kp2_mirror_coefficient
from tropicharge import bundled_config
from tropicharge.amoeba import convergence_report
from tropicharge.charge import (
    c2_vanishing,
    gs_slab_function,
    mirror_maps,
    verify_divisor_identity,
    verify_gs_equivalence,
    verify_mirror_triple,
    verify_theorem2,
)
from tropicharge.cli import main
from tropicharge.curve import build_curve, check_balanced, clip_to_g_trop, curve_invariants
from tropicharge.errors import NotTransverse
from tropicharge.geometry import convex_hull, euclidean_volume, lattice_points, mixed_volume, volume_polynomial
from tropicharge.pipeline import load_config, run_job
from tropicharge.series import LogSeries, MultiSeries, mirror_map, pf_apply
from tropicharge.toric import divisor_polytope
from tropicharge.tropical import cayley_mixed_subdivision, tropicalize

CONFIGS = ["p2_line", "p3_two_hyperplanes", "p1xp1_11"]


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            tail = f" ({detail})" if detail else ""
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {title}{tail}")
        assert ok, f"criterion {number} failed{tail}"
    return emit


def test_criterion_1_charge_routes_agree(verdict):
    ok = True
    notes = []
    for name in CONFIGS:
        start = time.perf_counter()
        report, _ = run_job(load_config(bundled_config(name)), skip_amoeba=True)
        elapsed = time.perf_counter() - start
        charges = report["central_charges"]
        same = charges["tropical"].differences(charges["intersection"]) == []
        ok &= same and elapsed < 10
        notes.append(f"{name} {elapsed:.1f}s")
        if name == "p3_two_hyperplanes":
            N, tot = report["intersection_numbers"]["N"], report["intersection_numbers"]["N_tot"]
            ok &= tuple(N) == (1, 1, 1, 1) and tot == 2
    verdict(1, "z_tropical equals z_intersection on every bundled config", ok, ", ".join(notes))


def test_criterion_2_mirror_map_triple(verdict, p2, p1p1):
    start = time.perf_counter()
    ok = verify_mirror_triple(p2, 6).passed and verify_mirror_triple(p1p1, 6).passed
    coeffs = mirror_map(p2, 0, 6).series().rational_coeffs()
    ok &= all(coeffs[(m,)] == kp2_mirror_coefficient(m) for m in range(1, 7))
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    verdict(2, "mirror map, C_1 and constant-term routes agree through order 6", ok, f"{elapsed:.1f}s")


def test_criterion_3_gamma_and_picard_fuchs(verdict, p2, p1p1, p3):
    ok = True
    for fan in (p2, p1p1, p3):
        r = fan.p - fan.n
        maps = [mirror_map(fan, s, 5) for s in range(r)]
        ok &= all(m.series().gamma_part() == MultiSeries(r, 5) for m in maps)
        one = LogSeries(r, 5, {(0,) * r: MultiSeries.constant(r, 5, 1)})
        for s in range(r):
            ok &= pf_apply(fan, s, one).is_zero()
            ok &= all(pf_apply(fan, s, m).is_zero() for m in maps)
    verdict(3, "gamma cancels and Picard-Fuchs operators annihilate the solutions", ok)


def test_criterion_4_lagrangian_reduction(verdict):
    ok = True
    for name in CONFIGS:
        cfg = load_config(bundled_config(name))
        report, _ = run_job(cfg, skip_amoeba=True)
        checks = report["verifications"].checks
        t2 = [c for c in checks if c.name.startswith("Z_lagrangian")]
        lams = {tuple(lam) for lam in cfg.check_lambdas}
        ok &= len(lams) >= 3 and len(t2) == len(cfg.check_lambdas) and all(c.passed for c in t2)
        ok &= all(c.passed for c in checks if "split point" in c.name or "reduction" in c.name)
        ok &= all(c.passed for c in checks if c.name.startswith("-sum E_j"))
        ok &= all(c.passed for c in checks if c.name.startswith("C_{"))
        ok &= sum(1 for c in checks if c.name.startswith("C_{")) == len(cfg.fan)
    verdict(4, "Lagrangian charge reduces to the tropical charge for 3 weights each", ok)


def test_criterion_4_direct_route(p2, p2_line):
    g = build_curve(p2_line)
    inv = curve_invariants(g, p2.p)
    maps = mirror_maps(p2, 6)
    for lam in ([1], [2], [F(3, 2)]):
        assert verify_theorem2(clip_to_g_trop(g, p2, lam, F(1, 4)), p2, inv, lam, maps, 6).passed
    assert verify_divisor_identity(p2, inv).passed
    assert c2_vanishing(p2, 6).passed


def test_criterion_5_gross_siebert(verdict, p2, p1p1):
    ok = verify_gs_equivalence(p2, 5).passed and verify_gs_equivalence(p1p1, 5).passed
    h = gs_slab_function(p2, 5)
    ok &= h[(1,)] == -2
    verdict(5, "(1 + h(t~(t))) exp(P(t)) = 1 through order 5, h = -2t~ + ...", ok)


def _random_case(rng, n, m):
    corner = list(range(2)) if n == 3 else list(range(3))
    while True:
        supports = []
        for _ in range(m):
            while True:
                pts = sorted({tuple(rng.choice(corner) for _ in range(n)) for _ in range(n + 2)})
                if convex_hull(pts).intrinsic_dim == n:
                    break
            supports.append(pts)
        polys = [tropicalize(s, [rng.randint(-9, 9) for _ in s]) for s in supports]
        ms = cayley_mixed_subdivision(polys)
        if ms.transverse():
            return [convex_hull(s) for s in supports], ms


def _cayley_matches_interpolation(polys, ms):
    n = polys[0].ambient_dim
    by_type = {}
    for cell in ms.cells:
        by_type[cell.type] = by_type.get(cell.type, F(0)) + euclidean_volume(cell.total)
    poly = volume_polynomial(polys)
    if {k: v for k, v in by_type.items() if v} != poly:
        return False
    for k, total in poly.items():
        args = [P for P, count in zip(polys, k) for _ in range(count)]
        count = factorial(n)
        for x in k:
            count //= factorial(x)
        if mixed_volume(args) * count != total:
            return False
    return True


def test_criterion_6_mixed_volume_oracles(verdict):
    rng = random.Random(20240611)
    plan = [(2, 2)] * 12 + [(3, 2)] * 5 + [(3, 3)] * 3
    results = [_cayley_matches_interpolation(*_random_case(rng, n, m)) for n, m in plan]
    verdict(6, "Cayley mixed-cell sums equal interpolated mixed volumes", all(results),
            f"{sum(results)}/{len(results)} instances")


def test_criterion_7_balancing(verdict, p2, p1p1, p3):
    rng = random.Random(77)
    curves = []
    for name in CONFIGS:
        report, _ = run_job(load_config(bundled_config(name)), skip_amoeba=True)
        curves.append(all(c.passed for c in report["verifications"].checks if c.name == "curve is balanced"))
    graphs = []
    for fan, divisors in ((p2, [(0, 0, 2)]), (p1p1, [(0, 0, 1, 2)]), (p3, [(0, 0, 0, 1)] * 2)):
        made = 0
        while made < 3:
            coeffs = [[rng.randint(-5, 5) for _ in lattice_points(divisor_polytope(fan, a).polytope)]
                      for a in divisors]
            try:
                graphs.append(build_curve(make_family(fan, divisors, coeffs)))
            except NotTransverse:
                continue
            made += 1
    ok = all(curves) and all(check_balanced(g) for g in graphs)
    ok &= all(not check_balanced(g.with_weight(0, g.edges[0].weight + 1)) for g in graphs)
    verdict(7, "every curve is balanced and a perturbed weight breaks balance", ok,
            f"{len(graphs) + len(curves)} curves")


def test_criterion_8_amoeba_convergence(verdict, p2):
    start = time.perf_counter()
    rep = convergence_report(p2, [1], [1e-1, 1e-2, 1e-3, 1e-4], 60)
    elapsed = time.perf_counter() - start
    d = [row[1] for row in rep.rows]
    ok = rep.monotone and d[-1] < 0.1 and all(row[2] > row[1] for row in rep.rows) and elapsed < 120
    verdict(8, "amoeba distance to the reflected skeleton decreases below 0.1", ok,
            ", ".join(f"{x:.3f}" for x in d) + f"; {elapsed:.1f}s")


def test_criterion_9_determinism(verdict, tmp_path):
    ok = True
    for name in CONFIGS:
        outs = []
        for k in range(2):
            rep, svg = tmp_path / f"{name}{k}.json", tmp_path / f"{name}{k}.svg"
            code = main(["run", str(bundled_config(name)), "--out", str(rep), "--svg", str(svg)])
            ok &= code == 0
            outs.append((rep.read_bytes(), svg.read_bytes() if svg.exists() else None))
        ok &= outs[0] == outs[1]
        ok &= json.loads(outs[0][0])["family"]["seed"] == json.loads(bundled_config(name).read_text())["seed"]
    verdict(9, "two runs with the same seed give byte-identical reports and SVGs", ok)

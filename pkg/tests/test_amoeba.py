import numpy as np
import pytest

from tropicharge.amoeba import (
    AmoebaSample,
    convergence_report,
    distance_to_skeleton,
    points_inside_g_trop,
    sample_amoeba,
    sample_polynomial,
    superpotential_trop,
)
from tropicharge.errors import UnsupportedDimension
from tropicharge.tropical import hypersurface_skeleton


def residual_ok(points, t, terms, tol=1e-6):
    lt = np.log(t)
    for x, y in points:
        z1, z2 = np.exp(x * lt), np.exp(y * lt)
        mags = [t ** a * abs(z1) ** v[0] * abs(z2) ** v[1] for v, a in terms]
        # some phase choice must balance the monomials: no term dominates the rest
        if max(mags) > sum(mags) - max(mags) + tol * sum(mags):
            return False
    return True


def test_sample_p2_is_nonempty_and_on_the_amoeba(p2):
    s = sample_amoeba(p2, [1], 1e-3, 30)
    assert len(s.points) > 100
    terms = [((0, 0), 0.0), ((1, 0), 0.0), ((0, 1), 0.0), ((-1, -1), 1.0)]
    assert residual_ok(s.points, 1e-3, terms)


def test_single_monomial_gives_empty_sample():
    s = sample_polynomial([((1, 1), 0.0)], 0.1, 10)
    assert len(s.points) == 0


def test_t_must_be_below_one(p2):
    with pytest.raises(ValueError):
        sample_amoeba(p2, [1], 1.0, 10)


def test_only_plane_examples(p3):
    with pytest.raises(UnsupportedDimension):
        sample_amoeba(p3, [1], 0.1, 10)


def test_points_on_skeleton_have_zero_distance(p2):
    phi = superpotential_trop(p2, [1])
    pts = []
    for cell in hypersurface_skeleton(phi):
        a = -np.array([float(x) for x in cell.points[0]])
        pts.append(a)
        if cell.kind == "segment":
            b = -np.array([float(x) for x in cell.points[1]])
            pts.append((a + b) / 2)
        elif cell.kind == "ray":
            pts.append(a - 2.5 * np.array([float(x) for x in cell.direction]))
    d = distance_to_skeleton(AmoebaSample(0.1, np.array(pts), 0), phi)
    assert d == pytest.approx(0.0, abs=1e-12)
    assert distance_to_skeleton(AmoebaSample(0.1, np.array(pts), 0), phi, reflect=False) > 0.5


def test_distance_decreases_and_frame_is_detected(p2):
    phi = superpotential_trop(p2, [1])
    coarse = sample_amoeba(p2, [1], 1e-2, 40)
    fine = sample_amoeba(p2, [1], 1e-4, 40)
    assert distance_to_skeleton(fine, phi) < distance_to_skeleton(coarse, phi)
    assert distance_to_skeleton(fine, phi, reflect=False) > distance_to_skeleton(fine, phi)


def test_single_t_report(p2):
    rep = convergence_report(p2, [1], [0.01], 20)
    assert len(rep.rows) == 1
    assert rep.monotone


def test_report_rejects_increasing_t(p2):
    with pytest.raises(ValueError):
        convergence_report(p2, [1], [0.01, 0.1], 20)


def test_compact_component_is_empty(p2):
    s = sample_amoeba(p2, [3], 1e-3, 40)
    assert len(points_inside_g_trop(s, p2, [3], 0.1)) == 0

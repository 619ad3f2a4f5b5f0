"""Floating-point amoeba sampling for two-dimensional examples.

The superpotential is W(z) = 1 + z_1 + z_2 + sum_s t^{lambda_s} z^{v_{2+s}}.
Rescaled amoeba points are (log|z_1|, log|z_2|) / log t.
"""

from dataclasses import dataclass, field
from math import log

import numpy as np

from .errors import UnsupportedDimension
from .toric import full_weights, g_trop
from .tropical import hypersurface_skeleton, tropicalize


@dataclass(frozen=True)
class AmoebaConfig:
    phases: int = 32
    residual: float = 1e-8
    final_distance: float = 0.1
    skeleton_step: float = 0.01
    margin: float = 2.0


DEFAULTS = AmoebaConfig()


@dataclass(frozen=True)
class AmoebaSample:
    t: float
    points: np.ndarray
    resolution: int


@dataclass
class ConvergenceReport:
    rows: list = field(default_factory=list)  # (t, reflected, unreflected, reverse)

    @property
    def monotone(self):
        d = [r[1] for r in self.rows]
        return all(b < a for a, b in zip(d, d[1:]))


def _terms(fan, lam):
    lam = [float(x) for x in full_weights(fan, lam)]
    return [(tuple(v), a) for v, a in zip([(0, 0)] + list(fan.rays), [0.0] + lam)]


def superpotential_trop(fan, lam):
    """W_trop with magnitudes -lambda_j."""
    lam = full_weights(fan, lam)
    return tropicalize([(0,) * fan.n] + list(fan.rays), [0] + [-x for x in lam])


def _solve_column(terms, t, fixed, phase, axis):
    """Roots in the free variable with the other variable t^fixed * e^{i phase}."""
    other = 1 - axis
    zf = t ** fixed * np.exp(1j * phase)
    powers = {}
    for v, a in terms:
        powers[v[axis]] = powers.get(v[axis], 0) + t ** a * zf ** v[other]
    lo, hi = min(powers), max(powers)
    coeffs = [powers.get(k, 0) for k in range(hi, lo - 1, -1)]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) < 2:
        return []
    out = []
    for z in np.roots(coeffs):
        if z == 0 or not np.isfinite(z):
            continue
        val = sum(c * z ** k for k, c in zip(range(len(coeffs) - 1, -1, -1), coeffs))
        der = sum(k * c * z ** (k - 1) for k, c in zip(range(len(coeffs) - 1, 0, -1), coeffs[:-1]))
        if der != 0:
            z = z - val / der
        out.append((zf, z))
    return out


def sample_amoeba(fan, lam, t, resolution, config=DEFAULTS):
    if fan.n != 2:
        raise UnsupportedDimension("the amoeba lab handles n = 2 only")
    return sample_polynomial(_terms(fan, lam), t, resolution, config)


def sample_polynomial(terms, t, resolution, config=DEFAULTS):
    """Rescaled amoeba of sum_v t^{a_v} z^v for terms [(v, a_v), ...]."""
    if not 0 < t < 1:
        raise ValueError("t must lie strictly between 0 and 1")
    if any(len(v) != 2 for v, _ in terms):
        raise UnsupportedDimension("the amoeba lab handles n = 2 only")
    span = config.margin + max(abs(a) for _, a in terms)
    grid = np.linspace(-span, span, resolution)
    phases = np.linspace(0, 2 * np.pi, config.phases, endpoint=False)
    lt = log(t)
    pts = []
    for axis in (1, 0):
        for x in grid:
            for th in phases:
                for zf, z in _solve_column(terms, t, x, th, axis):
                    z1, z2 = (zf, z) if axis == 1 else (z, zf)
                    vals = [t ** a * z1 ** v[0] * z2 ** v[1] for v, a in terms]
                    if abs(sum(vals)) > config.residual * sum(abs(u) for u in vals):
                        continue
                    pts.append((np.log(abs(z1)) / lt, np.log(abs(z2)) / lt))
    if not pts:
        return AmoebaSample(t, np.zeros((0, 2)), resolution)
    arr = np.unique(np.round(np.array(pts), 12), axis=0)
    return AmoebaSample(t, arr, resolution)


def _skeleton_pieces(phi, reflect):
    sign = -1.0 if reflect else 1.0
    pieces = []
    for cell in hypersurface_skeleton(phi):
        if cell.kind == "vertex":
            continue
        a = sign * np.array([float(x) for x in cell.points[0]])
        if cell.kind == "segment":
            b = sign * np.array([float(x) for x in cell.points[1]])
            pieces.append((a, b - a, False))
        else:
            d = sign * np.array([float(x) for x in cell.direction])
            pieces.append((a, d, True))
    return pieces


def _distances(points, pieces):
    best = np.full(len(points), np.inf)
    for a, d, ray in pieces:
        rel = points - a
        s = rel @ d / (d @ d)
        s = np.maximum(s, 0.0) if ray else np.clip(s, 0.0, 1.0)
        proj = a + np.outer(s, d)
        best = np.minimum(best, np.linalg.norm(points - proj, axis=1))
    return best


def distance_to_skeleton(sample, phi, reflect=True):
    """max over sample points of the distance to -V(phi) (or V(phi))."""
    if len(sample.points) == 0:
        return 0.0
    return float(_distances(sample.points, _skeleton_pieces(phi, reflect)).max())


def reverse_distance(sample, phi, box, config=DEFAULTS):
    """Estimate of max over -V(phi) ∩ box of the distance to the sample."""
    pts = []
    for a, d, ray in _skeleton_pieces(phi, True):
        length = box if ray else 1.0
        for s in np.arange(0.0, length, config.skeleton_step / max(np.linalg.norm(d), 1e-12)):
            q = a + s * d
            if np.all(np.abs(q) <= box):
                pts.append(q)
    if not pts or len(sample.points) == 0:
        return float("inf")
    pts = np.array(pts)
    diff = pts[:, None, :] - sample.points[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=2)).min(axis=1).max())


def points_inside_g_trop(sample, fan, lam, margin):
    """Sample points at Euclidean distance > margin from every facet
    hyperplane, on the inner side."""
    lam_full = [float(x) for x in full_weights(fan, lam)]
    g_trop(fan, lam)
    rays = np.array(fan.rays, dtype=float)
    chi = (sample.points @ rays.T + np.array(lam_full)) / np.linalg.norm(rays, axis=1)
    return sample.points[(chi > margin).all(axis=1)]


def convergence_report(fan, lam, t_sequence, resolution, config=DEFAULTS):
    t_sequence = list(t_sequence)
    if any(b >= a for a, b in zip(t_sequence, t_sequence[1:])):
        raise ValueError("t_sequence must be strictly decreasing")
    phi = superpotential_trop(fan, lam)
    report = ConvergenceReport()
    for t in t_sequence:
        sample = sample_amoeba(fan, lam, t, resolution, config)
        d = distance_to_skeleton(sample, phi, reflect=True)
        u = distance_to_skeleton(sample, phi, reflect=False)
        rev = reverse_distance(sample, phi, config.margin, config)
        report.rows.append((t, d, u, rev))
    return report

"""Static SVG figures of two-dimensional reports."""

from fractions import Fraction
from math import atan2

from .errors import NothingToRender

SIZE = 600
PAD = 40


def _f(s):
    return float(Fraction(s)) if isinstance(s, str) else float(s)


def _pt(v):
    return [_f(x) for x in v]


def render_svg(report, path=None):
    """SVG text for a report; also written to ``path`` when given."""
    curve = report.get("curve")
    amoeba = report.get("amoeba")
    has_curve = curve is not None and report.get("fan", {}).get("n") == 2
    if not has_curve and not amoeba:
        raise NothingToRender("report has no two-dimensional curve or amoeba data")

    pts = []
    polygon = []
    if has_curve:
        polygon = [_pt(v) for v in report["g_trop"]]
        cx = sum(p[0] for p in polygon) / len(polygon)
        cy = sum(p[1] for p in polygon) / len(polygon)
        polygon.sort(key=lambda p: atan2(p[1] - cy, p[0] - cx))
        pts += polygon
    cloud = [tuple(p) for p in amoeba["sample"]] if amoeba else []
    pts += cloud
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    scale = (SIZE - 2 * PAD) / span

    def sx(x):
        return f"{PAD + (x - lo_x) * scale:.3f}"

    def sy(y):
        return f"{SIZE - PAD - (y - lo_y) * scale:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>']
    if cloud:
        out.append('<g class="amoeba" fill="#9ecae1">')
        for x, y in cloud:
            out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="1"/>')
        out.append("</g>")
        out.append('<g class="skeleton" stroke="#de2d26" stroke-width="1">')
        far = 2 * span
        for piece in amoeba["skeleton"]:
            a = piece["start"]
            d = piece["vector"]
            k = far if piece["ray"] else 1.0
            b = [a[0] + k * d[0], a[1] + k * d[1]]
            out.append(f'<line class="skeleton-edge" x1="{sx(a[0])}" y1="{sy(a[1])}" '
                       f'x2="{sx(b[0])}" y2="{sy(b[1])}"/>')
        out.append("</g>")
    if has_curve:
        coords = " ".join(f"{sx(x)},{sy(y)}" for x, y in polygon)
        out.append(f'<polygon class="g-trop" points="{coords}" fill="none" stroke="black"/>')
        placed = [_pt(v["placed"]) for v in curve["vertices"]]
        out.append('<g class="curve" stroke="#31a354" stroke-width="2">')
        for e in curve["edges"]:
            a = placed[e["endpoints"][0]]
            b = placed[e["endpoints"][1]] if e["endpoints"][1] is not None else _pt(e["end_point"])
            out.append(f'<line class="edge" x1="{sx(a[0])}" y1="{sy(a[1])}" x2="{sx(b[0])}" y2="{sy(b[1])}"/>')
        out.append("</g>")
        out.append('<g class="labels" font-size="12" font-family="monospace">')
        for e in curve["edges"]:
            a = placed[e["endpoints"][0]]
            b = placed[e["endpoints"][1]] if e["endpoints"][1] is not None else _pt(e["end_point"])
            mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
            w = Fraction(e["weight"])
            out.append(f'<text class="weight" x="{sx(mx)}" y="{sy(my)}">{w}</text>')
        out.append("</g>")
        for x, y in placed:
            out.append(f'<circle class="vertex" cx="{sx(x)}" cy="{sy(y)}" r="4" fill="black"/>')
        for e in curve["edges"]:
            if e["end_point"] is not None:
                x, y = _pt(e["end_point"])
                out.append(f'<circle class="end" cx="{sx(x)}" cy="{sy(y)}" r="3" fill="#756bb1"/>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text

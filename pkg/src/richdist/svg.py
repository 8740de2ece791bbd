"""Deterministic SVG rendering of point configurations.

The drawing mirrors how the constructions are made: the base polygon is
outlined solid, every transformed copy dashed, and optionally the witness
segments of the most frequent distance classes are drawn color-coded per
class.  Identical inputs always produce byte-identical SVG text.
"""

from __future__ import annotations

from .geometry import PointSet, polygon_copies
from .oracle import approx_points
from .spectrum import distance_spectrum

_PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628")
_MARGIN_RATIO = 0.10


def _fmt(v: float) -> str:
    out = f"{v:.2f}"
    return "0.00" if out == "-0.00" else out


def render_svg(ps: PointSet, highlight: int = 0, size: int = 640,
               show_edges: bool = True) -> str:
    """Render the point set as standalone SVG 1.1 text.

    `highlight` draws the witness segments of that many top-multiplicity
    distance classes; `show_edges` toggles the polygon outlines recovered
    from the provenance log.
    """
    if len(ps.points) == 0:
        raise ValueError("cannot render an empty point set")
    coords = approx_points(ps).coords
    xs = [x for x, _ in coords]
    ys = [y for _, y in coords]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    pad = span * _MARGIN_RATIO
    world_w = (max(xs) - min(xs)) + 2 * pad
    world_h = (max(ys) - min(ys)) + 2 * pad
    scale = size / max(world_w, world_h)
    width = world_w * scale
    height = world_h * scale

    def to_px(x: float, y: float) -> tuple[float, float]:
        return (x - min(xs) + pad) * scale, (max(ys) + pad - y) * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]

    if highlight > 0:
        spectrum = distance_spectrum(ps)
        ranked = sorted(range(len(spectrum.classes)),
                        key=lambda i: -spectrum.classes[i].multiplicity)
        for slot, ci in enumerate(ranked[:highlight]):
            color = _PALETTE[slot % len(_PALETTE)]
            segs = []
            for i, j in spectrum.classes[ci].witnesses:
                x1, y1 = to_px(*coords[i])
                x2, y2 = to_px(*coords[j])
                segs.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
            parts.append(f'<g stroke="{color}" stroke-width="1" opacity="0.55">')
            parts.extend(segs)
            parts.append('</g>')

    if show_edges:
        copies = polygon_copies(ps)
        if copies:
            for c, copy in enumerate(copies):
                pts = " ".join("{},{}".format(*map(_fmt, to_px(*coords[i]))) for i in copy)
                style = ('stroke="black" stroke-width="2"' if c == 0 else
                         'stroke="#555555" stroke-width="1.5" stroke-dasharray="7,5"')
                parts.append(f'<polygon points="{pts}" fill="none" {style}/>')

    for x, y in coords:
        px, py = to_px(x, y)
        parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" fill="black"/>')
    parts.append('</svg>')
    return "\n".join(parts) + "\n"

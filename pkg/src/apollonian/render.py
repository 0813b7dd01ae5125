"""Deterministic SVG rendering of circle collections.

Model coordinates have y pointing up; the SVG is flipped so pictures come
out in mathematical orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .geometry import Circle, GeneralizedCircle, Line, signed_curvature

PALETTE = ("#1f3b73", "#b8312f", "#2a8c4a", "#d98c1a", "#6b3fa0", "#17807e", "#8c564b", "#555555")


@dataclass(frozen=True)
class RenderSpec:
    size: int = 800
    center: tuple[float, float] | None = None  # model units; derived when omitted
    half_width: float | None = None
    stroke_scale: float = 0.01  # stroke width as a fraction of the radius in pixels
    stroke_floor: float = 0.1
    min_radius: float = 0.0
    color: str = "level"  # "level", "residue" or "mono"
    residue_modulus: int = 24
    title: str | None = None

    def __post_init__(self):
        if self.color not in ("level", "residue", "mono"):
            raise ValueError(f"unknown color rule {self.color!r}")
        if self.size <= 0:
            raise ValueError("canvas size must be positive")


@dataclass(frozen=True)
class _Item:
    circle: GeneralizedCircle
    level: int
    curvature: Fraction


def _items(circles: Iterable) -> list[_Item]:
    out = []
    for c in circles:
        if isinstance(c, (Circle, Line)):
            k = signed_curvature(c)
            out.append(_Item(c, 0, k if isinstance(k, Fraction) else Fraction(0)))
        else:  # a gasket record
            out.append(_Item(c.circle(), c.level, Fraction(c.curvature)))
    return out


def _num(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _viewport(items: Sequence[_Item], spec: RenderSpec) -> tuple[float, float, float]:
    if spec.center is not None and spec.half_width is not None:
        return spec.center[0], spec.center[1], spec.half_width
    circles = [it.circle for it in items if isinstance(it.circle, Circle)]
    enclosing = [c for c in circles if c.orientation < 0]
    if enclosing:
        c = max(enclosing, key=lambda c: c.radius_sq)
        r = float(c.radius_sq) ** 0.5
        return float(c.center.re), float(c.center.im), r * 1.05
    if circles:
        xs0 = [float(c.center.re) - float(c.radius_sq) ** 0.5 for c in circles]
        xs1 = [float(c.center.re) + float(c.radius_sq) ** 0.5 for c in circles]
        ys0 = [float(c.center.im) - float(c.radius_sq) ** 0.5 for c in circles]
        ys1 = [float(c.center.im) + float(c.radius_sq) ** 0.5 for c in circles]
        x0, x1, y0, y1 = min(xs0), max(xs1), min(ys0), max(ys1)
        if any(isinstance(it.circle, Line) for it in items):
            y0 = min(y0, 0.0)
        half = max(x1 - x0, y1 - y0) / 2 * 1.05
        return (x0 + x1) / 2, (y0 + y1) / 2, half
    return 0.0, 0.0, 1.0


def _color(it: _Item, spec: RenderSpec) -> str:
    if spec.color == "mono":
        return "#000000"
    if spec.color == "level":
        return PALETTE[it.level % len(PALETTE)]
    k = it.curvature
    idx = int(k) % spec.residue_modulus if k.denominator == 1 else 0
    return PALETTE[idx % len(PALETTE)]


def render_svg(circles: Iterable, spec: RenderSpec | None = None) -> str:
    """One SVG element per visible circle or line; byte-stable output."""
    spec = spec or RenderSpec()
    items = _items(circles)
    cx, cy, half = _viewport(items, spec)
    scale = spec.size / (2 * half)

    def px(x: float, y: float) -> tuple[float, float]:
        return (x - cx + half) * scale, (cy + half - y) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.size}" height="{spec.size}" '
        f'viewBox="0 0 {spec.size} {spec.size}">',
    ]
    if spec.title:
        lines.append(f"<title>{escape(spec.title)}</title>")
    lines.append(f'<rect width="{spec.size}" height="{spec.size}" fill="#ffffff"/>')
    for it in items:
        c = it.circle
        color = _color(it, spec)
        if isinstance(c, Line):
            p0, d = c.p0, c.direction
            far = 4 * half / max(abs(complex(d)), 1e-300)
            x0, y0 = px(float(p0.re) - far * float(d.re), float(p0.im) - far * float(d.im))
            x1, y1 = px(float(p0.re) + far * float(d.re), float(p0.im) + far * float(d.im))
            lines.append(
                f'<line x1="{_num(x0)}" y1="{_num(y0)}" x2="{_num(x1)}" y2="{_num(y1)}" '
                f'stroke="{color}" stroke-width="{_num(max(spec.stroke_floor, 1.0))}"/>'
            )
            continue
        r = float(c.radius_sq) ** 0.5
        if r < spec.min_radius:
            continue
        x, y = px(float(c.center.re), float(c.center.im))
        rp = r * scale
        width = max(spec.stroke_floor, spec.stroke_scale * rp)
        lines.append(
            f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{_num(rp)}" fill="none" '
            f'stroke="{color}" stroke-width="{_num(width)}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def count_elements(svg: str) -> int:
    return svg.count("<circle ") + svg.count("<line ")

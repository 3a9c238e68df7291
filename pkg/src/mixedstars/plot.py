"""Orthographic SVG views of stars on the Bloch sphere.

Axes: x is where the prime-meridian plane meets the equator, z is the
north pole. The front view looks along +y (from y < 0) and shows the x-z
plane; the right view looks along -x (from x > 0) and shows the y-z plane.
Points on the far hemisphere are drawn hollow and faded.
"""

from __future__ import annotations

import math
from typing import Iterable

SIZE = 400
RADIUS = 160.0
CENTRE = SIZE / 2
COLORS = {"upper": "#c0392b", "lower": "#2e6fb7", "pseudo": "#7d3c98"}
VIEWS = ("front", "right")


def project(theta: float, phi: float, view: str) -> tuple[float, float, bool]:
    """Screen coordinates of a star and whether it sits on the visible hemisphere."""
    x = math.sin(theta) * math.cos(phi)
    y = math.sin(theta) * math.sin(phi)
    z = math.cos(theta)
    if view == "front":
        horizontal, depth = x, -y
    elif view == "right":
        horizontal, depth = y, x
    else:
        raise ValueError(f"unknown view {view!r}")
    return CENTRE + RADIUS * horizontal, CENTRE - RADIUS * z, depth >= 0


def _num(v: float) -> str:
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _marker(label: str, sx: float, sy: float, visible: bool) -> str:
    color = COLORS[label]
    opacity = "" if visible else ' stroke-opacity="0.45"'
    if label == "upper":
        fill = color if visible else "none"
        return f'<circle cx="{_num(sx)}" cy="{_num(sy)}" r="3" fill="{fill}" stroke="{color}"{opacity}/>'
    if label == "lower":
        dash = "" if visible else ' stroke-dasharray="2,1"'
        return (
            f'<circle cx="{_num(sx)}" cy="{_num(sy)}" r="4.5" fill="none" stroke="{color}"'
            f' stroke-width="1.2"{dash}{opacity}/>'
        )
    d = 4.0
    dash = "" if visible else ' stroke-dasharray="1.5,1"'
    return (
        f'<path d="M{_num(sx - d)},{_num(sy - d)}L{_num(sx + d)},{_num(sy + d)}'
        f'M{_num(sx - d)},{_num(sy + d)}L{_num(sx + d)},{_num(sy - d)}"'
        f' stroke="{color}" stroke-width="1.5" fill="none"{dash}{opacity}/>'
    )


def render(points: Iterable[tuple[str, float, float]], view: str, title: str = "") -> str:
    """SVG text for ``(set_label, theta, phi)`` points in the given view."""
    if view not in VIEWS:
        raise ValueError(f"unknown view {view!r}")
    axis = "x" if view == "front" else "y"
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<circle cx="{_num(CENTRE)}" cy="{_num(CENTRE)}" r="{_num(RADIUS)}" fill="none" stroke="black" stroke-width="1"/>',
        f'<line x1="{_num(CENTRE - RADIUS)}" y1="{_num(CENTRE)}" x2="{_num(CENTRE + RADIUS)}" y2="{_num(CENTRE)}"'
        ' stroke="#999" stroke-dasharray="4,3"/>',
        f'<line x1="{_num(CENTRE)}" y1="{_num(CENTRE - RADIUS)}" x2="{_num(CENTRE)}" y2="{_num(CENTRE + RADIUS)}"'
        ' stroke="#ccc" stroke-dasharray="2,3"/>',
        f'<text x="{_num(CENTRE + RADIUS + 6)}" y="{_num(CENTRE + 4)}" font-size="12">{axis}</text>',
        f'<text x="{_num(CENTRE - 4)}" y="{_num(CENTRE - RADIUS - 6)}" font-size="12">z</text>',
    ]
    if title:
        lines.append(f'<text x="8" y="16" font-size="12">{_escape(title)}</text>')
    lines.append('<g class="stars">')
    for label, theta, phi in points:
        if label not in COLORS:
            raise ValueError(f"unknown star set {label!r}")
        sx, sy, visible = project(theta, phi, view)
        lines.append(_marker(label, sx, sy, visible))
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")

"""Static SVG of numerical walls and the curve nu = 0 in the (beta, alpha) plane."""

from __future__ import annotations

import math

from .tilt import Wall, contract

BETA_MIN, BETA_MAX = -3.0, 3.0
ALPHA_MAX = 3.0
WIDTH, HEIGHT = 600, 300
PAD = 30


def _x(beta: float) -> float:
    return PAD + (beta - BETA_MIN) / (BETA_MAX - BETA_MIN) * WIDTH


def _y(alpha: float) -> float:
    return PAD + (1 - alpha / ALPHA_MAX) * HEIGHT


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _hyperbola_points(ch, steps: int = 600) -> list[list[tuple[float, float]]]:
    v = contract(ch)
    v0, v1, v2 = float(v.v0), float(v.v1), float(v.v2)
    if v0 == 0:
        return []
    branches, cur = [], []
    for i in range(steps + 1):
        b = BETA_MIN + (BETA_MAX - BETA_MIN) * i / steps
        t2 = v2 - b * v1 + b * b / 2 * v0
        a2 = 2 * t2 / v0
        if 0 < a2 <= ALPHA_MAX**2:
            cur.append((b, math.sqrt(a2)))
        elif cur:
            branches.append(cur)
            cur = []
    if cur:
        branches.append(cur)
    return branches


def _wall_element(w: Wall) -> str:
    if w.kind == "vertical":
        x = _x(float(w.beta))
        return f'<line x1="{_fmt(x)}" y1="{_fmt(_y(0))}" x2="{_fmt(x)}" y2="{_fmt(_y(ALPHA_MAX))}" class="wall"/>'
    c, r = float(w.center), math.sqrt(float(w.radius_sq))
    sx = WIDTH / (BETA_MAX - BETA_MIN)
    sy = HEIGHT / ALPHA_MAX
    return (
        f'<path d="M {_fmt(_x(c - r))} {_fmt(_y(0))} A {_fmt(r * sx)} {_fmt(r * sy)} 0 0 1 '
        f'{_fmt(_x(c + r))} {_fmt(_y(0))}" class="wall"/>'
    )


def render_svg(ch, walls: list[Wall], title: str = "") -> str:
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH + 2 * PAD}" height="{HEIGHT + 2 * PAD}" '
        f'viewBox="0 0 {WIDTH + 2 * PAD} {HEIGHT + 2 * PAD}">',
        "<style>.wall{fill:none;stroke:#1f77b4;stroke-width:1}"
        ".hyp{fill:none;stroke:#d62728;stroke-width:1.5}.axis{stroke:#000;stroke-width:1}</style>",
        f'<clipPath id="plot"><rect x="{PAD}" y="{PAD}" width="{WIDTH}" height="{HEIGHT}"/></clipPath>',
        f'<line x1="{PAD}" y1="{_fmt(_y(0))}" x2="{PAD + WIDTH}" y2="{_fmt(_y(0))}" class="axis"/>',
        f'<line x1="{_fmt(_x(0))}" y1="{PAD}" x2="{_fmt(_x(0))}" y2="{_fmt(_y(0))}" class="axis"/>',
    ]
    if title:
        lines.append(f'<text x="{PAD}" y="{PAD - 10}" font-size="12">{title}</text>')
    lines.append('<g clip-path="url(#plot)">')
    for w in walls:
        lines.append(_wall_element(w))
    for branch in _hyperbola_points(ch):
        pts = " ".join(f"{_fmt(_x(b))},{_fmt(_y(a))}" for b, a in branch)
        lines.append(f'<polyline points="{pts}" class="hyp"/>')
    lines.append("</g>")
    for b in range(-3, 4):
        lines.append(
            f'<text x="{_fmt(_x(b))}" y="{_fmt(_y(0) + 15)}" font-size="10" text-anchor="middle">{b}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def walls_csv(rows: list[tuple[str, Wall]]) -> str:
    out = ["w,kind,beta,center,radius_sq"]
    for label, w in rows:
        d = w.to_dict()
        out.append(
            ",".join(
                [f'"{label}"', d["kind"], d.get("beta", ""), d.get("center", ""), d.get("radius_sq", "")]
            )
        )
    return "\n".join(out) + "\n"


__all__ = ["render_svg", "walls_csv"]

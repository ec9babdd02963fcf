"""Tiny hand-rolled SVG line plots (fixed 800x600 viewBox, no dependencies).

Good enough for the two figures this package emits: spectrum curves and
dimension sweeps.  All coordinates are formatted with fixed precision so the
output bytes are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

WIDTH, HEIGHT = 800, 600
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 25, 30, 55


@dataclass
class Polyline:
    points: list                     # (x, y) in data coordinates
    dashed: bool = False
    color: str = "#1f5faa"
    label: str = ""


def _fmt(v) -> str:
    return format(v, ".2f")


def _tick_label(v) -> str:
    return format(v, ".6g")


@dataclass
class LinePlot:
    lines: list
    xlabel: str = ""
    ylabel: str = ""
    xticks: list = field(default_factory=list)
    yticks: list = field(default_factory=list)
    title: str = ""

    def render(self) -> str:
        xs = [p[0] for line in self.lines for p in line.points]
        ys = [p[1] for line in self.lines for p in line.points]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys + [0.0]), max(ys)
        if x1 == x0:
            x1 = x0 + 1.0
        if y1 == y0:
            y1 = y0 + 1.0
        padx = 0.04 * (x1 - x0)
        pady = 0.08 * (y1 - y0)
        x0, x1 = x0 - padx, x1 + padx
        y0, y1 = y0 - pady, y1 + pady
        iw = WIDTH - MARGIN_L - MARGIN_R
        ih = HEIGHT - MARGIN_T - MARGIN_B

        def px(x):
            return MARGIN_L + iw * (x - x0) / (x1 - x0)

        def py(y):
            return HEIGHT - MARGIN_B - ih * (y - y0) / (y1 - y0)

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
            f'<line x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" x2="{WIDTH - MARGIN_R}" '
            f'y2="{HEIGHT - MARGIN_B}" stroke="#000000" stroke-width="1.5"/>',
            f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
            f'y2="{HEIGHT - MARGIN_B}" stroke="#000000" stroke-width="1.5"/>',
        ]
        for t in self.xticks:
            if not x0 <= t <= x1:
                continue
            xp = _fmt(px(t))
            parts.append(f'<line x1="{xp}" y1="{HEIGHT - MARGIN_B}" x2="{xp}" '
                         f'y2="{HEIGHT - MARGIN_B + 6}" stroke="#000000"/>')
            parts.append(f'<text x="{xp}" y="{HEIGHT - MARGIN_B + 22}" font-size="14" '
                         f'text-anchor="middle">{_tick_label(t)}</text>')
        for t in self.yticks:
            if not y0 <= t <= y1:
                continue
            yp = _fmt(py(t))
            parts.append(f'<line x1="{MARGIN_L - 6}" y1="{yp}" x2="{MARGIN_L}" '
                         f'y2="{yp}" stroke="#000000"/>')
            parts.append(f'<text x="{MARGIN_L - 10}" y="{yp}" font-size="14" '
                         f'text-anchor="end" dominant-baseline="middle">{_tick_label(t)}</text>')
        for line in self.lines:
            pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in line.points)
            dash = ' stroke-dasharray="9 6"' if line.dashed else ""
            parts.append(f'<polyline fill="none" stroke="{line.color}" '
                         f'stroke-width="2.2"{dash} points="{pts}"/>')
            if line.label:
                lx, ly = line.points[-1]
                parts.append(f'<text x="{_fmt(px(lx) - 6)}" y="{_fmt(py(ly) - 10)}" '
                             f'font-size="14" text-anchor="end" fill="{line.color}">'
                             f'{line.label}</text>')
        if self.xlabel:
            parts.append(f'<text x="{MARGIN_L + iw / 2:.1f}" y="{HEIGHT - 12}" '
                         f'font-size="15" text-anchor="middle">{self.xlabel}</text>')
        if self.ylabel:
            parts.append(f'<text x="18" y="{MARGIN_T + ih / 2:.1f}" font-size="15" '
                         f'text-anchor="middle" transform="rotate(-90 18 '
                         f'{MARGIN_T + ih / 2:.1f})">{self.ylabel}</text>')
        if self.title:
            parts.append(f'<text x="{WIDTH / 2:.1f}" y="20" font-size="16" '
                         f'text-anchor="middle">{self.title}</text>')
        parts.append("</svg>")
        return "\n".join(parts) + "\n"

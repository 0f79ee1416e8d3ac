"""Self-contained SVG charts (no external renderer).

Two chart types mirror the result views of the study: a grouped line chart
of MAE against grid size (log MAE axis) and a bar chart of mean MAE per
strategy with standard-deviation whiskers, clipped at zero because MAE
cannot be negative.
"""

from __future__ import annotations

import math

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#000000", "#9467bd",
            "#ff7f0e", "#8c564b", "#17becf")

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 70, 150, 40, 55  # margins: left, right, top, bottom


def _esc(text):
    return (str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))


class _Canvas:
    def __init__(self, width=_W, height=_H):
        self.width = width
        self.height = height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
        ]

    def line(self, x1, y1, x2, y2, color="#333", width=1.0):
        self.parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{color}" stroke-width="{width}"/>'
        )

    def polyline(self, pts, color, width=1.8):
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"/>'
        )

    def circle(self, x, y, r, color):
        self.parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{color}"/>')

    def rect(self, x, y, w, h, color):
        self.parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" fill="{color}"/>'
        )

    def text(self, x, y, s, anchor="middle", size=12, rotate=None, color="#000"):
        extra = f' transform="rotate({rotate} {x:.2f} {y:.2f})"' if rotate is not None else ""
        self.parts.append(
            f'<text x="{x:.2f}" y="{y:.2f}" text-anchor="{anchor}" '
            f'font-size="{size}" fill="{color}"{extra}>{_esc(s)}</text>'
        )

    def render(self):
        return "\n".join(self.parts + ["</svg>"])


def _log_ticks(lo, hi):
    lo_e = math.floor(math.log10(lo))
    hi_e = math.ceil(math.log10(hi))
    return [10.0 ** e for e in range(lo_e, hi_e + 1)]


def _lin_ticks(hi, count=5):
    if hi <= 0:
        return [0.0, 1.0]
    raw = hi / count
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1, 2, 5, 10):
        if mult * mag >= raw:
            step = mult * mag
            break
    n = int(math.ceil(hi / step))
    return [i * step for i in range(n + 1)]


def line_chart(series, title, xlabel, ylabel) -> str:
    """Grouped line chart with a log-scale y axis.

    ``series`` is a list of (label, xs, ys) with positive ys.
    """
    canvas = _Canvas()
    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB
    all_x = [x for _, xs, _ in series for x in xs]
    all_y = [y for _, _, ys in series for y in ys if y > 0]
    if not all_x or not all_y:
        raise ValueError("line_chart needs nonempty series with positive values")
    x_lo, x_hi = min(all_x), max(all_x)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1, x_hi + 1
    y_ticks = _log_ticks(min(all_y), max(all_y))
    y_lo, y_hi = math.log10(y_ticks[0]), math.log10(y_ticks[-1])
    if y_hi == y_lo:
        y_hi = y_lo + 1

    def sx(x):
        return _ML + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y):
        return _MT + (y_hi - math.log10(y)) / (y_hi - y_lo) * plot_h

    canvas.line(_ML, _MT, _ML, _MT + plot_h)
    canvas.line(_ML, _MT + plot_h, _ML + plot_w, _MT + plot_h)
    for tick in y_ticks:
        y = sy(tick)
        canvas.line(_ML - 4, y, _ML, y)
        canvas.line(_ML, y, _ML + plot_w, y, color="#ddd", width=0.5)
        canvas.text(_ML - 8, y + 4, f"1e{int(math.log10(tick))}", anchor="end", size=11)
    for x in sorted(set(all_x)):
        px = sx(x)
        canvas.line(px, _MT + plot_h, px, _MT + plot_h + 4)
        canvas.text(px, _MT + plot_h + 18, f"{x:g}", size=11)
    canvas.text(_ML + plot_w / 2, _H - 12, xlabel)
    canvas.text(18, _MT + plot_h / 2, ylabel, rotate=-90)
    canvas.text(_W / 2, 22, title, size=14)

    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = [(sx(x), sy(max(y, 1e-300))) for x, y in zip(xs, ys)]
        canvas.polyline(pts, color)
        for x, y in pts:
            canvas.circle(x, y, 3, color)
        ly = _MT + 14 + i * 18
        canvas.line(_ML + plot_w + 10, ly - 4, _ML + plot_w + 34, ly - 4, color=color, width=2)
        canvas.text(_ML + plot_w + 40, ly, label, anchor="start", size=11)
    return canvas.render()


def bar_chart(labels, means, sds, title, ylabel) -> str:
    """Bar chart with SD whiskers; whisker ends below zero are clipped."""
    if not labels or len(labels) != len(means) or len(means) != len(sds):
        raise ValueError("bar_chart needs matching nonempty labels/means/sds")
    canvas = _Canvas()
    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB
    top = max(m + s for m, s in zip(means, sds))
    ticks = _lin_ticks(top * 1.05 if top > 0 else 1.0)
    y_hi = ticks[-1]

    def sy(v):
        return _MT + plot_h - v / y_hi * plot_h

    canvas.line(_ML, _MT, _ML, _MT + plot_h)
    canvas.line(_ML, _MT + plot_h, _ML + plot_w, _MT + plot_h)
    for tick in ticks:
        y = sy(tick)
        canvas.line(_ML - 4, y, _ML, y)
        canvas.line(_ML, y, _ML + plot_w, y, color="#ddd", width=0.5)
        canvas.text(_ML - 8, y + 4, f"{tick:.3g}", anchor="end", size=11)
    slot = plot_w / len(labels)
    bar_w = slot * 0.6
    for i, (label, mean, sd) in enumerate(zip(labels, means, sds)):
        color = _PALETTE[i % len(_PALETTE)]
        cx = _ML + (i + 0.5) * slot
        canvas.rect(cx - bar_w / 2, sy(mean), bar_w, plot_h - (sy(mean) - _MT), color)
        lo = max(mean - sd, 0.0)  # MAE cannot be negative
        hi = mean + sd
        canvas.line(cx, sy(lo), cx, sy(hi), color="#e6a100", width=2)
        canvas.line(cx - 6, sy(hi), cx + 6, sy(hi), color="#e6a100", width=2)
        if mean - sd > 0:
            canvas.line(cx - 6, sy(lo), cx + 6, sy(lo), color="#e6a100", width=2)
        canvas.text(cx, _MT + plot_h + 18, label, size=11, rotate=None)
    canvas.text(18, _MT + plot_h / 2, ylabel, rotate=-90)
    canvas.text(_W / 2, 22, title, size=14)
    return canvas.render()

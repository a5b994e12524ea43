"""Deterministic SVG charts: a dimension heatmap and a totals bar chart.

The markup is assembled by hand so that identical bundles give identical
bytes. All coordinates are printed with two decimals and nothing depends on
the clock, locale or installed fonts.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .engine import BANDS, GATE_DIMENSIONS
from .model import DIMENSIONS
from .reporting import ReportBundle, _require_entries

# score 0 (lightest) .. 4 (darkest)
RAMP = ("#f7f7f7", "#cccccc", "#969696", "#636363", "#252525")
INK = "#222222"
FONT = "DejaVu Sans, Arial, sans-serif"
MAX_TOTAL = 28

# interpretation band separators sit between the integer band edges
BAND_LINES = tuple(hi + 0.5 for _, hi, _ in BANDS[:-1])


def _f(x: float) -> str:
    return f"{x:.2f}"


def _open(width: float, height: float, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}" '
        f'font-family={quoteattr(FONT)} font-size="12">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0.00" y="0.00" width="{_f(width)}" height="{_f(height)}" fill="#ffffff"/>',
    ]


def _text(x: float, y: float, content: str, anchor: str = "middle", **attrs: str) -> str:
    extra = "".join(f" {k.replace('_', '-')}={quoteattr(v)}" for k, v in sorted(attrs.items()))
    return (f'<text x="{_f(x)}" y="{_f(y)}" text-anchor="{anchor}"{extra}>'
            f"{escape(content)}</text>")


def _finish(parts: list[str]) -> bytes:
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def render_heatmap_svg(bundle: ReportBundle) -> bytes:
    """Case-by-dimension grid of scores; gate dimensions get a bold, underlined header."""
    _require_entries(bundle)
    cell_w, cell_h = 44.0, 28.0
    label_w = 12.0 + 7.0 * max(len(e.label) for e in bundle.entries)
    left, top = label_w + 10.0, 46.0
    grid_w = cell_w * len(DIMENSIONS)
    n = len(bundle.entries)
    legend_y = top + n * cell_h + 24.0
    width = left + grid_w + 20.0
    height = legend_y + 40.0

    parts = _open(width, height, "Maturity scores by case and dimension")
    for j, dim in enumerate(DIMENSIONS):
        cx = left + (j + 0.5) * cell_w
        if dim in GATE_DIMENSIONS:
            parts.append(_text(cx, top - 14.0, dim + "*", font_weight="bold"))
            parts.append(f'<line x1="{_f(cx - 14.0)}" y1="{_f(top - 8.0)}" '
                         f'x2="{_f(cx + 14.0)}" y2="{_f(top - 8.0)}" stroke="{INK}" stroke-width="2.00"/>')
        else:
            parts.append(_text(cx, top - 14.0, dim))

    for i, entry in enumerate(bundle.entries):
        y = top + i * cell_h
        parts.append(_text(left - 8.0, y + cell_h / 2 + 4.0, entry.label, anchor="end"))
        for j, score in enumerate(entry.profile.as_tuple()):
            x = left + j * cell_w
            parts.append(f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(cell_w)}" height="{_f(cell_h)}" '
                         f'fill="{RAMP[score]}" stroke="#ffffff" stroke-width="1.00"/>')
            colour = "#ffffff" if score >= 3 else INK
            parts.append(_text(x + cell_w / 2, y + cell_h / 2 + 4.0, str(score), fill=colour))

    swatch = 18.0
    parts.append(_text(left, legend_y + 13.0, "score", anchor="end"))
    for s, colour in enumerate(RAMP):
        x = left + 8.0 + s * (swatch + 22.0)
        parts.append(f'<rect x="{_f(x)}" y="{_f(legend_y)}" width="{_f(swatch)}" height="{_f(swatch)}" '
                     f'fill="{colour}" stroke="{INK}" stroke-width="0.50"/>')
        parts.append(_text(x + swatch + 4.0, legend_y + 13.0, str(s), anchor="start"))
    parts.append(_text(left, legend_y + swatch + 16.0, "* gate dimension (score of 3 or more required)",
                       anchor="start", font_size="10"))
    return _finish(parts)


def render_totals_svg(bundle: ReportBundle) -> bytes:
    """One bar per case with dashed band separators and Gate/Full annotations."""
    _require_entries(bundle)
    scale = 10.0
    bar_w, gap = 36.0, 22.0
    left, top = 50.0, 24.0
    plot_h = MAX_TOTAL * scale
    n = len(bundle.entries)
    plot_w = n * (bar_w + gap) + gap
    band_label_w = 120.0
    width = left + plot_w + band_label_w
    base = top + plot_h
    height = base + 62.0

    def y_of(value: float) -> float:
        return base - value * scale

    parts = _open(width, height, "Total maturity score by case")
    for tick in range(0, MAX_TOTAL + 1, 4):
        y = y_of(tick)
        parts.append(f'<line x1="{_f(left - 4.0)}" y1="{_f(y)}" x2="{_f(left)}" y2="{_f(y)}" stroke="{INK}" stroke-width="1.00"/>')
        parts.append(_text(left - 7.0, y + 4.0, str(tick), anchor="end"))
    parts.append(_text(14.0, top + plot_h / 2, "S", font_weight="bold"))

    for i, entry in enumerate(bundle.entries):
        ev = entry.evaluation
        x = left + gap + i * (bar_w + gap)
        h = ev.total * scale
        parts.append(f'<rect x="{_f(x)}" y="{_f(base - h)}" width="{_f(bar_w)}" height="{_f(h)}" '
                     f'fill="{RAMP[2 if ev.full else 1]}" stroke="{INK}" stroke-width="1.00"/>')
        parts.append(_text(x + bar_w / 2, base - h - 4.0, str(ev.total)))
        parts.append(_text(x + bar_w / 2, base + 16.0, entry.label))
        parts.append(_text(x + bar_w / 2, base + 32.0, f"G{int(ev.gate)} F{int(ev.full)}", font_size="10"))

    right = left + plot_w
    for value in BAND_LINES:
        y = y_of(value)
        parts.append(f'<line x1="{_f(left)}" y1="{_f(y)}" x2="{_f(right)}" y2="{_f(y)}" '
                     f'stroke="{INK}" stroke-width="1.00" stroke-dasharray="5.00,3.00"/>')
    for lo, hi, label in BANDS:
        mid = (max(lo - 0.5, 0) + min(hi + 0.5, MAX_TOTAL)) / 2
        parts.append(_text(right + 6.0, y_of(mid) + 4.0, f"{lo}-{hi} {label.value}",
                           anchor="start", font_size="10"))

    parts.append(f'<line x1="{_f(left)}" y1="{_f(top)}" x2="{_f(left)}" y2="{_f(base)}" stroke="{INK}" stroke-width="1.00"/>')
    parts.append(f'<line x1="{_f(left)}" y1="{_f(base)}" x2="{_f(right)}" y2="{_f(base)}" stroke="{INK}" stroke-width="1.00"/>')
    parts.append(_text(left, height - 8.0, "G = gate, F = full compliance (1 met, 0 not met)",
                       anchor="start", font_size="10"))
    return _finish(parts)

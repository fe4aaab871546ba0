"""Plain SVG rendering for rasters, seats-votes curves and burst range plots."""
from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

BLUE = (33, 102, 172)
RED = (178, 24, 43)
WHITE = (247, 247, 247)
GREY = "#bdbdbd"
BAND = "#a1d99b"


def _doc(width: int, height: int, body: list) -> str:
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">\n' + "\n".join(body) + "\n</svg>\n")


def _text(x, y, s, size=12, anchor="middle", extra="") -> str:
    return f'<text x="{x:.1f}" y="{y:.1f}" font-size="{size}" text-anchor="{anchor}" {extra}>{escape(str(s))}</text>'


def diverging(value: float, scale: float) -> str:
    """Blue (negative) through white to red (positive, pro party A)."""
    t = 0.0 if scale == 0 else max(-1.0, min(1.0, value / scale))
    end = RED if t > 0 else BLUE
    t = abs(t)
    rgb = tuple(round(w + (e - w) * t) for w, e in zip(WHITE, end))
    return "#%02x%02x%02x" % rgb


def raster_svg(raster, size: int = 480, title: str = "") -> str:
    """Heatmap (signed values) or mask (booleans) of a raster; infeasible cells left blank."""
    g = raster.resolution
    margin = 40
    cell = size / g
    vals = [c[2] for c in raster.cells if c[2] is not None and not isinstance(c[2], bool)]
    scale = max((abs(float(v)) for v in vals), default=1.0) or 1.0
    body = [f'<rect x="0" y="0" width="{size + 2 * margin}" height="{size + 2 * margin}" fill="white"/>']
    # one rect per run of equal colour along a row keeps the file small
    for j in range(g):
        y = margin + size - (j + 1) * cell
        run_start, run_fill = 0, None
        row = raster.cells[j * g:(j + 1) * g]
        for i in range(g + 1):
            fill = None
            if i < g:
                v = row[i][2]
                if isinstance(v, bool):
                    fill = "#404040" if v else None
                elif v is not None:
                    fill = diverging(float(v), scale)
            if i == g or fill != run_fill:
                if run_fill is not None:
                    body.append(f'<rect x="{margin + run_start * cell:.2f}" y="{y:.2f}" '
                                f'width="{(i - run_start) * cell:.2f}" height="{cell:.2f}" fill="{run_fill}"/>')
                run_start, run_fill = i, fill
    body.append(f'<rect x="{margin}" y="{margin}" width="{size}" height="{size}" fill="none" stroke="black"/>')
    body.append(_text(margin + size / 2, size + margin + 28, "V"))
    body.append(_text(14, margin + size / 2, "S"))
    for t in (0, 0.5, 1):
        body.append(_text(margin + t * size, size + margin + 14, t, 10))
        body.append(_text(margin - 6, margin + size - t * size + 4, t, 10, "end"))
    label = title or f"{raster.metric} {raster.which}"
    if raster.meta.get("approximate"):
        label += " (approximate)"
    body.append(_text(margin + size / 2, 24, label, 14))
    return _doc(size + 2 * margin, size + 2 * margin, body)


def curve_svg(curve, size: int = 400) -> str:
    """Seats-votes step curve with the mean marked."""
    m = 40

    def px(v, s):
        return m + float(v) * size, m + size - float(s) * size

    body = [f'<rect x="{m}" y="{m}" width="{size}" height="{size}" fill="white" stroke="black"/>']
    pts = []
    prev_s = Fraction(0)
    for st in curve.steps:
        if not 0 <= st.v <= 1:
            prev_s = st.right
            continue
        pts.append(px(st.v, st.left))
        pts.append(px(st.v, st.right))
        prev_s = st.right
    path = [px(0, curve.seats_at(Fraction(0)) if curve.steps else 0)] + pts + [px(1, prev_s)]
    body.append('<polyline fill="none" stroke="black" stroke-width="2" points="'
                + " ".join(f"{x:.2f},{y:.2f}" for x, y in path) + '"/>')
    x, _ = px(curve.mean, 0)
    body.append(f'<line x1="{x:.2f}" y1="{m}" x2="{x:.2f}" y2="{m + size}" stroke="{GREY}" stroke-dasharray="4"/>')
    hx, hy = px(Fraction(1, 2), Fraction(1, 2))
    body.append(f'<line x1="{m}" y1="{hy:.2f}" x2="{m + size}" y2="{hy:.2f}" stroke="{GREY}"/>')
    body.append(f'<line x1="{hx:.2f}" y1="{m}" x2="{hx:.2f}" y2="{m + size}" stroke="{GREY}"/>')
    body.append(_text(m + size / 2, size + m + 28, "vote share"))
    body.append(_text(14, m + size / 2, "S"))
    return _doc(size + 2 * m, size + 2 * m, body)


def ranges_svg(summary, width: int = 900, height: int = 260) -> str:
    """One panel per metric: x = seats won, bar = value range, dot = mean, green band overlay."""
    from .chain.shortburst import METRICS

    seats = sorted(summary.buckets)
    pw = width / len(METRICS)
    m = 36
    body = [f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>']
    for k, metric in enumerate(METRICS):
        x0 = k * pw + m
        w = pw - m - 10
        top, bottom = 30, height - 40
        lo_b, hi_b = summary.band[metric]
        vals = [float(v) for s in seats if metric in summary.buckets[s]
                for v in (summary.buckets[s][metric].min, summary.buckets[s][metric].max)]
        vals += [float(lo_b), float(hi_b)]
        vmin, vmax = min(vals), max(vals)
        if vmax == vmin:
            vmin, vmax = vmin - 0.05, vmax + 0.05
        pad = (vmax - vmin) * 0.08
        vmin, vmax = vmin - pad, vmax + pad

        def py(v):
            return bottom - (float(v) - vmin) / (vmax - vmin) * (bottom - top)

        body.append(f'<rect x="{x0:.1f}" y="{py(hi_b):.1f}" width="{w:.1f}" '
                    f'height="{py(lo_b) - py(hi_b):.1f}" fill="{BAND}" opacity="0.6"/>')
        body.append(f'<rect x="{x0:.1f}" y="{top}" width="{w:.1f}" height="{bottom - top}" fill="none" stroke="black"/>')
        body.append(_text(x0 + w / 2, 18, metric, 13))
        for t in (vmin + pad, vmax - pad):
            body.append(_text(x0 - 4, py(t) + 3, f"{t:.3f}", 9, "end"))
        for idx, s in enumerate(seats):
            cx = x0 + (idx + 0.5) * w / len(seats)
            body.append(_text(cx, bottom + 14, s, 10))
            b = summary.buckets[s].get(metric)
            if b is None:
                continue
            body.append(f'<line x1="{cx:.1f}" y1="{py(b.min):.1f}" x2="{cx:.1f}" y2="{py(b.max):.1f}" '
                        f'stroke="black" stroke-width="3"/>')
            body.append(f'<circle cx="{cx:.1f}" cy="{py(b.mean):.1f}" r="3" fill="{"#%02x%02x%02x" % RED}"/>')
            body.append(_text(cx, py(b.max) - 4, b.count, 8))
        body.append(_text(x0 + w / 2, height - 8, "seats won", 10))
    return _doc(width, height, body)

"""Minimal static SVG line plots."""

from xml.sax.saxutils import escape

_PALETTE = ("#000000", "#1f4fd1", "#808080", "#c0392b", "#27ae60", "#8e44ad")


def line_plot(series, xlim, ylim, title="", xlabel="", ylabel="",
              width=480, height=420, ticks=5):
    """Render ``series`` as an SVG 1.1 document string.

    ``series`` is a sequence of ``(label, xs, ys)``. Points outside the axis
    limits are clipped by the plot area.
    """
    left, right, top, bottom = 60, 20, 30, 50
    pw, ph = width - left - right, height - top - bottom
    x0, x1 = xlim
    y0, y1 = ylim

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + (y1 - y) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        '<defs><clipPath id="plot-area">'
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}"/></clipPath></defs>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" '
        'fill="none" stroke="#000" stroke-width="1"/>',
    ]
    for i in range(ticks + 1):
        xv = x0 + (x1 - x0) * i / ticks
        yv = y0 + (y1 - y0) * i / ticks
        out.append(
            f'<line x1="{sx(xv):.2f}" y1="{top + ph}" x2="{sx(xv):.2f}" y2="{top + ph + 5}" stroke="#000"/>'
            f'<text x="{sx(xv):.2f}" y="{top + ph + 18}" font-size="11" text-anchor="middle">{xv:g}</text>'
        )
        out.append(
            f'<line x1="{left - 5}" y1="{sy(yv):.2f}" x2="{left}" y2="{sy(yv):.2f}" stroke="#000"/>'
            f'<text x="{left - 8}" y="{sy(yv) + 4:.2f}" font-size="11" text-anchor="end">{yv:g}</text>'
        )
    if title:
        out.append(f'<text x="{left + pw / 2}" y="18" font-size="13" text-anchor="middle">{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{left + pw / 2}" y="{height - 12}" font-size="12" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(
            f'<text x="16" y="{top + ph / 2}" font-size="12" text-anchor="middle" '
            f'transform="rotate(-90 16 {top + ph / 2})">{escape(ylabel)}</text>'
        )

    for k, (label, xs, ys) in enumerate(series):
        colour = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        out.append(
            f'<polyline clip-path="url(#plot-area)" fill="none" stroke="{colour}" '
            f'stroke-width="1.5" points="{pts}"/>'
        )
        if label:
            out.append(
                f'<text x="{left + pw - 6}" y="{top + 16 + 14 * k}" font-size="11" '
                f'text-anchor="end" fill="{colour}">{escape(label)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"

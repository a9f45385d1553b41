"""Minimal self-contained SVG line plots."""

from __future__ import annotations

from typing import Sequence

WIDTH, HEIGHT = 720, 400
MARGIN = 50


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def line_plot(series: Sequence[dict], title: str = "") -> str:
    """Render series ``{"values", "color", "dashed", "label"}`` on shared linear axes."""
    n = max(len(s["values"]) for s in series)
    y_max = max(max(s["values"]) for s in series)
    y_min = min(0.0, min(min(s["values"]) for s in series))
    x_span = max(n - 1, 1)
    y_span = (y_max - y_min) or 1.0
    pw, ph = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def sx(i):
        return MARGIN + pw * i / x_span

    def sy(v):
        return HEIGHT - MARGIN - ph * (v - y_min) / y_span

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" data-polylines="{len(series)}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="20" text-anchor="middle" font-size="14">{title}</text>')
    x0, y0 = MARGIN, HEIGHT - MARGIN
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{WIDTH - MARGIN}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}" stroke="black"/>')
    for t in _ticks(0, x_span):
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{y0 + 18}" text-anchor="middle" font-size="11">{t:.0f}</text>')
    for t in _ticks(y_min, y_max):
        y = sy(t)
        out.append(f'<line x1="{x0 - 5}" y1="{y:.2f}" x2="{x0}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="11">{t:.3g}</text>')
    for k, s in enumerate(series):
        pts = " ".join(f"{sx(i):.2f},{sy(v):.2f}" for i, v in enumerate(s["values"]))
        dash = ' stroke-dasharray="6,4"' if s.get("dashed") else ""
        out.append(
            f'<polyline fill="none" stroke="{s["color"]}" stroke-width="1.5"{dash} points="{pts}"/>'
        )
        if s.get("label"):
            ly = MARGIN + 14 * k
            out.append(
                f'<text x="{WIDTH - MARGIN}" y="{ly}" text-anchor="end" font-size="11" '
                f'fill="{s["color"]}">{s["label"]}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"

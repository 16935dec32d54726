"""SVG pictures of dimer configurations."""
from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .lattice import Window, in_window, is_black, make_dimer, window_vertices
from .pyramid import DimerConfig
from .shuffle import DeficientConfig
from .solid import HalfPlaneConfig

CELL = 20
PAD = 15
BLACK = "#222222"
WHITE = "#ffffff"
DIMER = "#3b6fb6"


def _header(width: int, height: int) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]


class _Canvas:
    def __init__(self, xmin: int, ymin: int, xmax: int, ymax: int):
        self.xmin, self.ymax = xmin, ymax
        self.width = (xmax - xmin) * CELL + 2 * PAD
        self.height = (ymax - ymin) * CELL + 2 * PAD
        self.body: list[str] = []

    def pt(self, v) -> tuple[int, int]:
        # y grows upward in the lattice and downward in SVG
        return PAD + (v[0] - self.xmin) * CELL, PAD + (self.ymax - v[1]) * CELL

    def dimer(self, d) -> None:
        (x0, y0), (x1, y1) = map(self.pt, d)
        r = CELL * 0.3
        x, y = min(x0, x1) - r, min(y0, y1) - r
        w, h = abs(x1 - x0) + 2 * r, abs(y1 - y0) + 2 * r
        self.body.append(
            f'<rect class="dimer" x="{x:.1f}" y="{y:.1f}" width="{w:.1f}" height="{h:.1f}" '
            f'rx="{r:.1f}" fill="{DIMER}" fill-opacity="0.55"/>'
        )

    def vertex(self, v, fill: str) -> None:
        x, y = self.pt(v)
        self.body.append(
            f'<circle class="vertex" cx="{x}" cy="{y}" r="{CELL * 0.15:.1f}" fill="{fill}" stroke="{BLACK}"/>'
        )

    def missing(self, corner) -> None:
        x, y = self.pt((corner[0], corner[1] + 1))
        self.body.append(
            f'<rect class="missing" x="{x - CELL * 0.4:.1f}" y="{y - CELL * 0.4:.1f}" '
            f'width="{CELL * 1.8:.1f}" height="{CELL * 1.8:.1f}" fill="#999999" fill-opacity="0.6"/>'
        )

    def render(self, title: str) -> str:
        out = _header(self.width, self.height)
        out.append(f"<title>{title}</title>")
        out.extend(self.body)
        out.append("</svg>")
        return "\n".join(out) + "\n"


def config_svg(cfg: DimerConfig | DeficientConfig, window: Window) -> str:
    """Dimers with both ends in ``window``, vertices coloured by the usual colouring."""
    canvas = _Canvas(*window)
    c = cfg.coloring
    drawn = set()
    for v in window_vertices(window):
        p = cfg.partner(v)
        if p is not None and in_window(p, window):
            d = make_dimer(v, p)
            if d not in drawn:
                drawn.add(d)
                canvas.dimer(d)
    if isinstance(cfg, DeficientConfig):
        for corner in sorted(cfg.missing):
            canvas.missing(corner)
    for v in window_vertices(window):
        canvas.vertex(v, BLACK if is_black(v, c) else WHITE)
    return canvas.render(quoteattr(f"length {cfg.n}")[1:-1])


def halfplanes_svg(upper: HalfPlaneConfig, lower: HalfPlaneConfig) -> str:
    verts = [v for h in (upper, lower) for d in h.dimers for v in d]
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    canvas = _Canvas(min(xs), min(ys), max(xs), max(ys))
    for h in (upper, lower):
        for d in sorted(h.dimers):
            canvas.dimer(d)
    for h in (upper, lower):
        # up-triangles sit where x + y is even before mirroring
        flip = 1 if h.side == "lower" else 0
        for v in sorted({v for d in h.dimers for v in d}):
            canvas.vertex(v, BLACK if (v[0] + v[1] + flip) % 2 == 0 else WHITE)
    return canvas.render(f"box side {upper.box}")


__all__ = ["config_svg", "halfplanes_svg"]

"""Square-lattice geometry: vertices, dimers, blocks, colorings, sliding.

A vertex ``(x, y)`` stands for the half-integer point ``(x + 1/2, y + 1/2)``,
so the horizontal symmetry axis of the empty room sits between rows ``y = -1``
and ``y = 0`` and the centre face has corners ``(-1, -1)`` .. ``(0, 0)``.

A coloring is the parity bit ``c``: vertex ``v`` is black iff
``(x + y) % 2 == c``.  The usual coloring for length ``n`` is ``n % 2``.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping

Vertex = tuple[int, int]
Dimer = tuple[Vertex, Vertex]
Window = tuple[int, int, int, int]  # xmin, ymin, xmax, ymax (inclusive)

ODD = "odd"
EVEN = "even"
VERTICAL = "V"
HORIZONTAL = "H"

_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


class LatticeError(ValueError):
    pass


def usual_coloring(n: int) -> int:
    return n % 2


def is_black(v: Vertex, c: int) -> bool:
    return (v[0] + v[1]) % 2 == c


def block_parity(corner: Vertex, c: int) -> str:
    """Odd iff the upper-left vertex of the 2x2 square at ``corner`` is black."""
    return ODD if is_black((corner[0], corner[1] + 1), c) else EVEN


def make_dimer(u: Vertex, v: Vertex) -> Dimer:
    if abs(u[0] - v[0]) + abs(u[1] - v[1]) != 1:
        raise LatticeError(f"{u} and {v} are not adjacent")
    return (u, v) if u < v else (v, u)


def is_horizontal(d: Dimer) -> bool:
    return d[0][1] == d[1][1]


def block_vertices(corner: Vertex) -> tuple[Vertex, Vertex, Vertex, Vertex]:
    x, y = corner
    return ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1))


def block_dimers(corner: Vertex, orientation: str) -> tuple[Dimer, Dimer]:
    x, y = corner
    if orientation == VERTICAL:
        return (((x, y), (x, y + 1)), ((x + 1, y), (x + 1, y + 1)))
    return (((x, y), (x + 1, y)), ((x, y + 1), (x + 1, y + 1)))


def odd_block_of(d: Dimer, c: int) -> Vertex:
    """Corner of the unique odd block containing ``d``."""
    (x, y), _ = d
    if is_horizontal(d):
        # candidates: d is the bottom of block (x, y) or the top of (x, y-1)
        return (x, y) if is_black((x, y + 1), c) else (x, y - 1)
    # candidates: d is the left side of block (x, y) or the right side of (x-1, y)
    return (x, y) if is_black((x, y + 1), c) else (x - 1, y)


def partner_in_odd_block(d: Dimer, c: int) -> Dimer:
    """The sliding map on a single dimer: the other dimer of its odd block."""
    (x, y), (x2, y2) = d
    bx, by = odd_block_of(d, c)
    if y == y2:
        ny = by + 1 if y == by else by
        return ((x, ny), (x2, ny))
    nx = bx + 1 if x == bx else bx
    return ((nx, y), (nx, y2))


def direction_of(d: Dimer, c: int) -> str:
    s = partner_in_odd_block(d, c)
    dx, dy = s[0][0] - d[0][0], s[0][1] - d[0][1]
    return {(1, 0): "E", (-1, 0): "W", (0, 1): "N", (0, -1): "S"}[(dx, dy)]


def neighbours(v: Vertex) -> Iterator[Vertex]:
    x, y = v
    for dx, dy in _STEPS:
        yield (x + dx, y + dy)


# -- windows ------------------------------------------------------------------

def centered_window(half: int) -> Window:
    """Vertices ``-half .. half-1`` in both directions (symmetric about the centre face)."""
    if half < 1:
        raise LatticeError("window half-width must be positive")
    return (-half, -half, half - 1, half - 1)


def in_window(v: Vertex, w: Window) -> bool:
    return w[0] <= v[0] <= w[2] and w[1] <= v[1] <= w[3]


def shrink(w: Window, k: int = 1) -> Window:
    out = (w[0] + k, w[1] + k, w[2] - k, w[3] - k)
    if out[0] > out[2] or out[1] > out[3]:
        raise LatticeError(f"window {w} too small to shrink by {k}")
    return out


def grow(w: Window, k: int = 1) -> Window:
    return (w[0] - k, w[1] - k, w[2] + k, w[3] + k)


def window_vertices(w: Window) -> Iterator[Vertex]:
    for x in range(w[0], w[2] + 1):
        for y in range(w[1], w[3] + 1):
            yield (x, y)


def bounding_window(vertices: Iterable[Vertex], margin: int = 0) -> Window | None:
    xs, ys = [], []
    for x, y in vertices:
        xs.append(x)
        ys.append(y)
    if not xs:
        return None
    return (min(xs) - margin, min(ys) - margin, max(xs) + margin, max(ys) + margin)


def union_window(a: Window | None, b: Window | None) -> Window | None:
    if a is None:
        return b
    if b is None:
        return a
    return (min(a[0], b[0]), min(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


def window_edges(w: Window) -> Iterator[Dimer]:
    """Every lattice edge with both endpoints in ``w``."""
    for x in range(w[0], w[2] + 1):
        for y in range(w[1], w[3] + 1):
            if x < w[2]:
                yield ((x, y), (x + 1, y))
            if y < w[3]:
                yield ((x, y), (x, y + 1))


# -- partner maps -------------------------------------------------------------

def dimers_of(partners: Mapping[Vertex, Vertex]) -> set[Dimer]:
    return {make_dimer(u, v) for u, v in partners.items() if v is not None}


def slide_partner_map(
    partners: Mapping[Vertex, Vertex | None], c: int, region: Iterable[Vertex]
) -> dict[Vertex, Vertex | None]:
    """Apply the sliding map to a partial cover given as ``vertex -> partner``.

    ``partners`` must be known on every vertex within distance 1 of
    ``region`` (uncovered vertices map to None).  The result maps each region
    vertex to its partner in the slid cover, or None if it is uncovered.
    """
    out: dict[Vertex, Vertex | None] = {}
    for v in region:
        found = None
        for u in neighbours(v):
            a, b = partner_in_odd_block(make_dimer(v, u), c)
            # the preimage always has an endpoint adjacent to v
            if a in partners:
                hit = partners[a] == b
            elif b in partners:
                hit = partners[b] == a
            else:
                raise LatticeError(f"cover unknown near {v}")
            if hit:
                if found is not None:
                    raise LatticeError(f"slid cover is not a matching at {v}")
                found = u
        out[v] = found
    return out

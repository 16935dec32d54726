"""Pyramid partitions as dimer covers asymptotic to the empty room.

A :class:`DimerConfig` of length ``n`` is stored as the finite set of dimers
it has that the empty room ``eps_n`` lacks.  Everything else is read from
``eps_n``, which is built once per length and cached:

* ``eps_1`` comes from the brick model (what the pile looks like from above);
* ``eps_n`` for ``n > 1`` is ``eps_{n-1}`` with its odd blocks deleted and
  then slid.

The brick model for general ``n`` is also here; it serves as an independent
oracle for the shuffled rooms and for the flip-based enumeration.
"""
from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

from .lattice import (
    EVEN,
    HORIZONTAL,
    ODD,
    VERTICAL,
    Dimer,
    LatticeError,
    Vertex,
    Window,
    block_dimers,
    block_parity,
    block_vertices,
    bounding_window,
    centered_window,
    in_window,
    make_dimer,
    shrink,
    slide_partner_map,
    usual_coloring,
    window_vertices,
)
from .series import ONE, Q0, Q1, Monomial, TruncatedSeries


class PyramidError(ValueError):
    pass


# -- the brick model ------------------------------------------------------------

class Brick(NamedTuple):
    i: int
    j: int
    depth: int

    @property
    def dark(self) -> bool:
        return self.depth % 2 == 0


def _layer_extent(n: int, depth: int) -> tuple[int, int, int, int]:
    """(i parity, i half-range, j parity, j half-range) of a brick layer."""
    m, light = divmod(depth, 2)
    return m % 2, m, (m + n - 1 + light) % 2, m + n - 1 + light


def is_brick(b: Brick, n: int) -> bool:
    if b.depth < 0:
        return False
    ip, ir, jp, jr = _layer_extent(n, b.depth)
    return (abs(b.i) <= ir and abs(b.j) <= jr
            and (b.i - ip) % 2 == 0 and (b.j - jp) % 2 == 0)


def bricks_above(b: Brick, n: int) -> list[Brick]:
    """The bricks of ``eps_n`` resting on ``b``."""
    if b.dark:
        if b.depth == 0:
            return []
        cands = [Brick(b.i - 1, b.j, b.depth - 1), Brick(b.i + 1, b.j, b.depth - 1)]
    else:
        cands = [Brick(b.i, b.j - 1, b.depth - 1), Brick(b.i, b.j + 1, b.depth - 1)]
    return [c for c in cands if is_brick(c, n)]


def bricks_below(b: Brick, n: int) -> list[Brick]:
    if b.dark:
        cands = [Brick(b.i, b.j - 1, b.depth + 1), Brick(b.i, b.j + 1, b.depth + 1)]
    else:
        cands = [Brick(b.i - 1, b.j, b.depth + 1), Brick(b.i + 1, b.j, b.depth + 1)]
    return [c for c in cands if is_brick(c, n)]


def apex_bricks(n: int) -> list[Brick]:
    return [Brick(0, j, 0) for j in range(-(n - 1), n, 2)]


def check_removed_set(removed: Iterable[Brick], n: int = 1) -> frozenset[Brick]:
    """Validate upward closure; return the set."""
    removed = frozenset(Brick(*b) for b in removed)
    for b in removed:
        if not is_brick(b, n):
            raise PyramidError(f"{b} is not a brick of the length-{n} room")
        for a in bricks_above(b, n):
            if a not in removed:
                raise PyramidError(f"{b} removed but {a}, resting on it, is not")
    return removed


def _brick_at(n: int, depth: int, v: Vertex) -> Brick | None:
    ip, ir, jp, jr = _layer_extent(n, depth)
    x, y = v
    # a brick (i, j) occupies columns i-1..i and rows j-1..j
    if not (-ir - 1 <= x <= ir and -jr - 1 <= y <= jr):
        return None
    i = x if (x - ip) % 2 == 0 else x + 1
    j = y if (y - jp) % 2 == 0 else y + 1
    return Brick(i, j, depth)


def visible_partner(v: Vertex, n: int = 1, removed: frozenset[Brick] = frozenset()) -> Vertex:
    """Partner of ``v`` in the dimer cover seen from above the pile."""
    x, y = v
    # no layer above this one reaches v
    start = 2 * max(0, x, -x - 1, y - n, -y - n - 1)
    for depth in range(start, start + 2 * len(removed) + 8):
        b = _brick_at(n, depth, v)
        if b is None or b in removed:
            continue
        if b.dark:
            return (x, b.j - 1 if y == b.j else b.j)
        return (b.i - 1 if x == b.i else b.i, y)
    raise PyramidError(f"no visible brick above {v}")


def enumerate_brick_partitions(n: int, max_degree: int) -> list[tuple[frozenset[Brick], Monomial]]:
    """Order ideals of the brick pile with at most ``max_degree`` bricks."""
    level = {frozenset()}
    out = [(frozenset(), ONE)]
    for _ in range(max_degree):
        nxt = set()
        for pi in level:
            cands = set(apex_bricks(n))
            for b in pi:
                cands.update(bricks_below(b, n))
            for b in cands:
                if b not in pi and all(a in pi for a in bricks_above(b, n)):
                    nxt.add(pi | {b})
        level = nxt
        out.extend((pi, brick_weight(pi)) for pi in sorted(level, key=_brick_key))
    return out


def _brick_key(pi):
    return sorted(pi)


def brick_weight(removed: Iterable[Brick]) -> Monomial:
    dark = light = 0
    for b in removed:
        if b.dark:
            dark += 1
        else:
            light += 1
    return Monomial(dark, light)


# -- empty rooms ------------------------------------------------------------------

_ROOMS: dict[int, tuple[int, dict[Vertex, Vertex]]] = {}
_ROOM_LOCK = threading.RLock()


def _table_blocks(table: dict[Vertex, Vertex], w: Window) -> dict[Vertex, str]:
    found = {}
    for corner in window_vertices(shrink_top_right(w)):
        st = _block_state(table.get, corner)
        if st is not None:
            found[corner] = st
    return found


def shrink_top_right(w: Window) -> Window:
    return (w[0], w[1], w[2] - 1, w[3] - 1)


def _build_room(n: int, half: int) -> dict[Vertex, Vertex]:
    if n == 1:
        return {v: visible_partner(v, 1) for v in window_vertices(centered_window(half))}
    prev = _room_table(n - 1, half + 1, exact=True)
    c = usual_coloring(n - 1)
    partial: dict[Vertex, Vertex | None] = dict(prev)
    for corner, _ in _table_blocks(prev, centered_window(half + 1)).items():
        if block_parity(corner, c) == ODD:
            for v in block_vertices(corner):
                partial[v] = None
    slid = slide_partner_map(partial, c, window_vertices(centered_window(half)))
    holes = [v for v, p in slid.items() if p is None]
    if holes:
        raise PyramidError(f"sliding eps_{n - 1} left holes at {holes[:4]}")
    return slid


def _room_table(n: int, half: int, exact: bool = False) -> dict[Vertex, Vertex]:
    if n < 1:
        raise PyramidError(f"length must be >= 1, got {n}")
    with _ROOM_LOCK:
        have = _ROOMS.get(n)
        if have is not None and have[0] >= half:
            return have[1]
        if not exact:
            # grow geometrically; shorter rooms are built to the exact size needed
            half = max(half, 2 * have[0] if have else 16)
        table = _build_room(n, half)
        _ROOMS[n] = (half, table)
        return table


def room_partner(n: int, v: Vertex) -> Vertex:
    """Partner of ``v`` in the empty room of length ``n``."""
    have = _ROOMS.get(n)
    if have is not None:
        p = have[1].get(v)
        if p is not None:
            return p
    return _room_table(n, max(abs(v[0]), abs(v[1])) + 2)[v]


def room_has(n: int, d: Dimer) -> bool:
    return room_partner(n, d[0]) == d[1]


_ROOM_BLOCKS: dict[int, dict[Vertex, str]] = {}


def room_blocks(n: int) -> dict[Vertex, str]:
    """Every block (parallel dimer pair) of ``eps_n``: corner -> orientation."""
    if n not in _ROOM_BLOCKS:
        half = n + 8
        table = _room_table(n, half)
        blocks = _table_blocks(table, centered_window(half))
        for corner in blocks:
            if abs(corner[0]) > 3 or abs(corner[1]) > n + 3:
                raise PyramidError(f"eps_{n} has an off-centre block at {corner}")
        _ROOM_BLOCKS[n] = blocks
    return _ROOM_BLOCKS[n]


def auto_window(n: int, max_degree: int) -> Window:
    return centered_window(n + 2 * max_degree + 4)


# -- configurations ---------------------------------------------------------------

def _block_state(partner, corner: Vertex) -> str | None:
    v0, v1, v2, v3 = block_vertices(corner)
    p0 = partner(v0)
    if p0 == v1 and partner(v2) == v3:
        return HORIZONTAL
    if p0 == v2 and partner(v1) == v3:
        return VERTICAL
    return None


@dataclass(frozen=True)
class DimerConfig:
    """A dimer cover of the plane equal to ``eps_n`` away from finitely many dimers.

    ``diff`` holds the dimers present here but absent from ``eps_n``.
    """

    n: int
    diff: frozenset = frozenset()
    window: Window | None = field(default=None, compare=False)

    @cached_property
    def _overlay(self) -> dict[Vertex, Vertex]:
        m = {}
        for u, v in self.diff:
            m[u] = v
            m[v] = u
        return m

    @property
    def coloring(self) -> int:
        return usual_coloring(self.n)

    def partner(self, v: Vertex) -> Vertex:
        p = self._overlay.get(v)
        return p if p is not None else room_partner(self.n, v)

    def removed(self) -> frozenset[Dimer]:
        """Dimers of ``eps_n`` that this configuration lacks."""
        out = set()
        for v in self._overlay:
            d = make_dimer(v, room_partner(self.n, v))
            if d not in self.diff:
                out.add(d)
        return frozenset(out)

    def support(self) -> Window | None:
        """Bounding box of every vertex where this differs from ``eps_n``."""
        return bounding_window(self._overlay)

    def dimers_in(self, w: Window) -> set[Dimer]:
        """Dimers with at least one endpoint in ``w``."""
        return {make_dimer(v, self.partner(v)) for v in window_vertices(w)}

    def block_state(self, corner: Vertex) -> str | None:
        return _block_state(self.partner, corner)

    def validate(self) -> None:
        seen = set()
        for d in self.diff:
            make_dimer(*d)
            if room_has(self.n, d):
                raise PyramidError(f"{d} is listed as a difference but lies in eps_{self.n}")
            for v in d:
                if v in seen:
                    raise PyramidError(f"vertex {v} covered twice")
                seen.add(v)
        for d in self.removed():
            for v in d:
                if v not in self._overlay:
                    raise PyramidError(f"vertex {v} left uncovered")


def empty_room(n: int, window: Window | None = None) -> DimerConfig:
    """``eps_n``.  ``window`` (if given) must hold the central blocks plus a margin."""
    if n < 1:
        raise PyramidError(f"length must be >= 1, got {n}")
    if window is not None:
        need = (-2, -n - 1, 1, n)
        if not (in_window(need[:2], window) and in_window(need[2:], window)):
            raise PyramidError(f"window {window} cannot hold the centre of eps_{n}")
    room_blocks(n)
    return DimerConfig(n, frozenset(), window)


def bricks_to_dimers(removed: Iterable[Brick], window: Window, n: int = 1) -> DimerConfig:
    """Render a removed-brick set as a dimer configuration."""
    removed = check_removed_set(removed, n)
    try:
        inner = shrink(window, 1)
    except LatticeError:
        raise PyramidError(f"window {window} too small") from None
    diff = set()
    for v in window_vertices(window):
        p = visible_partner(v, n, removed)
        if visible_partner(p, n, removed) != v:
            raise PyramidError(f"brick picture is inconsistent at {v}")
        d = make_dimer(v, p)
        if not room_has(n, d):
            if not (in_window(d[0], inner) and in_window(d[1], inner)):
                raise PyramidError(f"window {window} too small for the removed set")
            diff.add(d)
    return DimerConfig(n, frozenset(diff), window)


def candidate_corners(cfg: DimerConfig) -> set[Vertex]:
    """Every corner at which a block of ``cfg`` could sit."""
    out = set(room_blocks(cfg.n))
    for x, y in cfg._overlay:
        out.update(((x, y), (x - 1, y), (x, y - 1), (x - 1, y - 1)))
    return out


def config_blocks(cfg: DimerConfig) -> dict[Vertex, str]:
    out = {}
    for corner in candidate_corners(cfg):
        st = cfg.block_state(corner)
        if st is not None:
            out[corner] = st
    return out


def flip(cfg: DimerConfig, corner: Vertex) -> DimerConfig:
    st = cfg.block_state(corner)
    if st is None:
        raise PyramidError(f"no block at {corner}")
    new = block_dimers(corner, HORIZONTAL if st == VERTICAL else VERTICAL)
    diff = set(cfg.diff).difference(block_dimers(corner, st))
    diff.update(d for d in new if not room_has(cfg.n, d))
    return DimerConfig(cfg.n, frozenset(diff), cfg.window)


def increasing_flips(cfg: DimerConfig) -> list[tuple[Vertex, str]]:
    """Blocks whose flip adds one brick: odd+vertical (q0) or even+horizontal (q1)."""
    c = cfg.coloring
    out = []
    for corner, st in config_blocks(cfg).items():
        parity = block_parity(corner, c)
        if (parity == ODD and st == VERTICAL) or (parity == EVEN and st == HORIZONTAL):
            out.append((corner, parity))
    out.sort()
    return out


MOVE_WEIGHT = {ODD: Q0, EVEN: Q1}


def canonical_key(cfg: DimerConfig) -> bytes:
    """Sorted symmetric difference with ``eps_n``; equal keys iff equal configs."""
    doc = [cfg.n, sorted(map(_dimer_list, cfg.diff)), sorted(map(_dimer_list, cfg.removed()))]
    return json.dumps(doc, separators=(",", ":")).encode()


def _dimer_list(d: Dimer) -> list[list[int]]:
    return [list(d[0]), list(d[1])]


def _expand(item: tuple[DimerConfig, Monomial]) -> list[tuple[DimerConfig, Monomial]]:
    cfg, w = item
    return [(flip(cfg, corner), w * MOVE_WEIGHT[kind]) for corner, kind in increasing_flips(cfg)]


def enumerate_partitions(
    n: int, max_degree: int, threads: int = 1
) -> list[tuple[DimerConfig, Monomial]]:
    """Every length-``n`` pyramid partition of weight degree <= ``max_degree``.

    Breadth-first from ``eps_n`` over brick-adding flips; level ``k`` holds the
    partitions with ``k`` bricks.  Output is sorted by (degree, canonical key),
    whatever the thread count.
    """
    if max_degree < 0:
        raise PyramidError("max_degree must be >= 0")
    window = auto_window(n, max_degree)
    inner = shrink(window, 1)
    level = [(empty_room(n, window), ONE)]
    out = list(level)
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for _ in range(max_degree):
            if pool is not None:
                results = pool.map(_expand, level, chunksize=max(1, len(level) // (4 * threads)))
            else:
                results = map(_expand, level)
            merged: dict[frozenset, tuple[DimerConfig, Monomial]] = {}
            for batch in results:
                for cfg, w in batch:
                    prev = merged.get(cfg.diff)
                    if prev is None:
                        merged[cfg.diff] = (cfg, w)
                    elif prev[1] != w:
                        raise PyramidError(f"two weights {prev[1]} / {w} for one configuration")
            level = sorted(merged.values(), key=lambda t: canonical_key(t[0]))
            out.extend(level)
    finally:
        if pool is not None:
            pool.shutdown()
    for cfg, _ in out:
        for d in cfg.diff:
            if not (in_window(d[0], inner) and in_window(d[1], inner)):
                raise PyramidError(f"configuration reaches the window boundary at {d}")
    return out


def partition_series(n: int, max_degree: int, threads: int = 1) -> TruncatedSeries:
    """Brute-force ``Z(n)`` truncated to total degree ``max_degree``."""
    return TruncatedSeries.from_monomials(
        (w for _, w in enumerate_partitions(n, max_degree, threads)), max_degree
    )


def iter_configs(items: Iterable[tuple[DimerConfig, Monomial]]) -> Iterator[DimerConfig]:
    for cfg, _ in items:
        yield cfg


__all__ = [
    "Brick", "DimerConfig", "PyramidError", "apex_bricks", "auto_window", "brick_weight",
    "bricks_above", "bricks_below", "bricks_to_dimers", "canonical_key", "check_removed_set",
    "config_blocks", "empty_room", "enumerate_brick_partitions", "enumerate_partitions",
    "flip", "increasing_flips", "is_brick", "partition_series", "room_blocks", "room_has",
    "room_partner", "visible_partner", "LatticeError",
]

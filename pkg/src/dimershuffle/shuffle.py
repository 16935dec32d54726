"""Dimer shuffling: delete blocks, slide, create.

A :class:`DeficientConfig` is a configuration with some 2x2 blocks left
uncovered.  All missing blocks share one parity under the recorded coloring.
Sliding an odd-deficient config of length ``n`` gives an even-deficient
config of length ``n + 1``.  Sliding that again gives back the original,
so :func:`slide` runs in either direction: it picks the direction from the
coloring under which the missing blocks are odd.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .lattice import (
    EVEN,
    HORIZONTAL,
    ODD,
    VERTICAL,
    Vertex,
    Window,
    block_dimers,
    block_parity,
    block_vertices,
    bounding_window,
    grow,
    make_dimer,
    slide_partner_map,
    usual_coloring,
    window_vertices,
)
from .pyramid import DimerConfig, PyramidError, config_blocks, room_has, room_partner


class ShuffleError(ValueError):
    pass


@dataclass(frozen=True)
class DeficientConfig:
    """A length-``n`` configuration with ``missing`` blocks left uncovered.

    ``diff`` holds the dimers present here but absent from ``eps_n``; every
    missing block has parity ``parity`` under ``coloring``.
    """

    n: int
    coloring: int
    parity: str
    diff: frozenset = frozenset()
    missing: frozenset = frozenset()
    window: Window | None = field(default=None, compare=False)

    @cached_property
    def _overlay(self) -> dict[Vertex, Vertex]:
        m = {}
        for u, v in self.diff:
            m[u] = v
            m[v] = u
        return m

    @cached_property
    def _holes(self) -> frozenset[Vertex]:
        return frozenset(v for c in self.missing for v in block_vertices(c))

    @property
    def m(self) -> int:
        return len(self.missing)

    @property
    def odd_coloring(self) -> int:
        """The coloring under which the missing blocks are odd."""
        return self.coloring if self.parity == ODD else 1 - self.coloring

    def partner(self, v: Vertex) -> Vertex | None:
        p = self._overlay.get(v)
        if p is not None:
            return p
        if v in self._holes:
            return None
        return room_partner(self.n, v)

    def support(self) -> Window | None:
        return bounding_window(list(self._overlay) + list(self._holes))

    def validate(self) -> None:
        seen: set[Vertex] = set()
        for d in self.diff:
            make_dimer(*d)
            if room_has(self.n, d):
                raise ShuffleError(f"{d} is listed as a difference but lies in eps_{self.n}")
            seen.update(d)
        if len(seen) != 2 * len(self.diff):
            raise ShuffleError("difference dimers overlap")
        if seen & self._holes:
            raise ShuffleError("a dimer covers a missing block")
        if len(self._holes) != 4 * len(self.missing):
            raise ShuffleError("missing blocks overlap")
        for corner in self.missing:
            if block_parity(corner, self.coloring) != self.parity:
                raise ShuffleError(f"missing block {corner} is not {self.parity}")
        # a vertex losing its room partner must be covered by a difference dimer or a hole
        for v in seen | self._holes:
            p = room_partner(self.n, v)
            if make_dimer(v, p) not in self.diff and p not in seen and p not in self._holes:
                raise ShuffleError(f"vertex {p} left uncovered")

    def key(self) -> tuple:
        return (self.n, self.coloring, self.parity, tuple(sorted(self.diff)), tuple(sorted(self.missing)))


def delete_blocks(cfg: DimerConfig, parity: str = ODD, coloring: int | None = None) -> DeficientConfig:
    """Remove every block of ``cfg`` with the given parity."""
    c = cfg.coloring if coloring is None else coloring
    corners = sorted(k for k in config_blocks(cfg) if block_parity(k, c) == parity)
    diff = set(cfg.diff)
    for corner in corners:
        diff.difference_update(block_dimers(corner, cfg.block_state(corner)))
    return DeficientConfig(cfg.n, c, parity, frozenset(diff), frozenset(corners), cfg.window)


def _central_window(n: int) -> Window:
    return (-2, -n - 2, 1, n + 1)


def slide(d: DeficientConfig) -> DeficientConfig:
    """Replace every dimer by the other dimer of its odd block.

    Forward when the missing blocks are odd under the usual coloring of
    ``d.n`` (result has length ``n + 1``), backward otherwise.
    """
    c = d.odd_coloring
    if c == usual_coloring(d.n):
        target, out_parity = d.n + 1, EVEN
    else:
        target, out_parity = d.n - 1, ODD
        if target < 1:
            raise ShuffleError("cannot slide below length 1")
    box = _central_window(max(d.n, target))
    sup = d.support()
    if sup is not None:
        box = (min(box[0], sup[0]), min(box[1], sup[1]), max(box[2], sup[2]), max(box[3], sup[3]))
    inner = grow(box, 2)
    known = {v: d.partner(v) for v in window_vertices(grow(inner, 1))}
    slid = slide_partner_map(known, c, window_vertices(inner))

    diff = set()
    holes = set()
    for v, p in slid.items():
        if p is None:
            holes.add(v)
        elif room_partner(target, v) != p:
            diff.add(make_dimer(v, p))
    for u, v in diff:
        if not (inner[0] < u[0] and v[0] < inner[2] and inner[1] < u[1] and v[1] < inner[3]):
            raise ShuffleError(f"slid difference reaches the working boundary at {(u, v)}")
    missing = set()
    for v in sorted(holes):
        if v not in holes:
            continue
        quad = block_vertices(v)
        if not all(u in holes for u in quad):
            raise ShuffleError(f"uncovered vertices near {v} do not form a block")
        holes.difference_update(quad)
        missing.add(v)
    out = DeficientConfig(
        target, usual_coloring(target), out_parity, frozenset(diff), frozenset(missing), d.window
    )
    for corner in missing:
        if block_parity(corner, out.coloring) != out_parity:
            raise ShuffleError(f"slid config misses a block of the wrong parity at {corner}")
    return out


def fillings(d: DeficientConfig) -> Iterator[tuple[DimerConfig, tuple[str, ...]]]:
    """All ``2**m`` ways to fill the missing blocks.

    Order is by sorted corner then orientation (vertical first); the choice
    tuple gives the orientation used for each corner in sorted order.
    """
    corners = sorted(d.missing)
    for choice in itertools.product((VERTICAL, HORIZONTAL), repeat=len(corners)):
        diff = set(d.diff)
        for corner, orient in zip(corners, choice):
            diff.update(e for e in block_dimers(corner, orient) if not room_has(d.n, e))
        yield DimerConfig(d.n, frozenset(diff), d.window), choice


def fill(d: DeficientConfig, choice: tuple[str, ...]) -> DimerConfig:
    corners = sorted(d.missing)
    if len(choice) != len(corners):
        raise ShuffleError(f"need {len(corners)} fill choices, got {len(choice)}")
    diff = set(d.diff)
    for corner, orient in zip(corners, choice):
        if orient not in (VERTICAL, HORIZONTAL):
            raise ShuffleError(f"bad orientation {orient!r}")
        diff.update(e for e in block_dimers(corner, orient) if not room_has(d.n, e))
    return DimerConfig(d.n, frozenset(diff), d.window)


def shuffle_formal_sum(cfg: DimerConfig) -> Iterator[DimerConfig]:
    """Delete odd blocks, slide, then yield every filling."""
    for out, _ in fillings(slide(delete_blocks(cfg, ODD))):
        yield out


__all__ = [
    "DeficientConfig", "ShuffleError", "delete_blocks", "fill", "fillings", "shuffle_formal_sum",
    "slide", "PyramidError",
]

"""Edge weights ``w_a`` and their transport under sliding.

``w_0`` is pinned down by three rules.  Vertical edges weigh 1.  In every
odd block the two horizontal edges multiply to ``q0``, and in every even block
they multiply to ``1/q1``.  In rows -1 and 0, the northbound horizontal edge
of each column pair weighs 1.  Each later field is the push-forward of the
one before it: ``w_{a+1}(S(e)) = w_a(e)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .lattice import (
    HORIZONTAL,
    ODD,
    VERTICAL,
    Dimer,
    Window,
    block_dimers,
    block_parity,
    in_window,
    is_black,
    is_horizontal,
    partner_in_odd_block,
    shrink,
    usual_coloring,
    window_edges,
)
from .pyramid import DimerConfig
from .series import ONE, Q0, Q1, Factor, Monomial, TruncatedSeries, product_expand
from .shuffle import DeficientConfig, delete_blocks, fill, slide


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class WeightField:
    """``w_a`` on the edges of ``window``, weighting configurations of length ``n + level``."""

    n: int
    level: int
    window: Window
    weights: Mapping[Dimer, Monomial]

    @property
    def length(self) -> int:
        return self.n + self.level

    @property
    def coloring(self) -> int:
        return usual_coloring(self.length)

    def __getitem__(self, e: Dimer) -> Monomial:
        try:
            return self.weights[e]
        except KeyError:
            raise WeightError(f"edge {e} lies outside the field window {self.window}") from None


def odd_block_product(a: int) -> Monomial:
    """Product of the horizontal weights of an odd block under ``w_a``."""
    return Q0 ** (a + 1) * Q1 ** a


def even_block_product(a: int) -> Monomial:
    return Q0 ** a * Q1 ** (a - 1)


def build_w0_field(n: int, window: Window) -> WeightField:
    c = usual_coloring(n)
    xmin, ymin, xmax, ymax = window
    lo, hi = min(ymin, -1), max(ymax, 0)
    weights: dict[Dimer, Monomial] = {}
    for x in range(xmin, xmax):
        # the block (x, y) holds horizontal edges at rows y and y + 1
        prod = {y: Q0 if block_parity((x, y), c) == ODD else ONE / Q1 for y in range(lo - 1, hi + 1)}
        y0 = -1 if is_black((x, 0), c) else 0
        h = {y0: ONE}
        for y in range(y0, hi):
            h[y + 1] = prod[y] / h[y]
        for y in range(y0, lo, -1):
            h[y - 1] = prod[y - 1] / h[y]
        for y in range(ymin, ymax + 1):
            weights[((x, y), (x + 1, y))] = h[y]
    for e in window_edges(window):
        if not is_horizontal(e):
            weights[e] = ONE
    return WeightField(n, 0, window, weights)


def transport_field(f: WeightField) -> WeightField:
    """``w_{a+1}``: each edge takes the weight of its preimage under sliding.

    The window shrinks by one ring so that every preimage is known.
    """
    c = f.coloring
    window = shrink(f.window, 1)
    weights = {}
    for e in window_edges(window):
        pre = partner_in_odd_block(e, c)
        if in_window(pre[0], f.window) and in_window(pre[1], f.window):
            weights[e] = f.weights[pre]
    return WeightField(f.n, f.level + 1, window, weights)


def field_at_level(n: int, level: int, window: Window) -> WeightField:
    """``w_level`` on ``window``; ``w_0`` is built on a window grown by ``level``."""
    f = build_w0_field(n, (window[0] - level, window[1] - level, window[2] + level, window[3] + level))
    for _ in range(level):
        f = transport_field(f)
    return f


def weight_under_field(cfg: DimerConfig | DeficientConfig, f: WeightField) -> Monomial:
    """Weight of ``cfg`` relative to the empty room.

    Deficient configs are filled with vertical pairs first.
    """
    if isinstance(cfg, DeficientConfig):
        cfg = fill(cfg, (VERTICAL,) * cfg.m)
    if cfg.n != f.length:
        raise WeightError(f"a level-{f.level} field weights length {f.length}, not {cfg.n}")
    w = ONE
    for e in cfg.diff:
        if is_horizontal(e):
            w = w * f[e]
    for e in cfg.removed():
        if is_horizontal(e):
            w = w / f[e]
    return w


def weight_w0_normalized(cfg: DimerConfig, f: WeightField) -> Monomial:
    if f.level != 0:
        raise WeightError("expected a level-0 field")
    return weight_under_field(cfg, f)


def check_block_products(
    f: WeightField, window: Window | None = None
) -> list[tuple[tuple[int, int], Monomial, Monomial]]:
    """Blocks in ``window`` violating the block-product law at ``f``'s level: (corner, got, want)."""
    bad = []
    a = f.level
    xmin, ymin, xmax, ymax = window or f.window
    for x in range(xmin, xmax):
        for y in range(ymin, ymax):
            want = odd_block_product(a) if block_parity((x, y), f.coloring) == ODD else even_block_product(a)
            lo, hi = block_dimers((x, y), HORIZONTAL)
            got = f[lo] * f[hi]
            if got != want:
                bad.append(((x, y), got, want))
    return bad


# -- weighted propagation through shuffling ----------------------------------

Item = tuple[DeficientConfig, Monomial]


def seed_items(partitions: Iterable[tuple[DimerConfig, Monomial]]) -> list[Item]:
    """Odd-deficient level-0 items from weighted partitions.

    Removing a horizontal odd block divides the weight by ``q0``.
    """
    merged: dict[tuple, Item] = {}
    for cfg, w in partitions:
        d = delete_blocks(cfg)
        for corner in d.missing:
            if cfg.block_state(corner) == HORIZONTAL:
                w = w / odd_block_product(0)
        _merge(merged, d, w)
    return [merged[k] for k in sorted(merged)]


def _merge(merged: dict, d: DeficientConfig, w: Monomial) -> None:
    k = d.key()
    prev = merged.get(k)
    if prev is None:
        merged[k] = (d, w)
    elif prev[1] != w:
        raise WeightError(f"inconsistent weights {prev[1]} and {w} for one deficient config")


def propagate_weighted(items: Iterable[Item], level: int, max_degree: int) -> list[Item]:
    """One shuffle step on weighted odd-deficient items at ``level``.

    Fillings of total degree above ``max_degree`` are pruned; every fill
    factor has positive degree, so nothing below the bound is lost.
    """
    a1 = level + 1
    grow_factor = even_block_product(a1)
    shrink_factor = odd_block_product(a1)
    step = grow_factor.degree
    merged: dict[tuple, Item] = {}
    for d, w in items:
        if w.degree > max_degree:
            continue
        s = slide(d)
        corners = sorted(s.missing)
        budget = (max_degree - w.degree) // step
        for h in range(min(budget, len(corners)) + 1):
            for chosen in itertools.combinations(corners, h):
                choice = tuple(HORIZONTAL if k in chosen else VERTICAL for k in corners)
                cfg = fill(s, choice)
                wf = w * grow_factor ** h
                nd = delete_blocks(cfg)
                for corner in nd.missing:
                    if cfg.block_state(corner) == HORIZONTAL:
                        wf = wf / shrink_factor
                _merge(merged, nd, wf)
    return [merged[k] for k in sorted(merged)]


def level_sum(items: Iterable[Item], level: int, max_degree: int) -> TruncatedSeries:
    """``sum (1 + q0^(a+1) q1^a)^m w`` over items: the level-``a`` partition sum."""
    f = odd_block_product(level)
    acc: dict[tuple[int, int], int] = {}
    for d, w in items:
        if w.degree > max_degree:
            continue
        term = product_expand([Factor(f, d.m)], max_degree) if d.m else TruncatedSeries.one(max_degree)
        for k, c in term.scale(w).terms():
            acc[k] = acc.get(k, 0) + c
    return TruncatedSeries(acc, max_degree)


__all__ = [
    "WeightError", "WeightField", "build_w0_field", "check_block_products", "even_block_product",
    "field_at_level", "level_sum", "odd_block_product", "propagate_weighted", "seed_items",
    "transport_field", "weight_under_field", "weight_w0_normalized",
]

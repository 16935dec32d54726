"""Young diagrams, plane partitions with one leg, and super-rigid triples.

Cells and boxes are 0-based.  A cell ``(i, j)`` of a diagram lies in row
``i`` and column ``j``.  The leg of shape ``lam`` is the set of boxes
``(i, j, z)`` for every cell ``(i, j)`` and every ``z >= 0``; a plane
partition asymptotic to ``lam`` stores only its boxes off the leg.

Series in this module use the ``(z, q)`` variables; one-variable series in
``q`` keep the ``z`` exponent at 0.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Iterator

from .lattice import Dimer, Vertex
from .series import (
    ONE,
    Q,
    Q1,
    ZQ_VARS,
    Factor,
    Monomial,
    TruncatedSeries,
    Truncation,
    macmahon,
    product_expand,
    series_div_unit,
)

Box = tuple[int, int, int]
Cell = tuple[int, int]


class SolidError(ValueError):
    pass


# -- Young diagrams -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class YoungDiagram:
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(r <= 0 for r in rows):
            raise SolidError(f"rows must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise SolidError(f"rows must weakly decrease: {rows}")

    @classmethod
    def from_cells(cls, cells: Iterable[Cell]) -> YoungDiagram:
        cells = set(cells)
        counts = Counter(i for i, _ in cells)
        rows = tuple(counts[i] for i in range(len(counts)))
        lam = cls(rows)
        if set(lam.cells()) != cells:
            raise SolidError(f"{sorted(cells)} is not a Young diagram")
        return lam

    @property
    def size(self) -> int:
        return sum(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def cells(self) -> list[Cell]:
        return [(i, j) for i, r in enumerate(self.rows) for j in range(r)]

    @cached_property
    def cell_set(self) -> frozenset[Cell]:
        return frozenset(self.cells())

    def __contains__(self, cell) -> bool:
        return cell in self.cell_set

    def transpose(self) -> YoungDiagram:
        if not self.rows:
            return self
        return YoungDiagram(tuple(sum(1 for r in self.rows if r > j) for j in range(self.rows[0])))

    def binom2(self) -> int:
        """``sum_i C(lam_i, 2)``."""
        return sum(comb(r, 2) for r in self.rows)

    def n_statistic(self) -> int:
        """``n(lam) = sum_i (i - 1) lam_i`` with rows counted from 1."""
        return sum(i * r for i, r in enumerate(self.rows))

    def hook(self, cell: Cell) -> int:
        i, j = cell
        arm = self.rows[i] - j - 1
        leg = sum(1 for r in self.rows[i + 1:] if r > j)
        return arm + leg + 1

    def content_sum(self) -> int:
        """``sum (i + j + 1)`` over the cells."""
        return sum(i + j + 1 for i, j in self.cells())

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.rows)) + ")" if self.rows else "()"


def enumerate_young(max_size: int) -> Iterator[YoungDiagram]:
    """Every diagram with at most ``max_size`` cells, by size then reverse-lex rows."""
    if max_size < 0:
        raise SolidError("max_size must be >= 0")

    def parts(n: int, cap: int) -> Iterator[tuple[int, ...]]:
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in parts(n - first, first):
                yield (first,) + rest

    for size in range(max_size + 1):
        for rows in parts(size, size):
            yield YoungDiagram(rows)


def one_var_trunc(degree: int) -> Truncation:
    return Truncation.per_variable(0, degree)


def schur_principal(lam: YoungDiagram, degree: int, trunc: Truncation | None = None) -> TruncatedSeries:
    """``s_lam(1, q, q^2, ...)`` as ``q^n(lam) / prod (1 - q^hook)``."""
    trunc = trunc or one_var_trunc(degree)
    hooks = sorted(lam.hook(c) for c in lam.cells())
    denom = product_expand([Factor(Monomial(0, h), 1, -1) for h in hooks], trunc, ZQ_VARS)
    num = TruncatedSeries({(0, lam.n_statistic()): 1}, trunc, ZQ_VARS)
    return series_div_unit(num, denom)


def ssyt_count_series(lam: YoungDiagram, degree: int) -> TruncatedSeries:
    """Brute-force ``s_lam(1, q, q^2, ...)``: tableaux with entries ``0..degree`` weighted by entry sum."""
    cells = lam.cells()
    acc: dict[tuple[int, int], int] = {}

    def place(k: int, filled: dict[Cell, int], total: int) -> None:
        if total > degree:
            return
        if k == len(cells):
            acc[(0, total)] = acc.get((0, total), 0) + 1
            return
        i, j = cells[k]
        lo = 0
        if j > 0:
            lo = max(lo, filled[(i, j - 1)])
        if i > 0:
            lo = max(lo, filled[(i - 1, j)] + 1)
        for e in range(lo, degree + 1):
            filled[(i, j)] = e
            place(k + 1, filled, total + e)
        filled.pop((i, j), None)

    place(0, {}, 0)
    return TruncatedSeries(acc, one_var_trunc(degree), ZQ_VARS)


# -- plane partitions with one leg ---------------------------------------------

@dataclass(frozen=True)
class PlanePartition:
    """A 3D partition asymptotic to ``lam``; ``extra`` are its boxes off the leg."""

    lam: YoungDiagram = field(default_factory=YoungDiagram)
    extra: frozenset = frozenset()

    @property
    def size(self) -> int:
        return len(self.extra)

    def contains(self, box: Box) -> bool:
        x, y, z = box
        if min(box) < 0:
            return False
        return (x, y) in self.lam or box in self.extra

    def validate(self) -> None:
        for b in self.extra:
            if len(b) != 3 or min(b) < 0:
                raise SolidError(f"bad box {b}")
            if (b[0], b[1]) in self.lam:
                raise SolidError(f"box {b} lies on the leg")
            for k in range(3):
                lower = tuple(c - (k == t) for t, c in enumerate(b))
                if lower[k] >= 0 and not self.contains(lower):
                    raise SolidError(f"box {b} is present but {lower} is not")

    def sorted_extra(self) -> list[Box]:
        return sorted(self.extra, key=lambda b: (sum(b), b))


def _addable(lam: YoungDiagram, extra: frozenset) -> list[Box]:
    pp = PlanePartition(lam, extra)
    cands = set()
    if not lam.rows:
        cands.add((0, 0, 0))
    for x, y in lam.cells():
        cands.update(((x + 1, y, 0), (x, y + 1, 0)))
    for x, y, z in extra:
        cands.update(((x + 1, y, z), (x, y + 1, z), (x, y, z + 1)))
    out = []
    for b in cands:
        if pp.contains(b):
            continue
        if all(b[k] == 0 or pp.contains(tuple(c - (k == t) for t, c in enumerate(b))) for k in range(3)):
            out.append(b)
    return sorted(out)


def enumerate_plane_partitions(lam: YoungDiagram, max_extra: int) -> list[PlanePartition]:
    """Every plane partition asymptotic to ``lam`` with at most ``max_extra`` extra boxes."""
    if max_extra < 0:
        raise SolidError("max_extra must be >= 0")
    level = [frozenset()]
    out = [PlanePartition(lam, frozenset())]
    for _ in range(max_extra):
        nxt = {e | {b} for e in level for b in _addable(lam, e)}
        level = sorted(nxt, key=lambda e: sorted(e))
        out.extend(PlanePartition(lam, e) for e in level)
    return out


def plane_partition_counts(lam: YoungDiagram, max_extra: int) -> list[int]:
    counts = [0] * (max_extra + 1)
    for p in enumerate_plane_partitions(lam, max_extra):
        counts[p.size] += 1
    return counts


def one_leg_sum(lam: YoungDiagram, degree: int) -> TruncatedSeries:
    """Brute-force ``sum q^|pi|`` over plane partitions asymptotic to ``lam``."""
    counts = plane_partition_counts(lam, degree)
    return TruncatedSeries({(0, k): c for k, c in enumerate(counts)}, one_var_trunc(degree), ZQ_VARS)


def one_leg_closed_form(lam: YoungDiagram, degree: int, sign: int = -1) -> TruncatedSeries:
    """``M(q) q^(sign * binom(lam, 2)) s_{lam^t}(q)``.

    ``sign = -1`` is the normalization that matches counting boxes off the
    leg.  ``sign = +1`` is kept so the other sign can be tested and shown wrong.
    """
    shift = sign * lam.binom2()
    # evaluate at a higher degree so a negative shift leaves nothing out
    wide = degree + max(0, -shift)
    t = one_var_trunc(wide)
    s = macmahon(Monomial(0, 1), t, vars=ZQ_VARS) * schur_principal(lam.transpose(), wide, t)
    out = {}
    for (a, b), c in s:
        e = b + shift
        if e < 0:
            raise SolidError(f"closed form has a negative power q^{e}")
        out[(a, e)] = c
    return TruncatedSeries(out, one_var_trunc(degree), ZQ_VARS)


# -- super-rigid triples --------------------------------------------------------

@dataclass(frozen=True)
class SuperRigid:
    """A triple ``(pi0, lam, pi_inf)`` of partitions sharing the leg ``lam``."""

    lam: YoungDiagram = field(default_factory=YoungDiagram)
    pi0: frozenset = frozenset()
    pi_inf: frozenset = frozenset()

    def parts(self) -> tuple[PlanePartition, PlanePartition]:
        return PlanePartition(self.lam, self.pi0), PlanePartition(self.lam, self.pi_inf)

    def validate(self) -> None:
        for p in self.parts():
            p.validate()

    def N(self, n: int = 1) -> int:
        return len(self.pi0) + len(self.pi_inf) + (n - 1) * self.lam.size + self.lam.content_sum()

    def weight(self, n: int = 1) -> Monomial:
        """``z^|lam| q^N(n)`` as a ``(z, q)`` monomial."""
        return Monomial(self.lam.size, self.N(n))

    def key(self) -> tuple:
        return (self.lam.size, self.lam.rows, sorted(self.pi0), sorted(self.pi_inf))


def enumerate_superrigid(max_N: int, n: int = 1) -> list[tuple[SuperRigid, Monomial]]:
    """Every triple with ``N(n) <= max_N``, weighted ``z^|lam| q^N(n)``."""
    if max_N < 0 or n < 1:
        raise SolidError("need max_N >= 0 and n >= 1")
    out = []
    for lam in enumerate_young(max_N):
        base = (n - 1) * lam.size + lam.content_sum()
        if base > max_N:
            continue
        room = max_N - base
        pps = enumerate_plane_partitions(lam, room)
        for a in pps:
            for b in pps:
                if a.size + b.size <= room:
                    sr = SuperRigid(lam, a.extra, b.extra)
                    out.append((sr, sr.weight(n)))
    return out


def superrigid_series(max_N: int, z_degree: int, n: int = 1) -> TruncatedSeries:
    """``sum z^|lam| q^N`` over super-rigid triples, bounds ``(z_degree, max_N)``."""
    acc: dict[tuple[int, int], int] = {}
    for _, w in enumerate_superrigid(max_N, n):
        acc[w.key] = acc.get(w.key, 0) + 1
    return TruncatedSeries(acc, Truncation.per_variable(z_degree, max_N), ZQ_VARS)


def cauchy_sum(n: int, degree: int) -> TruncatedSeries:
    """``sum_lam z^|lam| q^(n|lam|) s_{lam^t}(q) s_lam(q)`` with bounds ``(degree, degree)``."""
    t = Truncation.per_variable(degree, degree)
    total = TruncatedSeries.zero(t, ZQ_VARS)
    for lam in enumerate_young(degree // n):
        term = schur_principal(lam.transpose(), degree, t) * schur_principal(lam, degree, t)
        total = total + term.scale(Monomial(lam.size, n * lam.size))
    return total


def cauchy_product(n: int, degree: int) -> TruncatedSeries:
    """``prod_{i,j>=1} (1 + z q^(i+j+n-2))`` with bounds ``(degree, degree)``."""
    t = Truncation.per_variable(degree, degree)
    factors = [Factor(Monomial(1, m), m - n + 1) for m in range(n, degree + 1)]
    return product_expand(factors, t, ZQ_VARS)


def cauchy_substituted(n: int, degree: int) -> TruncatedSeries:
    """``prod_k (1 + q0^k q1^(k+1))^max(k-n+1, 0)``, total degree ``<= degree``."""
    factors = [Factor(Monomial(k, k + 1), k - n + 1) for k in range(n, degree + 1)]
    return product_expand(factors, degree)


# -- moves --------------------------------------------------------------------

A_MOVE, B_MOVE, C_MOVE = "a", "b", "c"


def move_sequence(sr: SuperRigid, n: int = 1) -> list[tuple[str, Monomial]]:
    """Elementary moves building ``sr`` from the empty triple, with weights in ``(q0, q1)``.

    Leg cells come first (``q1 q^(i+j+n)`` each), then the boxes of ``pi0``,
    then those of ``pi_inf`` (``q`` each).  Every intermediate state is checked.
    """
    moves: list[tuple[str, Monomial]] = []
    cells = sorted(sr.lam.cells(), key=lambda c: (c[0] + c[1], c))
    for k, (i, j) in enumerate(cells, 1):
        YoungDiagram.from_cells(cells[:k])
        moves.append((A_MOVE, Q1 * Q ** (i + j + n)))
    for kind, boxes in ((B_MOVE, sr.pi0), (C_MOVE, sr.pi_inf)):
        ordered = sorted(boxes, key=lambda b: (sum(b), b))
        for k in range(1, len(ordered) + 1):
            PlanePartition(sr.lam, frozenset(ordered[:k])).validate()
            moves.append((kind, Q))
    return moves


def move_product(moves: Iterable[tuple[str, Monomial]]) -> Monomial:
    w = ONE
    for _, m in moves:
        w = w * m
    return w


def substituted_weight(sr: SuperRigid, n: int = 1) -> Monomial:
    """``z^|lam| q^N(n)`` under ``z -> q1, q -> q0 q1``."""
    return Q1 ** sr.lam.size * Q ** sr.N(n)


# -- rendering onto brickwork half-planes -------------------------------------
#
# A plane partition cut off at a box of side B is a stack of cubes.  Seen
# along (1, 1, 1), its visible faces form a lozenge tiling of a hexagon.
# Each lozenge is a dimer between an up-triangle A(u, v) and a down-triangle
# B(u, v) of the triangular lattice.  Sending A(u, v) to the square-lattice
# vertex (v - u, u + v) and B(u, v) to (v - u + 1, u + v) turns the honeycomb
# into a brickwork sublattice of Z^2.  Top faces become horizontal rungs and
# side faces become vertical dimers.  The leg points toward smaller rows.

@dataclass(frozen=True)
class HalfPlaneConfig:
    side: str
    box: int
    dimers: frozenset
    seam: frozenset  # rung positions of the leg's cap at height B, unmirrored


def _A(u: int, v: int, off: int) -> Vertex:
    return (v - u, u + v + off)


def _B(u: int, v: int, off: int) -> Vertex:
    return (v - u + 1, u + v + off)


def _heights(pp: PlanePartition, B: int) -> dict[Cell, int]:
    h = {}
    for x in range(B):
        for y in range(B):
            h[(x, y)] = B if (x, y) in pp.lam else 0
    for x, y, z in pp.extra:
        if max(x, y, z) >= B - 1:
            raise SolidError(f"box {(x, y, z)} does not fit a render window of {B}")
        h[(x, y)] = max(h[(x, y)], z + 1)
    for x, y in pp.lam.cells():
        if max(x, y) >= B - 1:
            raise SolidError(f"leg cell {(x, y)} does not fit a render window of {B}")
    return h


def render_plane_partition(pp: PlanePartition, B: int) -> tuple[frozenset, frozenset]:
    """Brickwork dimers of the lozenge tiling of ``pp`` cut at side ``B``; also its seam."""
    h = _heights(pp, B)
    off = 2 * B  # shift rows so the tiling sits in rows >= 0

    def H(x: int, y: int) -> int:
        if x < 0 or y < 0:
            return B
        if x >= B or y >= B:
            return 0
        return h[(x, y)]

    dimers: set[Dimer] = set()
    seam = set()
    for x in range(B):
        for y in range(B):
            z = H(x, y)
            p = (x - z, y - z)
            d = (_A(*p, off), _B(*p, off))
            dimers.add(d)
            if z == B:
                seam.add(d[0])
    for x in range(B + 1):
        for y in range(B):
            for z in range(H(x, y), H(x - 1, y)):
                s = (x - z - 1, y - z)
                a, b = _A(*s, off), _B(s[0], s[1] - 1, off)
                dimers.add((b, a))
    for x in range(B):
        for y in range(B + 1):
            for z in range(H(x, y), H(x, y - 1)):
                s = (x - z - 1, y - z - 1)
                a, b = _A(*s, off), _B(s[0] + 1, s[1], off)
                dimers.add((a, b))
    covered = [v for d in dimers for v in d]
    if len(covered) != len(set(covered)) or len(dimers) != 3 * B * B:
        raise SolidError("lozenge rendering is not a perfect matching")
    return frozenset(dimers), frozenset(seam)


def _mirror(d: Dimer) -> Dimer:
    (x0, y0), (x1, y1) = d
    a, b = (x0, -y0 - 1), (x1, -y1 - 1)
    return (a, b) if a < b else (b, a)


def phi_render_halfplanes(sr: SuperRigid, window: int) -> tuple[HalfPlaneConfig, HalfPlaneConfig]:
    """``pi0`` drawn in the upper half-plane and ``pi_inf`` mirrored into the lower one."""
    if window < 2:
        raise SolidError("render window must be at least 2")
    pi0, pinf = sr.parts()
    up, seam_up = render_plane_partition(pi0, window)
    lo, seam_lo = render_plane_partition(pinf, window)
    return (
        HalfPlaneConfig("upper", window, up, seam_up),
        HalfPlaneConfig("lower", window, frozenset(map(_mirror, lo)), seam_lo),
    )


__all__ = [
    "A_MOVE", "B_MOVE", "C_MOVE", "HalfPlaneConfig", "PlanePartition", "SolidError", "SuperRigid",
    "YoungDiagram", "cauchy_product", "cauchy_substituted", "cauchy_sum", "enumerate_plane_partitions",
    "enumerate_superrigid", "enumerate_young", "move_product", "move_sequence", "one_leg_closed_form",
    "one_leg_sum", "phi_render_halfplanes", "plane_partition_counts", "render_plane_partition",
    "schur_principal", "ssyt_count_series", "substituted_weight", "superrigid_series",
]

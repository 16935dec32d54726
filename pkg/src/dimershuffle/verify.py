"""Identity checks: brute-force enumeration against closed forms.

Each check returns a :class:`CheckReport`.  Series checks fill ``lhs`` and
``rhs``; property checks count ``violations`` out of ``checked`` cases.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .lattice import centered_window
from .pyramid import enumerate_partitions, partition_series
from .series import (
    TruncatedSeries,
    Truncation,
    ZQ_VARS,
    formula_Z,
    formula_Zx,
    macmahon,
    Monomial,
    pyramid_leg_factor,
    shuffle_product,
    substitute_zq,
)
from .serialize import series_to_json
from .shuffle import delete_blocks, slide
from .solid import (
    YoungDiagram,
    cauchy_product,
    cauchy_substituted,
    cauchy_sum,
    enumerate_superrigid,
    move_product,
    move_sequence,
    one_leg_closed_form,
    one_leg_sum,
    phi_render_halfplanes,
    plane_partition_counts,
    substituted_weight,
    superrigid_series,
)
from .weights import build_w0_field, check_block_products, level_sum, propagate_weighted, seed_items, transport_field


@dataclass
class CheckReport:
    check_id: str
    parameters: dict[str, Any]
    equal: bool
    lhs: TruncatedSeries | None = None
    rhs: TruncatedSeries | None = None
    first_discrepancy: tuple | None = None
    checked: int | None = None
    violations: int | None = None
    examples: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self, include_elapsed: bool = False) -> dict:
        doc: dict[str, Any] = {
            "check_id": self.check_id,
            "parameters": self.parameters,
            "equal": self.equal,
        }
        if self.lhs is not None:
            doc["lhs"] = series_to_json(self.lhs)
            doc["rhs"] = series_to_json(self.rhs)
            fd = self.first_discrepancy
            doc["first_discrepancy"] = (
                None if fd is None else {"monomial": list(fd[0]), "lhs": str(fd[1]), "rhs": str(fd[2])}
            )
        if self.checked is not None:
            doc["checked"] = self.checked
            doc["violations"] = self.violations
            doc["examples"] = [str(e) for e in self.examples]
        if include_elapsed:
            doc["elapsed"] = round(self.elapsed, 3)
        return doc

    def summary(self) -> str:
        status = "PASS" if self.equal else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        line = f"{status} {self.check_id} {params}".rstrip()
        if self.checked is not None:
            line += f" ({self.violations} violations in {self.checked} cases)"
        elif self.first_discrepancy is not None:
            (e0, e1), a, b = self.first_discrepancy
            line += f" (first discrepancy at {self.lhs.vars[0]}^{e0} {self.lhs.vars[1]}^{e1}: {a} vs {b})"
        return line + f" [{self.elapsed:.2f}s]"


def compare(check_id: str, parameters: dict, lhs: TruncatedSeries, rhs: TruncatedSeries) -> CheckReport:
    fd = lhs.first_difference(rhs)
    return CheckReport(check_id, parameters, fd is None, lhs, rhs, fd)


def _timed(fn: Callable[..., CheckReport]) -> Callable[..., CheckReport]:
    def run(*args, **kwargs) -> CheckReport:
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.elapsed = time.perf_counter() - t0
        return rep

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _property(check_id: str, parameters: dict, checked: int, bad: list) -> CheckReport:
    return CheckReport(check_id, parameters, not bad, checked=checked, violations=len(bad), examples=bad[:5])


# -- series checks ------------------------------------------------------------

@_timed
def check_theorem1(degree: int, threads: int = 1) -> CheckReport:
    """Length-1 partitions against the leg factor times the super-rigid sum."""
    lhs = partition_series(1, degree, threads)
    zx = superrigid_series(degree // 2, degree)
    rhs = pyramid_leg_factor(degree) * substitute_zq(zx, degree)
    return compare("theorem1", {"degree": degree}, lhs, rhs)


@_timed
def check_eq_general_n(n: int, degree: int, threads: int = 1) -> CheckReport:
    return compare("general-n", {"n": n, "degree": degree}, partition_series(n, degree, threads), formula_Z(n, degree))


@_timed
def check_shuffle_recursion(n: int, k: int, degree: int, threads: int = 1) -> CheckReport:
    """Brute-force Z(n) against k weighted shuffles of its odd-deficient forms."""
    parts = enumerate_partitions(n, degree, threads)
    lhs = TruncatedSeries.from_monomials((w for _, w in parts), degree)
    items = seed_items(parts)
    for a in range(k):
        items = propagate_weighted(items, a, degree)
    rhs = shuffle_product(n, k, degree) * level_sum(items, k, degree)
    return compare("shuffle-recursion", {"n": n, "k": k, "degree": degree}, lhs, rhs)


@_timed
def check_zx(z_degree: int, q_degree: int) -> CheckReport:
    return compare(
        "zx", {"z_degree": z_degree, "q_degree": q_degree},
        superrigid_series(q_degree, z_degree), formula_Zx(z_degree, q_degree),
    )


@_timed
def check_macmahon(degree: int) -> CheckReport:
    counts = plane_partition_counts(YoungDiagram(), degree)
    t = Truncation.per_variable(0, degree)
    lhs = TruncatedSeries({(0, k): c for k, c in enumerate(counts)}, t, ZQ_VARS)
    return compare("macmahon", {"degree": degree}, lhs, macmahon(Monomial(0, 1), t, vars=ZQ_VARS))


@_timed
def check_one_leg(lam: YoungDiagram, degree: int) -> CheckReport:
    return compare(
        "one-leg", {"lambda": list(lam.rows), "degree": degree},
        one_leg_sum(lam, degree), one_leg_closed_form(lam, degree),
    )


@_timed
def check_cauchy(n: int, degree: int) -> CheckReport:
    """Schur sum against the product, in (z, q) and after substitution."""
    lhs, rhs = cauchy_sum(n, degree), cauchy_product(n, degree)
    rep = compare("cauchy", {"n": n, "degree": degree}, lhs, rhs)
    if rep.equal:
        sub = substitute_zq(lhs, degree)
        fd = sub.first_difference(cauchy_substituted(n, degree))
        if fd is not None:
            rep = CheckReport("cauchy", rep.parameters, False, sub, cauchy_substituted(n, degree), fd)
    return rep


# -- property checks ----------------------------------------------------------

@_timed
def check_involution(max_n: int, degree: int) -> CheckReport:
    """Sliding twice is the identity, and distinct deficient forms slide apart."""
    bad, checked = [], 0
    for n in range(1, max_n + 1):
        image: dict[tuple, tuple] = {}
        for cfg, _ in enumerate_partitions(n, degree):
            d = delete_blocks(cfg)
            s = slide(d)
            checked += 1
            if slide(s) != d:
                bad.append(("not an involution", n, sorted(cfg.diff)))
            prev = image.setdefault(s.key(), d.key())
            if prev != d.key():
                bad.append(("not injective", n, sorted(cfg.diff)))
    return _property("involution", {"max_n": max_n, "degree": degree}, checked, bad)


@_timed
def check_block_count(max_n: int, degree: int) -> CheckReport:
    """Odd blocks before minus even blocks after a slide equals the length."""
    bad, checked = [], 0
    for n in range(1, max_n + 1):
        for cfg, _ in enumerate_partitions(n, degree):
            d = delete_blocks(cfg)
            s = slide(d)
            checked += 1
            if d.m - s.m != n:
                bad.append((n, d.m, s.m, sorted(cfg.diff)))
    return _property("block-count", {"max_n": max_n, "degree": degree}, checked, bad)


@_timed
def check_lemma4(n: int = 1, half: int = 10, levels: int = 4) -> CheckReport:
    """Horizontal block products on a 2*half square window at levels 0..levels."""
    window = centered_window(half)
    f = build_w0_field(n, centered_window(half + levels))
    bad, checked = [], 0
    for a in range(levels + 1):
        bad.extend((a,) + v for v in check_block_products(f, window))
        checked += (2 * half - 1) ** 2
        f = transport_field(f)
    return _property("lemma4", {"n": n, "window": 2 * half, "levels": levels}, checked, bad)


@_timed
def check_phi(max_N: int, n: int = 1, window: int | None = None) -> CheckReport:
    """Move weights match z^|lam| q^N, and rendering is injective with matching seams."""
    box = window or max_N + 3
    bad, seen = [], {}
    triples = enumerate_superrigid(max_N, n)
    for sr, _ in triples:
        if move_product(move_sequence(sr, n)) != substituted_weight(sr, n):
            bad.append(("weight", sr.key()))
        up, lo = phi_render_halfplanes(sr, box)
        if up.seam != lo.seam:
            bad.append(("seam", sr.key()))
        k = (up.dimers, lo.dimers)
        if k in seen:
            bad.append(("collision", sr.key(), seen[k]))
        seen[k] = sr.key()
    return _property("phi", {"max_N": max_N, "n": n}, len(triples), bad)


# -- registry -----------------------------------------------------------------

ONE_LEG_SHAPES = [(), (1,), (2,), (1, 1), (2, 1)]


def default_reports(check_id: str, degree: int | None = None, n: int | None = None,
                    k: int | None = None, threads: int = 1) -> list[CheckReport]:
    """Run a named check with the given bounds, or the standard bounds when omitted."""
    if check_id == "theorem1":
        return [check_theorem1(8 if degree is None else degree, threads)]
    if check_id == "general-n":
        cases = [(1, 8), (2, 6), (3, 6)] if n is None and degree is None else [(n or 1, 6 if degree is None else degree)]
        return [check_eq_general_n(a, b, threads) for a, b in cases]
    if check_id == "shuffle-recursion":
        if n is None and k is None and degree is None:
            cases = [(1, 1, 4), (1, 3, 6), (2, 2, 5)]
        else:
            cases = [(n or 1, k or 1, 6 if degree is None else degree)]
        return [check_shuffle_recursion(a, b, c, threads) for a, b, c in cases]
    if check_id == "zx":
        return [check_zx(3, 6 if degree is None else degree)]
    if check_id == "macmahon":
        return [check_macmahon(5 if degree is None else degree)]
    if check_id == "one-leg":
        return [check_one_leg(YoungDiagram(s), 8 if degree is None else degree) for s in ONE_LEG_SHAPES]
    if check_id == "cauchy":
        ns = [1, 2] if n is None else [n]
        return [check_cauchy(a, 8 if degree is None else degree) for a in ns]
    if check_id == "involution":
        return [check_involution(3 if n is None else n, 6 if degree is None else degree)]
    if check_id == "block-count":
        return [check_block_count(3 if n is None else n, 6 if degree is None else degree)]
    if check_id == "lemma4":
        return [check_lemma4(1 if n is None else n)]
    if check_id == "phi":
        return [check_phi(4 if degree is None else degree, 1 if n is None else n)]
    if check_id == "all":
        out = []
        for cid in CHECK_IDS:
            if cid != "all":
                out.extend(default_reports(cid, threads=threads))
        return out
    raise KeyError(check_id)


CHECK_IDS = [
    "theorem1", "general-n", "shuffle-recursion", "involution", "block-count", "lemma4",
    "zx", "macmahon", "one-leg", "cauchy", "phi", "all",
]


__all__ = [
    "CHECK_IDS", "CheckReport", "check_block_count", "check_cauchy", "check_eq_general_n",
    "check_involution", "check_lemma4", "check_macmahon", "check_one_leg", "check_phi",
    "check_shuffle_recursion", "check_theorem1", "check_zx", "compare", "default_reports",
]

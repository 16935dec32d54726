"""JSON forms of configurations, series and super-rigid triples.

Every writer sorts its lists so equal objects give identical bytes.
"""
from __future__ import annotations

import json
from typing import Any

from .lattice import Dimer, Window, centered_window, grow, make_dimer, union_window
from .pyramid import DimerConfig
from .series import PYRAMID_VARS, SeriesError, TruncatedSeries, Truncation
from .shuffle import DeficientConfig
from .solid import SolidError, SuperRigid, YoungDiagram


class FormatError(ValueError):
    pass


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def _dimer_json(d: Dimer) -> list[list[int]]:
    return [list(d[0]), list(d[1])]


def display_window(cfg: DimerConfig | DeficientConfig) -> Window:
    """The stored window, or the centre plus every difference with a margin of 2."""
    if cfg.window is not None:
        return tuple(cfg.window)
    sup = cfg.support()
    base = centered_window(cfg.n + 2)
    return union_window(base, grow(sup, 2) if sup else None)


def config_to_json(cfg: DimerConfig | DeficientConfig) -> dict:
    doc = {
        "n": cfg.n,
        "window": list(display_window(cfg)),
        "diff_dimers": [_dimer_json(d) for d in sorted(cfg.diff)],
    }
    if isinstance(cfg, DeficientConfig):
        doc["coloring"] = cfg.coloring
        doc["parity"] = cfg.parity
        doc["missing_blocks"] = [list(c) for c in sorted(cfg.missing)]
    return doc


def _tuple_dimer(raw) -> Dimer:
    try:
        (a, b), (c, d) = raw
        return make_dimer((int(a), int(b)), (int(c), int(d)))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad dimer {raw!r}: {exc}") from None


def config_from_json(doc: dict) -> DimerConfig | DeficientConfig:
    try:
        n = int(doc["n"])
        window = tuple(int(v) for v in doc["window"]) if doc.get("window") is not None else None
        raw = doc["diff_dimers"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad configuration document: {exc}") from None
    if n < 1:
        raise FormatError("n must be >= 1")
    if window is not None and len(window) != 4:
        raise FormatError("window must be [xmin, ymin, xmax, ymax]")
    diff = frozenset(_tuple_dimer(d) for d in raw)
    try:
        if "missing_blocks" in doc:
            cfg = DeficientConfig(
                n, int(doc["coloring"]), str(doc["parity"]), diff,
                frozenset((int(x), int(y)) for x, y in doc["missing_blocks"]), window,
            )
        else:
            cfg = DimerConfig(n, diff, window)
        cfg.validate()
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid configuration: {exc}") from None
    return cfg


def series_to_json(s: TruncatedSeries) -> dict:
    doc: dict[str, Any] = {"vars": list(s.vars)}
    if s.trunc.total is not None:
        doc["max_total_degree"] = s.trunc.total
    else:
        doc["max_degrees"] = list(s.trunc.bounds)
    doc["terms"] = [{"e0": e0, "e1": e1, "c": str(c)} for (e0, e1), c in s.terms()]
    return doc


def series_from_json(doc: dict) -> TruncatedSeries:
    try:
        if "max_total_degree" in doc:
            trunc = Truncation.total_degree(int(doc["max_total_degree"]))
        else:
            trunc = Truncation.per_variable(*map(int, doc["max_degrees"]))
        terms = {(int(t["e0"]), int(t["e1"])): int(t["c"]) for t in doc["terms"]}
        return TruncatedSeries(terms, trunc, tuple(doc.get("vars", PYRAMID_VARS)))
    except (KeyError, TypeError, ValueError, SeriesError) as exc:
        raise FormatError(f"bad series document: {exc}") from None


def superrigid_to_json(sr: SuperRigid) -> dict:
    return {
        "lambda": list(sr.lam.rows),
        "pi0_extra": [list(b) for b in sorted(sr.pi0)],
        "piInf_extra": [list(b) for b in sorted(sr.pi_inf)],
    }


def superrigid_from_json(doc: dict) -> SuperRigid:
    try:
        sr = SuperRigid(
            YoungDiagram(tuple(doc["lambda"])),
            frozenset(tuple(int(c) for c in b) for b in doc["pi0_extra"]),
            frozenset(tuple(int(c) for c in b) for b in doc["piInf_extra"]),
        )
        sr.validate()
    except (KeyError, TypeError, ValueError, SolidError) as exc:
        raise FormatError(f"bad super-rigid document: {exc}") from None
    return sr


__all__ = [
    "FormatError", "config_from_json", "config_to_json", "display_window", "dumps",
    "series_from_json", "series_to_json", "superrigid_from_json", "superrigid_to_json",
]

"""Command-line front end.

Exit codes: 0 success, 1 an identity check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .lattice import VERTICAL, HORIZONTAL, centered_window
from .pyramid import DimerConfig, enumerate_partitions
from .serialize import (
    FormatError,
    config_from_json,
    config_to_json,
    display_window,
    dumps,
    series_to_json,
    superrigid_from_json,
    superrigid_to_json,
)
from .series import TruncatedSeries
from .shuffle import DeficientConfig, delete_blocks, fill, slide
from .solid import enumerate_superrigid, phi_render_halfplanes, superrigid_series
from .svg import config_svg, halfplanes_svg
from .verify import CHECK_IDS, default_reports
from .weights import field_at_level


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


# -- commands -----------------------------------------------------------------

def cmd_enumerate(args) -> int:
    items = enumerate_partitions(args.n, args.max_degree, args.threads)
    series = TruncatedSeries.from_monomials((w for _, w in items), args.max_degree)
    if args.format == "text":
        lines = [f"length {args.n}, degree <= {args.max_degree}: {len(items)} partitions", f"Z = {series.format()}"]
        if args.emit_configs:
            lines += [f"{w}\t{sorted(cfg.diff)}" for cfg, w in items]
        _write("\n".join(lines) + "\n", args.out)
        return 0
    doc = {"n": args.n, "max_degree": args.max_degree, "count": len(items), "series": series_to_json(series)}
    if args.emit_configs:
        doc["configs"] = [dict(config_to_json(cfg), weight={"e0": w.e0, "e1": w.e1}) for cfg, w in items]
    _write(dumps(doc), args.out)
    return 0


def _fill_choices(d: DeficientConfig, mode: str) -> list[tuple[str, ...]]:
    m = d.m
    if mode == "vertical":
        return [(VERTICAL,) * m]
    if mode == "horizontal":
        return [(HORIZONTAL,) * m]
    if mode == "all":
        return [tuple(HORIZONTAL if mask >> i & 1 else VERTICAL for i in range(m)) for mask in range(1 << m)]
    try:
        mask = int(mode, 0)
    except ValueError:
        raise UsageError(f"--fill must be vertical, horizontal, all or an integer mask, got {mode!r}") from None
    if mask < 0 or mask >= 1 << m:
        raise UsageError(f"mask {mask} out of range for {m} missing blocks")
    return [tuple(HORIZONTAL if mask >> i & 1 else VERTICAL for i in range(m))]


def cmd_shuffle(args) -> int:
    cfg = config_from_json(_read_json(args.input))
    if not isinstance(cfg, DimerConfig):
        raise UsageError("shuffle expects a full configuration, not a deficient one")
    s = slide(delete_blocks(cfg))
    out = [config_to_json(fill(s, choice)) for choice in _fill_choices(s, args.fill)]
    _write(dumps(out), args.out)
    return 0


def cmd_weights(args) -> int:
    f = field_at_level(args.n, args.level, centered_window(args.window))
    edges = [
        {"edge": [list(e[0]), list(e[1])], "e0": w.e0, "e1": w.e1}
        for e, w in sorted(f.weights.items())
    ]
    doc = {"n": args.n, "level": args.level, "coloring": f.coloring, "window": list(f.window), "edges": edges}
    _write(dumps(doc), args.out)
    return 0


def cmd_solid_enumerate(args) -> int:
    triples = enumerate_superrigid(args.max_n, args.n)
    series = superrigid_series(args.max_n, args.max_n, args.n)
    if args.format == "text":
        lines = [f"{len(triples)} super-rigid triples with N <= {args.max_n}", f"Z_X = {series.format()}"]
        _write("\n".join(lines) + "\n", args.out)
        return 0
    doc = {
        "max_n": args.max_n,
        "n": args.n,
        "count": len(triples),
        "series": series_to_json(series),
        "triples": [dict(superrigid_to_json(sr), weight={"z": w.e0, "q": w.e1}) for sr, w in triples],
    }
    _write(dumps(doc), args.out)
    return 0


def cmd_solid_render(args) -> int:
    sr = superrigid_from_json(_read_json(args.input))
    up, lo = phi_render_halfplanes(sr, args.window)
    _write(halfplanes_svg(up, lo), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.check not in CHECK_IDS:
        raise UsageError(f"unknown check {args.check!r}; choose from {', '.join(CHECK_IDS)}")
    reports = default_reports(args.check, args.degree, args.n, args.k, args.threads)
    if args.format == "json":
        _write(dumps([r.to_json(args.timing) for r in reports]), args.out)
    else:
        _write("\n".join(r.summary() for r in reports) + "\n", args.out)
    return 0 if all(r.equal for r in reports) else 1


def cmd_render(args) -> int:
    cfg = config_from_json(_read_json(args.input))
    window = tuple(args.window) if args.window else display_window(cfg)
    _write(config_svg(cfg, window), args.out)
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dimershuffle", description="Pyramid partitions and dimer shuffling.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="list pyramid partitions up to a weight degree")
    e.add_argument("--n", type=_pos, required=True)
    e.add_argument("--max-degree", type=_nonneg, required=True)
    e.add_argument("--emit-configs", action="store_true")
    e.add_argument("--format", choices=["json", "text"], default="json")
    e.add_argument("--threads", type=_pos, default=1)
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("shuffle", help="shuffle one configuration")
    s.add_argument("--input", required=True)
    s.add_argument("--fill", default="all", help="vertical, horizontal, all, or an integer bit mask")
    s.add_argument("--out")
    s.set_defaults(func=cmd_shuffle)

    w = sub.add_parser("weights", help="edge weight fields")
    wsub = w.add_subparsers(dest="action", required=True)
    wd = wsub.add_parser("dump")
    wd.add_argument("--n", type=_pos, required=True)
    wd.add_argument("--level", type=_nonneg, default=0)
    wd.add_argument("--window", type=_pos, default=4, help="half-width of the square window")
    wd.add_argument("--out")
    wd.set_defaults(func=cmd_weights)

    so = sub.add_parser("solid", help="super-rigid triples")
    ssub = so.add_subparsers(dest="action", required=True)
    se = ssub.add_parser("enumerate")
    se.add_argument("--max-n", type=_nonneg, required=True)
    se.add_argument("--n", type=_pos, default=1)
    se.add_argument("--format", choices=["json", "text"], default="json")
    se.add_argument("--out")
    se.set_defaults(func=cmd_solid_enumerate)
    sr = ssub.add_parser("render")
    sr.add_argument("--input", required=True)
    sr.add_argument("--window", type=_pos, required=True, help="side of the bounding box")
    sr.add_argument("--out")
    sr.set_defaults(func=cmd_solid_render)

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("check", help=", ".join(CHECK_IDS))
    v.add_argument("--degree", type=_nonneg)
    v.add_argument("--n", type=_pos)
    v.add_argument("--k", type=_pos)
    v.add_argument("--threads", type=_pos, default=1)
    v.add_argument("--format", choices=["json", "text"], default="text")
    v.add_argument("--timing", action="store_true", help="include elapsed seconds in JSON")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="draw a configuration as SVG")
    r.add_argument("--input", required=True)
    r.add_argument("--window", type=int, nargs=4, metavar=("XMIN", "YMIN", "XMAX", "YMAX"))
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError) as exc:
        print(f"dimershuffle: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``bsgrowth <command> --k K ...``.

Exit status: 0 success, 1 mismatch or failed check, 2 usage error,
3 resource problem (oracle element budget, unreadable cache).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from . import grammar as gr
from .languages import LanguageFamily, conjugacy_family, language_conjugacy_growth
from .oracle import CacheError, OracleResourceError, cache_path, cached_ball, load_cache
from .roots import RootNotFound, growth_rates
from .series import abelian_series, expand, full_conjugacy_series, printed_abelian_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
CACHE_ENV = "BSGROWTH_CACHE_DIR"
METHODS = ("oracle", "language", "formula")

log = logging.getLogger("bsgrowth")


def _k_value(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"k must be an integer, got {text!r}")
    if k < 2:
        raise argparse.ArgumentTypeError("k must be >= 2")
    return k


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _positive_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 1e-3 or 1/1000, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("precision must be positive")
    return value


def _cache_dir(args) -> Optional[Path]:
    if args.cache_dir:
        return Path(args.cache_dir)
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _format_table(headers: List[str], rows: List[List]) -> str:
    cells = [headers] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# series


def compute_counts(k: int, max_n: int, method: str, cache_dir=None, max_elements=None) -> List[int]:
    if method == "oracle":
        kwargs = {"max_elements": max_elements} if max_elements else {}
        return cached_ball(k, max_n, cache_dir, **kwargs).conjugacy_growth()
    if method == "language":
        return language_conjugacy_growth(k, max_n)
    if method == "formula":
        return full_conjugacy_series(k, max_n).integer_coefficients()
    raise ValueError(f"unknown method {method!r}")


def cmd_series(args) -> int:
    methods = list(METHODS) if args.method == "all" else [args.method]
    counts: Dict[str, List[int]] = {}
    for m in methods:
        counts[m] = compute_counts(args.k, args.max_n, m, _cache_dir(args), args.max_elements)
    rows_n = range(args.max_n + 1)
    verdicts = [len({counts[m][n] for m in methods}) == 1 for n in rows_n]
    match = all(verdicts)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "method", "count"])
        for n in rows_n:
            for m in methods:
                w.writerow([n, m, counts[m][n]])
        _emit(buf.getvalue())
    elif args.format == "json":
        _emit(_json({
            "command": "series",
            "config": {"k": args.k, "max_n": args.max_n, "method": args.method},
            "n": list(rows_n),
            "counts": counts,
            "match": match,
        }))
    else:
        headers = ["n"] + methods + (["verdict"] if len(methods) > 1 else [])
        rows = []
        for n in rows_n:
            row = [n] + [counts[m][n] for m in methods]
            if len(methods) > 1:
                row.append("MATCH" if verdicts[n] else "MISMATCH")
            rows.append(row)
        _emit(f"conjugacy growth c(n) of BS(1,{args.k})\n" + _format_table(headers, rows))
    return EXIT_OK if match else EXIT_FAIL


# ---------------------------------------------------------------------------
# rates


def _interval(pair) -> List[str]:
    return [str(pair[0]), str(pair[1])]


def cmd_rates(args) -> int:
    try:
        report = growth_rates(args.k, args.precision)
    except RootNotFound as exc:
        _emit(f"FAIL  root isolation: {exc}")
        return EXIT_FAIL
    ab, cj = report.abelian_root, report.conjugacy_root
    if args.format == "json":
        _emit(_json({
            "command": "rates",
            "config": {"k": args.k, "precision": str(args.precision)},
            "abelian_root": _interval((ab.lo, ab.hi)),
            "abelian_rate": _interval(report.abelian_rate),
            "conjugacy_root": _interval((cj.lo, cj.hi)),
            "conjugacy_rate": _interval(report.conjugacy_rate),
            "checks": report.checks,
        }))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "lo", "hi"])
        w.writerow(["abelian_root", float(ab.lo), float(ab.hi)])
        w.writerow(["abelian_rate", *map(float, report.abelian_rate)])
        w.writerow(["conjugacy_root", float(cj.lo), float(cj.hi)])
        w.writerow(["conjugacy_rate", *map(float, report.conjugacy_rate)])
        for name, ok in report.checks.items():
            w.writerow([name, "PASS" if ok else "FAIL", ""])
        _emit(buf.getvalue())
    else:
        def show(label, root, rate):
            exact = " (exact)" if root.exact else ""
            _emit(
                f"{label:<16} root in [{float(root.lo):.9f}, {float(root.hi):.9f}]{exact}  "
                f"rate ~ {float(root.midpoint) ** -1:.6f}"
            )

        _emit(f"growth rates of BS(1,{args.k}), interval width <= {float(args.precision):g}")
        show("abelian classes", ab, report.abelian_rate)
        show("all classes", cj, report.conjugacy_rate)
        for name, ok in report.checks.items():
            _emit(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# grammar check


def cmd_grammar_check(args) -> int:
    k, n = args.k, args.max_n
    g = gr.printed_grammar(k) if args.printed else gr.build_conjugacy_grammar(k)
    derivations = gr.language_up_to(g, n)
    family = LanguageFamily(conjugacy_family(k), k)
    members = {w for length in range(n + 1) for w in family.words(length)}
    closed = printed_abelian_series(k) if args.printed else abelian_series(k)
    rows, ok = [], True
    for length in range(n + 1):
        words = {w for w in derivations if len(w) == length}
        ref = {w for w in members if len(w) == length}
        worst = max((derivations[w] for w in words), default=0)
        good = worst <= 1 and words == ref
        ok &= good
        rows.append([length, len(words), len(ref), worst, "PASS" if good else "FAIL"])
    dsv = gr.dsv_series(g, n)
    series_ok = dsv == expand(closed, n)
    ok &= series_ok
    if args.format == "json":
        _emit(_json({
            "command": "grammar-check",
            "config": {"k": k, "max_n": n, "printed": args.printed},
            "rows": [dict(zip(["n", "grammar", "members", "max_derivations", "verdict"], r)) for r in rows],
            "dsv_matches_closed_form": series_ok,
            "pass": ok,
        }))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "grammar", "members", "max_derivations", "verdict"])
        w.writerows(rows)
        _emit(buf.getvalue())
    else:
        which = "printed" if args.printed else "corrected"
        _emit(f"{which} grammar for {conjugacy_family(k)}, k={k}")
        _emit(_format_table(["n", "grammar", "members", "max_derivations", "verdict"], rows))
        _emit(f"{'PASS' if series_ok else 'FAIL'}  DSV series equals closed form through order {n}")
        _emit("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# spheres and cache


def cmd_spheres(args) -> int:
    kwargs = {"max_elements": args.max_elements} if args.max_elements else {}
    table = cached_ball(args.k, args.max_n, _cache_dir(args), **kwargs)
    sizes = list(table.sphere_sizes)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "sphere", "ball"])
        for n, (s, b) in enumerate(zip(sizes, table.ball_sizes())):
            w.writerow([n, s, b])
        _emit(buf.getvalue())
    elif args.format == "json":
        _emit(_json({
            "command": "spheres",
            "config": {"k": args.k, "max_n": args.max_n},
            "sphere_sizes": sizes,
            "ball_sizes": table.ball_sizes(),
        }))
    else:
        rows = []
        for n, s in enumerate(sizes):
            ratio = f"{s / sizes[n - 1]:.4f}" if n else ""
            rows.append([n, s, ratio])
        _emit(_format_table(["n", "sphere", "ratio"], rows))
    return EXIT_OK


def cmd_cache(args) -> int:
    cache_dir = _cache_dir(args)
    if cache_dir is None:
        _emit(f"no cache directory: pass --cache-dir or set {CACHE_ENV}")
        return EXIT_USAGE
    if args.action == "build":
        table = cached_ball(args.k, args.max_n, cache_dir)
        _emit(f"cached k={table.k} radius={table.radius} at {cache_path(cache_dir, args.k, args.max_n)}")
        return EXIT_OK
    files = sorted(cache_dir.glob("bs1_*_r*_v*.txt")) if cache_dir.exists() else []
    if args.action == "list":
        status = EXIT_OK
        for f in files:
            try:
                t = load_cache(f)
                _emit(f"{f.name}  k={t.k} radius={t.radius} classes={len(t.class_first_seen)}")
            except CacheError as exc:
                _emit(f"{f.name}  CORRUPT: {exc}")
                status = EXIT_RESOURCE
        return status
    if args.action == "clear":
        for f in files:
            f.unlink()
        _emit(f"removed {len(files)} cache file(s)")
        return EXIT_OK
    raise AssertionError(args.action)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bsgrowth",
        description="Conjugacy growth of the Baumslag-Solitar groups BS(1,k).",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=_k_value, required=True, help="the base k >= 2")
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--cache-dir", help=f"oracle cache directory (default: ${CACHE_ENV})")

    def with_length(p, default):
        p.add_argument("--max-n", "--order", dest="max_n", type=_nonneg, default=default,
                       help="largest length / series order")

    p = sub.add_parser("series", parents=[common], help="c(0..N) by oracle, languages and formula")
    with_length(p, 10)
    p.add_argument("--method", choices=METHODS + ("all",), default="all")
    p.add_argument("--max-elements", type=int, default=None, help="oracle element budget")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("rates", parents=[common], help="certified growth rates")
    p.add_argument("--precision", type=_positive_fraction, default=Fraction(1, 10**6),
                   help="root interval width, e.g. 1e-3")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("grammar-check", parents=[common], help="grammar unambiguity and language check")
    with_length(p, 10)
    p.add_argument("--printed", action="store_true", help="check the grammar exactly as printed")
    p.set_defaults(func=cmd_grammar_check)

    p = sub.add_parser("spheres", parents=[common], help="Cayley sphere sizes from the oracle")
    with_length(p, 10)
    p.add_argument("--max-elements", type=int, default=None, help="oracle element budget")
    p.set_defaults(func=cmd_spheres)

    p = sub.add_parser("cache", help="manage the oracle cache")
    p.add_argument("action", choices=("list", "clear", "build"))
    p.add_argument("--cache-dir", help=f"oracle cache directory (default: ${CACHE_ENV})")
    p.add_argument("--k", type=_k_value, default=2)
    with_length(p, 10)
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except OracleResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())

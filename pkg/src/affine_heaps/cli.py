"""Command-line interface: ``affine-heaps {count,series,convert,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import inspect
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from .diagrams import AlternatingDiagram, delta, delta_inverse
from .exceptions import DomainError
from .heaps import Heap
from .monodimer import MarkedPyramid, Walk, phi, phi_inverse, upsilon, upsilon_inverse
from .oracle import enumerate_fc_elements
from .permutations import AffinePermutation, parse_window
from .ppp import AltSequence, MarkedPpp, diagram_to_marked_ppp, f_inverse, f_to_heap, marked_ppp_to_diagram
from .qformulas import NAMED_SERIES, named_series
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# count


def cmd_count(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.max_len < 0:
        raise UsageError("--max-len must be nonnegative")
    table = enumerate_fc_elements(args.n, args.max_len, args.cls.replace("-", "_"))
    print(table.to_csv() if args.format == "csv" else table.to_json(), end="" if args.format == "csv" else "\n")
    return EXIT_OK


# series


def cmd_series(args) -> int:
    if min(args.x, args.y, args.q) < 0:
        raise UsageError("truncation bounds must be nonnegative")
    print(named_series(args.name, (args.x, args.y, args.q)).to_json())
    return EXIT_OK


# convert


def _load_window(payload: str) -> AffinePermutation:
    text = payload.strip()
    if text.startswith("["):
        return parse_window(text)
    return AffinePermutation.from_dict(json.loads(text))


def _load_sequence(payload: str) -> AltSequence:
    data = json.loads(payload)
    return AltSequence.of(data["pairs"] if isinstance(data, dict) else data)


LOADERS: dict[str, Callable[[str], object]] = {
    "window": _load_window,
    "diagram": lambda s: AlternatingDiagram.from_dict(json.loads(s)),
    "walk": lambda s: Walk.from_dict(json.loads(s)),
    "pyramid": lambda s: MarkedPyramid.from_dict(json.loads(s)),
    "marked-ppp": lambda s: MarkedPpp.from_dict(json.loads(s)),
    "sequence": _load_sequence,
    "heap": lambda s: Heap.from_dict(json.loads(s)),
}

CONVERSIONS: dict[tuple[str, str], Callable] = {
    ("window", "diagram"): delta,
    ("diagram", "window"): delta_inverse,
    ("diagram", "walk"): phi,
    ("walk", "diagram"): phi_inverse,
    ("diagram", "pyramid"): upsilon,
    ("pyramid", "diagram"): upsilon_inverse,
    ("marked-ppp", "diagram"): marked_ppp_to_diagram,
    ("diagram", "marked-ppp"): diagram_to_marked_ppp,
    ("sequence", "heap"): f_to_heap,
    ("heap", "sequence"): f_inverse,
}


def _to_json(obj) -> str:
    if isinstance(obj, AltSequence):
        return _dump({"pairs": [list(p) for p in obj.pairs]})
    return obj.to_json()


def cmd_convert(args) -> int:
    key = (args.src, args.dst)
    if key not in CONVERSIONS:
        known = ", ".join(f"{a}->{b}" for a, b in CONVERSIONS)
        raise UsageError(f"no conversion {args.src}->{args.dst}; available: {known}")
    payload = args.payload if args.payload is not None else sys.stdin.read()
    try:
        value = LOADERS[args.src](payload)
    except DomainError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse {args.src} payload: {exc}") from None
    print(_to_json(CONVERSIONS[key](value)))
    return EXIT_OK


# verify

SCALE_FLAGS = ("n_max", "len_max", "size_max", "x_max", "y_max", "q_max", "area_max")


def _suite_kwargs(name: str, args) -> dict:
    params = inspect.signature(SUITES[name]).parameters
    return {k: getattr(args, k) for k in SCALE_FLAGS if getattr(args, k) is not None and k in params}


def _run_suite_lines(job) -> tuple[list[str], bool]:
    name, kwargs = job
    checks = run_suite(name, **kwargs)
    return [c.line() for c in checks], all(c.ok for c in checks)


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known: all, {', '.join(SUITES)}")
    names = list(SUITES) if args.suite == "all" else [args.suite]
    jobs = [(name, _suite_kwargs(name, args)) for name in names]
    workers = args.jobs if args.jobs is not None else int(os.environ.get("AFFINE_HEAPS_JOBS", "1") or 1)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_suite_lines, jobs))
    else:
        results = [_run_suite_lines(job) for job in jobs]
    all_ok = True
    for (name, _), (lines, ok) in zip(jobs, results):
        for line in lines:
            print(line)
        print(f"{'PASS' if ok else 'FAIL'} suite {name}")
        all_ok &= ok
    return EXIT_OK if all_ok else EXIT_FAIL


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affine-heaps",
                                     description="Exact enumeration of 321-avoiding affine permutations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count 321-avoiding elements by length")
    p.add_argument("--class", dest="cls", default="affine",
                   choices=["affine", "finite", "affine-involution", "finite-involution"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("series", help="print a named series")
    p.add_argument("--name", required=True, choices=sorted(NAMED_SERIES))
    p.add_argument("--x", type=int, default=4)
    p.add_argument("--y", type=int, default=0)
    p.add_argument("--q", type=int, default=8)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("convert", help="apply one of the bijections to a JSON payload")
    p.add_argument("--from", dest="src", required=True, choices=sorted(LOADERS))
    p.add_argument("--to", dest="dst", required=True, choices=sorted({b for _, b in CONVERSIONS}))
    p.add_argument("--payload", help="JSON (or a window like [6,-3,-1,8]); read from stdin if omitted")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", required=True, help=f"all, {', '.join(SUITES)}")
    for flag in SCALE_FLAGS:
        p.add_argument("--" + flag.replace("_", "-"), dest=flag, type=int)
    p.add_argument("--jobs", type=int, help="worker processes (default: $AFFINE_HEAPS_JOBS or 1)")
    p.add_argument("--format", choices=["text"], default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

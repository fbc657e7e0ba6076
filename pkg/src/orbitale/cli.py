"""Command-line front end.

Machine output goes to standard output, progress to standard error, so
piping the results never picks up status chatter.  Identical invocations
with identical seeds print identical bytes.  Exit codes: 0 success,
1 computation failure (or failed verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import groupzoo, verify
from .canon import are_isomorphic
from .graphcore import decode_graph6, encode_graph6, to_dot, to_json_edges
from .orbital import dump_candidates, enumerate_pentavalent
from .permcore import PermGroup

_ZOO = {
    "a5": (groupzoo.a5, False),
    "d10": (groupzoo.d10, False),
    "j1": (groupzoo.j1, False),
    "psl2": (groupzoo.psl2, True),
    "pgl2": (groupzoo.pgl2, True),
    "sl2": (groupzoo.sl2, True),
}


def _resolve_seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("ORBITALE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"ORBITALE_SEED must be an integer, got {env!r}") from exc
    return 0


def _build_group(name: str, q: Optional[int], times_z2: bool) -> PermGroup:
    key = name.lower()
    if key not in _ZOO:
        raise ValueError(f"unknown group {name!r}; choose from {sorted(_ZOO)}")
    builder, needs_q = _ZOO[key]
    if needs_q:
        if q is None:
            raise ValueError(f"group {name!r} needs --q")
        group = builder(q)
    else:
        if q is not None:
            raise ValueError(f"group {name!r} does not take --q")
        group = builder()
    if times_z2:
        group = groupzoo.direct_with_z2(group)
    return group


def _label(group: PermGroup) -> str:
    meta = getattr(group, "meta", None)
    if meta and "label" in meta:
        return str(meta["label"])
    return f"G{group.order()}"


def _cmd_group(args: argparse.Namespace) -> int:
    if args.group_action != "info":
        raise ValueError(f"unknown group action {args.group_action!r}")
    group = _build_group(args.name, args.q, args.times_z2)
    sys.stdout.write(f"label: {_label(group)}\n")
    sys.stdout.write(f"order: {group.order()}\n")
    sys.stdout.write(f"degree: {group.degree}\n")
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    group = _build_group(args.group, args.q, args.times_z2)
    orders = [args.stab_order] if args.stab_order is not None else None
    print(f"enumerating {_label(group)} (seed {seed})", file=sys.stderr)
    candidates = enumerate_pentavalent(group, orders, seed=seed)
    print(f"{len(candidates)} isomorphism class(es)", file=sys.stderr)
    if args.out_dir is not None:
        for path in dump_candidates(candidates, args.out_dir):
            sys.stdout.write(f"{path}\n")
        return 0
    if args.format == "graph6":
        for cand in candidates:
            sys.stdout.write(encode_graph6(cand.graph).decode("ascii") + "\n")
    elif args.format == "dot":
        for cand in candidates:
            sys.stdout.write(to_dot(cand.graph) + "\n")
    else:
        import json

        payload = [cand.serialize() for cand in candidates]
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    reports = verify.run_suite(
        args.suite,
        seed=seed,
        node_budget=args.budget,
        jobs=jobs,
        progress=lambda msg: print(msg, file=sys.stderr),
    )
    text = verify.serialize_reports(reports, include_runtime=args.timings)
    sys.stdout.write(text)
    if args.out is not None:
        Path(args.out).write_text(text, encoding="ascii")
    return verify.suite_exit_code(reports, strict=args.strict)


def _cmd_quotient(args: argparse.Namespace) -> int:
    import json

    seed = _resolve_seed(args.seed)
    if args.all:
        labels = sorted(verify.QUOTIENT_CASES)
    elif args.case is not None:
        if args.case not in verify.QUOTIENT_CASES:
            raise ValueError(
                f"unknown case {args.case!r}; choose from {sorted(verify.QUOTIENT_CASES)}"
            )
        labels = [args.case]
    else:
        raise ValueError("quotient needs --case LABEL or --all")
    ok_all = True
    results = []
    for label in labels:
        print(f"checking {label}", file=sys.stderr)
        details: dict = {}
        ok = verify.quotient_consistency(
            verify.QUOTIENT_CASES[label], seed=seed, details=details
        )
        ok_all = ok_all and ok
        results.append({"case": label, "ok": ok, "details": details})
    sys.stdout.write(json.dumps(results, indent=2, sort_keys=True) + "\n")
    return 0 if ok_all else 1


def _cmd_filter(args: argparse.Namespace) -> int:
    parts = [int(x) for x in args.n.split(",") if x.strip()]
    n = 1
    for p in parts:
        n *= p
    for rec in groupzoo.filter_simple_orders(n):
        family = " (two-parameter family)" if rec.from_family else ""
        sys.stdout.write(f"{rec.name} order={rec.order}{family}\n")
    return 0


def _read_graph6_file(path: str):
    data = Path(path).read_bytes().strip()
    if not data:
        raise ValueError(f"{path} is empty")
    return decode_graph6(data.splitlines()[0])


def _cmd_isocheck(args: argparse.Namespace) -> int:
    a = _read_graph6_file(args.first)
    b = _read_graph6_file(args.second)
    result = are_isomorphic(a, b)
    sys.stdout.write(f"isomorphic: {'true' if result.isomorphic else 'false'}\n")
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitale",
        description="pentavalent arc-transitive graphs from coset actions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="inspect a zoo group")
    p_group.add_argument("group_action", choices=["info"])
    p_group.add_argument("--name", required=True)
    p_group.add_argument("--q", type=int, default=None)
    p_group.add_argument("--times-z2", action="store_true", help="double with a central Z2")
    p_group.set_defaults(func=_cmd_group)

    p_enum = sub.add_parser("enumerate", help="enumerate pentavalent classes")
    p_enum.add_argument("--group", required=True)
    p_enum.add_argument("--q", type=int, default=None)
    p_enum.add_argument("--times-z2", action="store_true")
    p_enum.add_argument("--stab-order", type=int, default=None)
    p_enum.add_argument("--seed", type=int, default=None)
    p_enum.add_argument("--format", choices=["graph6", "dot", "json"], default="graph6")
    p_enum.add_argument("--out-dir", default=None)
    p_enum.set_defaults(func=_cmd_enumerate)

    p_verify = sub.add_parser("verify", help="run a verdict suite")
    p_verify.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--budget", type=int, default=verify.DEFAULT_NODE_BUDGET)
    p_verify.add_argument("--jobs", type=int, default=None)
    p_verify.add_argument("--strict", action="store_true",
                          help="EXTENDED verdicts also fail the run")
    p_verify.add_argument("--timings", action="store_true",
                          help="include per-row runtimes (breaks byte-stability)")
    p_verify.add_argument("--out", default=None, help="also write the report here")
    p_verify.set_defaults(func=_cmd_verify)

    p_quot = sub.add_parser("quotient", help="run quotient consistency cases")
    p_quot.add_argument("--case", default=None)
    p_quot.add_argument("--all", action="store_true")
    p_quot.add_argument("--seed", type=int, default=None)
    p_quot.set_defaults(func=_cmd_quotient)

    p_filter = sub.add_parser("filter", help="simple groups fitting an order pattern")
    p_filter.add_argument("--n", required=True,
                          help="comma-separated odd primes, e.g. 3,7,11,19")
    p_filter.set_defaults(func=_cmd_filter)

    p_iso = sub.add_parser("isocheck", help="compare two graph6 files")
    p_iso.add_argument("first")
    p_iso.add_argument("second")
    p_iso.set_defaults(func=_cmd_isocheck)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

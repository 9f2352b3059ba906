"""Command-line interface.

Subcommands
-----------
hash      digest a message with the genus-2 walk
explore   build a superspecial graph, run its checks, export it
path      find and verify a kernel-index path between two vertices
bench     timing and operation-count comparison against the elliptic walk
selftest  embedded known answers: graph figures, count defects, KATs

Exit codes: 0 success; 1 a check, KAT, or path search failed; 2 usage
error; 3 the walk returned the degenerate outcome (no digest).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

import sympy

from .baseline import MODES, bench, format_table, reports_json
from .errors import G2Error, SetupError
from .graph import (
    GraphSnapshot,
    build_graph,
    export_dot,
    export_json,
    find_path,
    format_check,
    replay_path,
    vertex_ids,
    verify_conjectures,
    verify_counts,
    verify_theorems,
)
from .hashing import context_line, hash_bytes, setup
from .kat import CONTEXT_ARGS, load_vectors

MAX_PRIME_DEFAULT = 199

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BOTTOM = 3


def _read_message(spec: str) -> bytes:
    """Message bytes from a hex string, ``@file``, or ``-`` (stdin).
    Hex input is interpreted big-endian, exactly as the walk's sentinel
    padding expects; ``''`` denotes the empty message."""
    if spec == "-":
        return sys.stdin.buffer.read()
    if spec.startswith("@"):
        with open(spec[1:], "rb") as f:
            return f.read()
    try:
        return bytes.fromhex(spec)
    except ValueError:
        raise SetupError(f"not a hex string: {spec!r}")


def _cmd_hash(args) -> int:
    if (args.security is None) == (args.prime is None):
        print(
            "hash: give exactly one of --security or --prime",
            file=sys.stderr,
        )
        return EXIT_USAGE
    try:
        hctx = (
            setup(security=args.security)
            if args.security is not None
            else setup(prime=args.prime)
        )
        msg = _read_message(args.message)
    except (G2Error, OSError) as exc:
        print(f"hash: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(context_line(hctx), file=sys.stderr)
    digest = hash_bytes(hctx, msg, parallel=args.parallel)
    if digest is None:
        print(
            "hash: the walk hit a degenerate splitting; "
            "no digest for this input at this prime",
            file=sys.stderr,
        )
        return EXIT_BOTTOM
    print(digest.hex())
    return EXIT_OK


def _build_checked(p: int, max_prime: int) -> Optional[GraphSnapshot]:
    if not sympy.isprime(p) or p < 5:
        print(f"explore: {p} is not a prime >= 5", file=sys.stderr)
        return None
    if p > max_prime:
        print(
            f"explore: {p} exceeds the configured bound {max_prime} "
            "(raise --max-prime to allow it)",
            file=sys.stderr,
        )
        return None
    return build_graph(p)


def _cmd_explore(args) -> int:
    g = _build_checked(args.prime, args.max_prime)
    if g is None:
        return EXIT_USAGE
    wanted = [w for w in args.check.split(",") if w]
    known = {"counts", "theorems", "conjectures"}
    bad = set(wanted) - known
    if bad:
        print(f"explore: unknown checks {sorted(bad)}", file=sys.stderr)
        return EXIT_USAGE
    results = []
    for w in wanted:
        if w == "counts":
            results.append(verify_counts(g))
        elif w == "theorems":
            results.append(verify_theorems(g))
        else:
            results.extend(verify_conjectures(g))
    for r in results:
        print(format_check(r))
    nj, ne = len(g.jacobian_keys()), len(g.product_keys())
    print(f"vertices: {nj} jacobian, {ne} product; edges: {15 * (nj + ne)}")
    if args.list:
        ids = vertex_ids(g)
        for k in g.keys_sorted():
            print(f"  {ids[k]}  {k[0]}  {k[1]}")
    if args.export:
        text = export_dot(g) if args.export == "dot" else export_json(g)
        if args.out and args.out != "-":
            with open(args.out, "w") as f:
                f.write(text)
            print(f"wrote {args.export} export to {args.out}")
        else:
            sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _cmd_path(args) -> int:
    g = _build_checked(args.prime, args.max_prime)
    if g is None:
        return EXIT_USAGE
    ids = vertex_ids(g)
    by_id = {v: k for k, v in ids.items()}
    if args.src not in by_id or args.dst not in by_id:
        print(
            f"path: unknown vertex id (have {', '.join(sorted(by_id))})",
            file=sys.stderr,
        )
        return EXIT_USAGE
    src, dst = by_id[args.src], by_id[args.dst]
    indices = find_path(g, src, dst, good_only=args.good_only)
    if indices is None:
        print("no path", file=sys.stderr)
        return EXIT_FAIL
    end = replay_path(g, src, indices)
    if end != dst:
        print("path: replay did not reach the target", file=sys.stderr)
        return EXIT_FAIL
    print(
        f"path {args.src} -> {args.dst} length {len(indices)} "
        f"kernels {indices} (replay verified)"
    )
    return EXIT_OK


def _cmd_bench(args) -> int:
    lams = [int(x) for x in args.security.split(",") if x]
    modes = list(MODES) if args.mode == "all" else [args.mode]
    reports = []
    for lam in lams:
        for mode in modes:
            reports.append(
                bench(
                    lam,
                    args.message_bits,
                    mode,
                    messages=args.messages,
                    seed=args.seed,
                )
            )
    print(format_table(reports))
    if args.json:
        with open(args.json, "w") as f:
            f.write(reports_json(reports) + "\n")
        print(f"wrote JSON report to {args.json}")
    return EXIT_OK


def _selftest_graphs() -> List[str]:
    """Exact small-prime anchors: the 4-vertex graph at p = 13 with its
    full multiplicity table, and frozen count defects for one prime in
    each tested congruence class."""
    failures = []
    g = build_graph(13)
    trip = {}
    for k in g.jacobian_keys():
        trip[g.vertices[k].state.invariants().encode()] = k
    try:
        j1, j2, j3 = trip[(2, 6, 5)], trip[(7, 2, 2)], trip[(4, 9, 6)]
        (e0,) = g.product_keys()
        expect = {
            (j1, j1): 5, (j1, j2): 4, (j1, e0): 6,
            (j2, j1): 1, (j2, j2): 5, (j2, j3): 6, (j2, e0): 3,
            (j3, j2): 4, (j3, j3): 9, (j3, e0): 2,
            (e0, e0): 10, (e0, j1): 1, (e0, j2): 2, (e0, j3): 2,
        }
        if g.edge_multiset() != expect:
            failures.append("p=13 multiplicity table mismatch")
    except KeyError:
        failures.append("p=13 expected invariant triples missing")
    for p, nj, ne in ((13, 3, 1), (29, 18, 6), (37, 31, 6), (41, 40, 10)):
        gg = g if p == 13 else build_graph(p)
        r = verify_counts(gg)
        if not r.passed:
            failures.append(f"count certificate failed at p={p}")
        if len(gg.jacobian_keys()) != nj or len(gg.product_keys()) != ne:
            failures.append(
                f"p={p}: expected {nj} jacobian / {ne} product vertices,"
                f" got {len(gg.jacobian_keys())}/{len(gg.product_keys())}"
            )
    return failures


def _selftest_kats() -> List[str]:
    failures = []
    ctxs = {name: setup(**kw) for name, kw in CONTEXT_ARGS.items()}
    for vec in load_vectors():
        hctx = ctxs[vec.context]
        for par in (False, True):
            if vec.mode == "msg":
                got = hash_bytes(hctx, vec.input, parallel=par)
            else:
                from .hashing import hash_digits

                triple = hash_digits(hctx, vec.digits, parallel=par)
                got = None if triple is None else triple.to_bytes()
            if got != vec.expected:
                failures.append(
                    f"KAT {vec.name} ({'parallel' if par else 'sequential'})"
                )
    return failures


def _cmd_selftest(_args) -> int:
    groups = (
        ("graph anchors", _selftest_graphs),
        ("hash known answers", _selftest_kats),
    )
    bad: List[str] = []
    for name, fn in groups:
        fails = fn()
        print(f"selftest {name}: {'PASS' if not fails else 'FAIL'}")
        for f in fails:
            print(f"  {f}")
        bad.extend(fails)
    print(f"selftest: {'PASS' if not bad else f'{len(bad)} failure(s)'}")
    return EXIT_OK if not bad else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="g2cgl",
        description="Genus-2 isogeny walk hash and superspecial "
        "graph explorer",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    h = sub.add_parser("hash", help="digest a message")
    h.add_argument("--security", type=int, default=None)
    h.add_argument("--prime", type=int, default=None)
    h.add_argument(
        "--in",
        dest="message",
        default="",
        help="message as big-endian hex, @file, or - for stdin "
        "(default: empty message)",
    )
    h.add_argument("--parallel", action="store_true")
    h.set_defaults(fn=_cmd_hash)

    e = sub.add_parser("explore", help="build and check a graph")
    e.add_argument("--prime", type=int, required=True)
    e.add_argument(
        "--check",
        default="counts,theorems,conjectures",
        help="comma list from counts,theorems,conjectures",
    )
    e.add_argument("--export", choices=("dot", "json"), default=None)
    e.add_argument("--out", default=None, help="export target (- = stdout)")
    e.add_argument("--list", action="store_true", help="print vertex table")
    e.add_argument("--max-prime", type=int, default=MAX_PRIME_DEFAULT)
    e.set_defaults(fn=_cmd_explore)

    p = sub.add_parser("path", help="shortest kernel path between vertices")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--src", required=True, help="vertex id, e.g. J0")
    p.add_argument("--dst", required=True, help="vertex id, e.g. E0")
    p.add_argument(
        "--good-only",
        action="store_true",
        help="restrict steps after the first to good extensions",
    )
    p.add_argument("--max-prime", type=int, default=MAX_PRIME_DEFAULT)
    p.set_defaults(fn=_cmd_path)

    b = sub.add_parser("bench", help="timing comparison")
    b.add_argument(
        "--security",
        default="128,192,256,384",
        help="comma list of security levels",
    )
    b.add_argument("--mode", choices=MODES + ("all",), default="all")
    b.add_argument("--message-bits", type=int, default=96)
    b.add_argument("--messages", type=int, default=10)
    b.add_argument("--seed", type=int, default=2026)
    b.add_argument("--json", default=None, help="also write a JSON report")
    b.set_defaults(fn=_cmd_bench)

    s = sub.add_parser("selftest", help="embedded known answers")
    s.set_defaults(fn=_cmd_selftest)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalise others
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.fn(args)
    except G2Error as exc:
        print(f"g2cgl: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

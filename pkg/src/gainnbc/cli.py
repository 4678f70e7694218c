"""Command-line front end.

Exit status: 0 success, 1 verification failure or round-trip mismatch,
2 usage error, 3 instance larger than a guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Sequence

from . import bijection as bij
from .gain import PRESETS, GainGraphError, expansion
from .nbc import NbcForest, NbcTree, enumerate_nbc_sets, nbc_edge_profile, nbc_trees_on_block
from .oracle import DEFAULT_MAX_N, DEFAULT_MAX_POINTS, GuardError, charpoly_interpolated, regions_from_charpoly
from .polynomials import IntPolynomial, charpoly_closed_form, charpoly_from_poincare, poincare, region_count
from .verify import DEFAULT_GRID, dumps, verify_grid

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_grid(text: str) -> list[tuple[int, int]]:
    pairs = re.findall(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", text)
    if not pairs:
        raise UsageError(f"cannot parse grid {text!r}; expected e.g. \"(0,0),(0,1)\"")
    return [(int(a), int(b)) for a, b in pairs]


def _parse_primes(text: str | None) -> list[int] | None:
    if not text:
        return None
    try:
        return [int(p) for p in text.replace(" ", "").split(",") if p]
    except ValueError:
        raise UsageError(f"cannot parse prime list {text!r}") from None


def _gains(args: argparse.Namespace) -> tuple[int, int]:
    if args.preset:
        if args.a is not None or args.b is not None:
            raise UsageError("--preset and explicit -a/-b are mutually exclusive")
        return PRESETS[args.preset]
    if args.a is None or args.b is None:
        raise UsageError("give both -a and -b, or a --preset")
    return args.a, args.b


def _guard(args: argparse.Namespace) -> None:
    if args.n is None:
        raise UsageError("-n is required")
    if args.n < 1:
        raise UsageError("-n must be >= 1")
    if args.max_n < 1:
        raise UsageError("--max-n must be positive")
    if args.n > args.max_n:
        raise GuardError(f"n={args.n} exceeds --max-n {args.max_n}")


def _csv(rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _poly_out(fmt: str, label: str, polys: dict[str, IntPolynomial], extra: dict) -> str:
    if fmt == "json":
        body = dict(extra)
        body.update({k: p.to_json() for k, p in polys.items()})
        return json.dumps(body) + "\n"
    if fmt == "csv":
        rows: list[list[object]] = [["kind", "power", "coefficient"]]
        for k, p in polys.items():
            rows.extend([k, i, c] for i, c in enumerate(p.coeffs))
        return _csv(rows)
    return "".join(f"{label} {k}: {p}\n" for k, p in polys.items())


def cmd_regions(args: argparse.Namespace) -> tuple[str, int]:
    a, b = _gains(args)
    n = args.n
    methods = ["formula", "nbc", "charpoly"] if args.cross_check else [args.method]
    values: dict[str, int] = {}
    for m in methods:
        if m == "formula":
            values[m] = region_count(n, a, b)
        elif m == "nbc":
            _guard(args)
            values[m] = nbc_edge_profile(expansion(n, a, b)).total
        else:
            _guard(args)
            chi = charpoly_interpolated(expansion(n, a, b), _parse_primes(args.primes), args.max_points)
            values[m] = regions_from_charpoly(chi, n)
    agree = len(set(values.values())) == 1
    status = EXIT_OK if agree else EXIT_FAIL
    if args.format == "json":
        body = {"n": n, "a": a, "b": b, "regions": {k: str(v) for k, v in values.items()}}
        if args.cross_check:
            body["agree"] = agree
        return json.dumps(body) + "\n", status
    if args.format == "csv":
        return _csv([["method", "regions"]] + [[k, v] for k, v in values.items()]), status
    if len(values) == 1:
        return f"{next(iter(values.values()))}\n", status
    lines = [f"{k}: {v}" for k, v in values.items()]
    lines.append("agree" if agree else "DISAGREE")
    return "\n".join(lines) + "\n", status


def cmd_charpoly(args: argparse.Namespace) -> tuple[str, int]:
    a, b = _gains(args)
    n = args.n
    method = args.method or ("formula" if a + b in (0, 1) else "oracle")
    if method == "formula":
        full = charpoly_closed_form(n, a, b)
    elif method == "nbc":
        _guard(args)
        full = charpoly_from_poincare(poincare(nbc_edge_profile(expansion(n, a, b))), n)
    else:
        _guard(args)
        full = charpoly_interpolated(expansion(n, a, b), _parse_primes(args.primes), args.max_points)
    polys = {"full": full, "reduced": full.shift_down()}
    return _poly_out(args.format, "chi", polys, {"n": n, "a": a, "b": b, "method": method}), EXIT_OK


def cmd_poincare(args: argparse.Namespace) -> tuple[str, int]:
    a, b = _gains(args)
    _guard(args)
    p = poincare(nbc_edge_profile(expansion(args.n, a, b)))
    return _poly_out(args.format, "Poin", {"poincare": p}, {"n": args.n, "a": a, "b": b}), EXIT_OK


def cmd_nbc(args: argparse.Namespace) -> tuple[str, int]:
    a, b = _gains(args)
    _guard(args)
    graph = expansion(args.n, a, b)
    if args.action == "profile":
        prof = nbc_edge_profile(graph)
        if args.format == "json":
            return json.dumps(prof.to_json()) + "\n", EXIT_OK
        if args.format == "csv":
            return _csv([["edges", "forests"]] + [[j, c] for j, c in enumerate(prof.counts)]), EXIT_OK
        return "".join(f"{j}\t{c}\n" for j, c in enumerate(prof.counts)), EXIT_OK
    forests = enumerate_nbc_sets(graph)
    if args.format == "json":
        return json.dumps([f.to_json() for f in forests]) + "\n", EXIT_OK
    if args.format == "csv":
        rows: list[list[object]] = [["forest", "support", "edges", "height"]]
        for i, f in enumerate(forests):
            for t in f.components:
                rows.append(
                    [i, " ".join(map(str, t.support)), " ".join(t.edge_strings()),
                     " ".join(str(t.height[v]) for v in t.support)]
                )
        return _csv(rows), EXIT_OK
    lines = []
    for f in forests:
        lines.append(" | ".join("{" + ", ".join(t.edge_strings()) + "}" for t in f.components))
    return "\n".join(lines) + "\n", EXIT_OK


def _read_stdin_json(stream) -> object:
    text = stream.read()
    if not text.strip():
        raise UsageError("expected JSON on standard input")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON on standard input: {exc}") from None


def _roundtrip(n: int, a: int, b: int) -> tuple[dict, str | None]:
    """Both directions over every NBC tree and every (1-a, b)-tree on [n]."""
    graph = expansion(n, a, b)
    trees = nbc_trees_on_block(graph, range(1, n + 1))
    codes = []
    for t in trees:
        code = bij.encode_tree(t, a, b)
        if bij.decode_tree(code, a, b) != t:
            return {}, f"decode(encode(T)) != T for T = {t.edge_strings()}"
        codes.append(code)
    ab_trees = bij.enumerate_ab_trees(range(1, n + 1), bij.ABParams.from_gains(a, b))
    for code in ab_trees:
        if bij.encode_tree(bij.decode_tree(code, a, b), a, b) != code:
            return {}, f"encode(decode(t)) != t for t = {code.to_json()}"
    if len(set(codes)) != len(codes) or set(codes) != set(ab_trees):
        return {}, "encoded NBC trees and (1-a,b)-trees differ as sets"
    return {"nbc_trees": len(trees), "ab_trees": len(ab_trees)}, None


def cmd_bijection(args: argparse.Namespace, stdin) -> tuple[str, int]:
    a, b = _gains(args)
    if args.action == "roundtrip":
        _guard(args)
        counts, mismatch = _roundtrip(args.n, a, b)
        body = {"n": args.n, "a": a, "b": b, "ok": mismatch is None}
        if mismatch is None:
            body.update(counts)
        else:
            body["first_mismatch"] = mismatch
        status = EXIT_OK if mismatch is None else EXIT_FAIL
        if args.format == "json":
            return json.dumps(body) + "\n", status
        return (f"ok: {counts}\n" if mismatch is None else f"mismatch: {mismatch}\n"), status
    data = _read_stdin_json(stdin)
    # a tree is an object, a forest an array of objects, a forest list an array of arrays
    if args.action == "encode":
        tree, forest = (lambda o: bij.encode_tree(NbcTree.from_json(o), a, b),
                        lambda o: bij.encode_forest(NbcForest.from_json(o), a, b))
    else:
        tree, forest = (lambda o: bij.decode_tree(bij.ABTree.from_json(o), a, b),
                        lambda o: bij.decode_forest(bij.ABForest.from_json(o), a, b))
    if isinstance(data, dict):
        out: object = tree(data).to_json()
    elif isinstance(data, list) and data and all(isinstance(x, list) for x in data):
        out = [forest(f).to_json() for f in data]
    elif isinstance(data, list):
        out = forest(data).to_json()
    else:
        raise UsageError("expected a tree object, a forest array, or an array of forests")
    return json.dumps(out) + "\n", EXIT_OK


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    if args.n is None:
        raise UsageError("-n is required")
    grid = _parse_grid(args.grid) if args.grid else list(DEFAULT_GRID)
    report = verify_grid(
        args.n, grid, _parse_primes(args.primes), args.max_n, args.max_points, args.jobs, args.timing
    )
    status = EXIT_OK if report["all_agree"] else EXIT_FAIL
    if args.format == "csv":
        rows: list[list[object]] = [["n", "a", "b", "regions", "charpoly", "regions_agree", "charpoly_agree", "orders_agree"]]
        for c in report["cells"]:
            rows.append(
                [c["n"], c["a"], c["b"], c["regions"]["nbc_enumeration"], " ".join(c["charpoly"]["interpolated"]),
                 c["agreement"]["regions"], c["agreement"]["charpoly"], c["agreement"]["order_invariance"]]
            )
        return _csv(rows), status
    if args.format == "plain":
        lines = []
        for c in report["cells"]:
            flag = "ok" if all(c["agreement"].values()) else "FAIL"
            lines.append(f"n={c['n']} a={c['a']} b={c['b']} regions={c['regions']['nbc_enumeration']} {flag}")
        lines.append("all agree" if report["all_agree"] else "DISAGREEMENT")
        return "\n".join(lines) + "\n", status
    return dumps(report), status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, help="number of vertices (for verify: largest n in the grid)")
    common.add_argument("-a", type=int, help="lower gain bound")
    common.add_argument("-b", type=int, help="upper gain bound")
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    common.add_argument("--primes", help="comma-separated primes for point counting")
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="enumeration guard")
    common.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS, help="guard on q^n")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="gainnbc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("regions", parents=[common], help="number of regions")
    p.add_argument("--method", choices=["formula", "nbc", "charpoly"], default="formula")
    p.add_argument("--cross-check", action="store_true", help="run every method and compare")

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial, full and reduced")
    p.add_argument("--method", choices=["formula", "nbc", "oracle"])

    sub.add_parser("poincare", parents=[common], help="Poincare polynomial from NBC enumeration")

    p = sub.add_parser("nbc", parents=[common], help="NBC forests")
    p.add_argument("action", choices=["list", "profile"])

    p = sub.add_parser("bijection", parents=[common], help="NBC trees <-> (1-a,b)-trees")
    p.add_argument("action", choices=["encode", "decode", "roundtrip"])

    p = sub.add_parser("verify", parents=[common], help="cross-validate every method over a grid")
    p.add_argument("--grid", help='gain pairs, e.g. "(0,0),(0,1),(-1,1)"')
    p.add_argument("--jobs", type=int, default=4)
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks determinism)")
    return parser


def main(argv: Sequence[str] | None = None, stdin=None, stdout=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "regions": cmd_regions,
        "charpoly": cmd_charpoly,
        "poincare": cmd_poincare,
        "nbc": cmd_nbc,
        "verify": cmd_verify,
    }
    try:
        if args.command == "bijection":
            text, status = cmd_bijection(args, stdin)
        else:
            text, status = handlers[args.command](args)
    except GuardError as exc:
        print(f"gainnbc: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ArithmeticError as exc:
        print(f"gainnbc: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, GainGraphError, bij.BijectionError, ValueError, KeyError, TypeError) as exc:
        print(f"gainnbc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

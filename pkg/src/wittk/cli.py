"""Command-line front end: ``wittk <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 resource bound
exceeded, 4 a self-test criterion failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import nerve
from .abgroup import format_group
from .errors import DomainError, ResourceError, UsageError
from .ktheory import (
    DEFAULT_MAX_ORDER_BITS,
    DEFAULT_ORACLE_BOUND,
    guard_order_bits,
    k_group,
    k_group_even,
    ses_diagram_check,
    tower_cyclotomic,
    tower_fermat,
    unit_group_oracle,
    v_map,
)
from .truncation import TruncationSet, p_typical_lengths
from .witt import (
    WittVector,
    decompose,
    frobenius,
    ghost,
    require_prime,
    restrict,
    verschiebung,
)

EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_SELFTEST = 1, 2, 3, 4
WITT_OPS = ("ghost", "add", "mul", "F", "V", "restrict", "decompose")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    numeric = [all(r[i].lstrip("-").isdigit() for r in cells[1:]) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) if num else c.ljust(w) for c, w, num in zip(r, widths, numeric)).rstrip()
             for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(args, data: dict, text: str):
    print(json.dumps(data, sort_keys=True) if args.json else text)


def _matrix_text(M) -> str:
    if not M or not M[0]:
        return "  (empty)"
    width = max(len(str(x)) for row in M for x in row)
    return "\n".join("  [" + " ".join(str(x).rjust(width) for x in row) + "]" for row in M)


# -- witt -------------------------------------------------------------------------

def _vector(text: str | None, S: TruncationSet, modulus: int, flag: str) -> WittVector:
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        coeffs = [int(c) for c in text.replace(" ", "").split(",") if c != ""]
    except ValueError:
        raise UsageError(f"malformed coefficient list {text!r}") from None
    return WittVector.make(S, coeffs, modulus)


def _vector_data(a: WittVector) -> dict:
    return {"coeffs": list(a.coeffs), "modulus": a.modulus, "set": list(a.set.elements)}


def _vector_text(a: WittVector) -> str:
    ring = "Z" if a.modulus == 0 else f"Z/{a.modulus}"
    return f"W_{a.set}({ring})\n" + table(["s", "a_s"], [[s, c] for s, c in zip(a.set, a.coeffs)])


def cmd_witt(args) -> int:
    S = TruncationSet.parse(args.set)
    a = _vector(args.a, S, args.modulus, "--a")
    op = args.op
    if op == "ghost":
        g = ghost(a)
        data = {"ghost": [str(x) for x in g.values], "set": list(S.elements)}
        _emit(args, data, table(["s", "w_s"], [[s, x] for s, x in zip(S, g.values)]))
        return 0
    if op in ("add", "mul"):
        b = _vector(args.b, S, args.modulus, "--b")
        out = a + b if op == "add" else a * b
    elif op in ("F", "V"):
        if args.n is None:
            raise UsageError("--n is required")
        if op == "F":
            out = frobenius(args.n, a)
        else:
            if args.target is None:
                raise UsageError("--target is required for V")
            out = verschiebung(args.n, a, TruncationSet.parse(args.target))
    elif op == "restrict":
        if args.target is None:
            raise UsageError("--target is required for restrict")
        out = restrict(a, TruncationSet.parse(args.target))
    else:
        p = args.p if args.p is not None else a.modulus
        require_prime(p)
        parts = decompose(a, p)
        lengths = p_typical_lengths(S, p)
        data = {"components": [{"j": j, "length": lengths[j], "value": v} for j, v in parts.items()],
                "p": p, "set": list(S.elements)}
        rows = [[j, lengths[j], f"Z/{p ** lengths[j]}", v] for j, v in parts.items()]
        _emit(args, data, table(["j", "t_j", "group", "value"], rows))
        return 0
    _emit(args, _vector_data(out), _vector_text(out))
    return 0


# -- K-theory ------------------------------------------------------------------------

def _guard(args, p: int, size: int):
    require_prime(p)
    guard_order_bits(p, size, args.max_order_bits)


def cmd_kgroup(args) -> int:
    _guard(args, args.p, args.j * args.m)
    rep = (k_group_even if args.even else k_group)(args.p, args.m, args.j)
    text = str(rep)
    if rep.components:
        rows = [[e, t, f"Z/{args.p ** t}"] for e, t in rep.components]
        text += "\nambient W_{%d}(F_%d):\n" % (args.j * args.m, args.p) + table(["j", "t_j", "group"], rows)
    _emit(args, rep.to_dict(), text)
    return 0


def cmd_vmap(args) -> int:
    _guard(args, args.p, args.j * args.m * args.n)
    f = v_map(args.p, args.m, args.n, args.j)
    src = k_group(args.p, args.m, args.j)
    tgt = k_group(args.p, args.m * args.n, args.j)
    data = {
        "cokernel_order": str(f.cokernel().order), "image_order": str(f.image_order),
        "injective": f.is_injective, "j": args.j, "m": args.m, "matrix": f.matrix, "n": args.n,
        "p": args.p, "source": src.invariant_factors, "target": tgt.invariant_factors,
    }
    text = "\n".join([
        f"v_{args.n}: {src}",
        f"  -> {tgt}",
        f"injective: {f.is_injective}   image order: {f.image_order}   cokernel order: {f.cokernel().order}",
        "matrix on p-typical coordinates:",
        _matrix_text(f.matrix),
    ])
    _emit(args, data, text)
    return 0


def cmd_ses(args) -> int:
    _guard(args, args.p, args.j * args.m * args.n)
    rep = ses_diagram_check(args.p, args.m, args.n, args.j)
    rows = [
        ["top row exact", rep.top_row.exact],
        ["bottom row exact", rep.bottom_row.exact],
        ["left square (Witt vectors)", rep.left_square_witt],
        ["left square (matrices)", rep.left_square_matrix],
        ["right square", rep.right_square],
        ["v_n injective", rep.v_injective],
    ]
    head = f"p={args.p} m={args.m} n={args.n} j={args.j}: {'ok' if rep.ok else 'FAILED'}"
    _emit(args, rep.to_dict(), head + "\n" + table(["check", "holds"], rows))
    return 0


def cmd_tower(args) -> int:
    build = tower_fermat if args.kind == "fermat" else tower_cyclotomic
    stages = build(args.p, args.j, args.stages, args.max_order_bits)
    data = {"j": args.j, "kind": args.kind, "p": args.p, "stages": [s.to_dict() for s in stages]}
    rows = []
    for s in stages:
        inj = "-" if s.transition is None else ("yes" if s.transition_injective else "NO")
        rows.append([s.index, s.report.m, s.report.order, format_group(s.report.invariant_factors), inj])
    text = f"{args.kind} tower, p={args.p}, j={args.j}, degree {2 * args.j - 1}\n"
    text += table(["n", "m", "order", "group", "injective into n+1"], rows)
    _emit(args, data, text)
    return 0


def cmd_oracle(args) -> int:
    bound = min(DEFAULT_ORACLE_BOUND, 2**args.max_order_bits)
    factors = unit_group_oracle(args.p, args.m, bound)
    data = {"invariant_factors": factors, "m": args.m, "p": args.p}
    _emit(args, data, f"(1 + x F_{args.p}[x]/(x^{args.m}))^* = {format_group(factors)}")
    return 0


# -- nerve -------------------------------------------------------------------------

def cmd_nerve(args) -> int:
    k, i = args.k, args.i
    counts = nerve.cell_counts(k, i)
    groups = {r: nerve.homology_model(k, i, r).group for r in range(i + 1)}
    hom = [{"degree": r, "factors": nerve.group_factors(G)} for r, G in groups.items() if not G.is_trivial]
    data = {"cells": counts, "euler": nerve.euler_check(k, i), "homology": hom, "i": i, "k": k,
            "predicted": [{"degree": r, "factors": f} for r, f in sorted(nerve.predicted_homology(k, i).items())]}
    pred = nerve.predicted_homology(k, i)
    rows = []
    for r in range(i + 1):
        G = groups[r]
        rows.append([r, counts[r], format_group(G.invariant_factors, G.free_rank),
                     format_group(*_split(pred.get(r, [])))])
    text = f"N^cy(Π_{k}), weight {i}   Euler characteristic {data['euler']}\n"
    text += table(["degree", "cells", "homology", "predicted"], rows)

    if args.map_n is not None:
        g = nerve.g_chain_map(k, i, args.map_n)
        tk, ti = g.target
        maps = []
        lines = [f"\npower map x -> x^{args.map_n} into N^cy(Π_{tk}), weight {ti}"]
        for r in range(i + 1):
            if groups[r].is_trivial:
                continue
            f = g.induced(r)
            entry = {"cokernel": nerve.group_factors(f.cokernel()), "degree": r,
                     "injective": f.is_injective, "matrix": f.matrix,
                     "source": nerve.group_factors(f.source), "target": nerve.group_factors(f.target)}
            maps.append(entry)
            lines.append(f"H_{r}: {format_group(*_split(entry['source']))} -> "
                         f"{format_group(*_split(entry['target']))}, injective={f.is_injective}, "
                         f"cokernel {format_group(*_split(entry['cokernel']))}")
        data["map"] = {"commutes": g.commutes(), "degrees": maps, "n": args.map_n,
                       "target": {"i": ti, "k": tk}}
        text += "\n".join(lines)
    _emit(args, data, text)
    return 0


def _split(factors):
    return [d for d in factors if d], sum(1 for d in factors if d == 0)


# -- selftest ------------------------------------------------------------------------

def cmd_selftest(args) -> int:
    from .selftest import run_all

    results = run_all(quick=args.quick, only=args.only)
    if args.json:
        print(json.dumps({"passed": all(r.passed for r in results),
                          "results": [r.to_dict() for r in results]}, sort_keys=True))
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.passed for r in results) else EXIT_SELFTEST


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON with sorted keys")
    common.add_argument("--max-order-bits", type=int, default=DEFAULT_MAX_ORDER_BITS,
                        help="refuse Witt groups with more than 2^BITS elements (default %(default)s)")

    parser = _Parser(prog="wittk", description="Big Witt vectors, K-groups of F_p[x]/(x^m) and cyclic bar homology.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    w = sub.add_parser("witt", parents=[common], help="operate on explicit Witt vectors")
    w.add_argument("op", choices=WITT_OPS)
    w.add_argument("--set", required=True, help="truncation set, e.g. 1..6 or {1,2,3,4,6}")
    w.add_argument("--modulus", type=int, default=0, help="coefficient ring Z/m (0 means Z)")
    w.add_argument("--a", help="comma-separated coefficients, in set order")
    w.add_argument("--b", help="second operand for add and mul")
    w.add_argument("--n", type=int, help="index for F and V")
    w.add_argument("--target", help="target set for V and restrict")
    w.add_argument("--p", type=int, help="prime for decompose (defaults to the modulus)")
    w.set_defaults(func=cmd_witt)

    k = sub.add_parser("kgroup", parents=[common], help="K_{2j-1}(F_p[x]/(x^m), (x))")
    for flag in ("--p", "--m", "--j"):
        k.add_argument(flag, type=int, required=True)
    k.add_argument("--even", action="store_true", help="report K_{2j} instead")
    k.set_defaults(func=cmd_kgroup)

    for name, func, helptext in (("vmap", cmd_vmap, "the power map v_n on K_{2j-1}"),
                                 ("ses", cmd_ses, "check the diagram of short exact sequences")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        for flag in ("--p", "--m", "--n", "--j"):
            s.add_argument(flag, type=int, required=True)
        s.set_defaults(func=func)

    t = sub.add_parser("tower", parents=[common], help="finite stages of the Fermat or cyclotomic tower")
    t.add_argument("--kind", choices=("fermat", "cyclotomic"), required=True)
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--j", type=int, default=1)
    t.add_argument("--stages", type=int, required=True)
    t.set_defaults(func=cmd_tower)

    n = sub.add_parser("nerve", parents=[common], help="homology of the cyclic bar construction of Π_k")
    n.add_argument("--k", type=int, required=True)
    n.add_argument("--i", type=int, required=True)
    n.add_argument("--map-n", type=int, help="also report the map induced by x -> x^N")
    n.set_defaults(func=cmd_nerve)

    o = sub.add_parser("oracle", parents=[common], help="brute-force principal units of F_p[x]/(x^m)")
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--m", type=int, required=True)
    o.set_defaults(func=cmd_oracle)

    st = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    st.add_argument("--quick", action="store_true", help="smaller grids")
    st.add_argument("--only", type=int, nargs="+", metavar="N", help="run only these criteria")
    st.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"wittk: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"wittk: resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"wittk: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())

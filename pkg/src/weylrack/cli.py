"""Command-line interface.

Subcommands: classes, typed, sq, nichols, fk, verify.  Elements use the
"BITS:CYCLES" format everywhere, e.g. "101:(1 2 3)"; the identity is "0:()".
Output is deterministic: JSON is emitted with sorted keys and no timestamps.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Optional

from . import __version__, fk, yd
from .cache import ResultCache
from .classes import all_classes, centralizer, enumerate_class
from .classify import classify
from .cyclotomic import CyclotomicField
from .rack import sq, sq_formula_commuting, sq_formula_general
from .signed import GroupKind, format_element, multiply, parse_element
from .suites import SUITES, run_suite


def _group(value: str) -> GroupKind:
    try:
        return GroupKind(value.upper())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown group {value!r}; use B, D, or S")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylrack",
        description="Exact computations with conjugation racks of signed permutations.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--budget", type=int, default=None, help="search budget override")
    parser.add_argument("--cache-dir", default=None, help="directory for the JSONL result cache")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classes", parents=[common], help="conjugacy classes of a group")
    p.add_argument("--group", type=_group, default=GroupKind.B)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", default=None, help="element BITS:CYCLES; restrict to its class")

    p = sub.add_parser("typed", parents=[common], help="decide a type-D decomposition for a class")
    p.add_argument("--group", type=_group, default=GroupKind.B)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", required=True, help="class representative, BITS:CYCLES")

    p = sub.add_parser("sq", parents=[common], help="the squaring operation x |> (y |> (x |> y))")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("nichols", parents=[common], help="graded dimensions from a class and character")
    p.add_argument("--group", type=_group, default=GroupKind.B)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", required=True, help="class representative, BITS:CYCLES")
    p.add_argument(
        "--char",
        required=True,
        help="'trivial', 'sign', or comma-separated scalar values "
        "(1, -1, or zetaM^K) for the centralizer generators",
    )
    p.add_argument("--max-degree", type=int, default=6)

    p = sub.add_parser("fk", parents=[common], help="graded dimensions of a quadratic algebra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=12)
    p.add_argument("--signs", default=None, help="JSON file with alpha/beta/gamma/lambda maps")
    p.add_argument("--engine", choices=("linear", "rewrite", "both"), default="both")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--params", default=None, help="JSON dict of suite parameters")
    return parser


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _cached(args, command: str, inputs: dict, compute):
    cache = ResultCache(args.cache_dir, __version__) if args.cache_dir else None
    if cache is not None:
        hit = cache.get(command, inputs)
        if hit is not None and not hit.stale:
            return dict(hit.payload), True
    t0 = time.monotonic()
    payload = compute()
    if cache is not None:
        cache.put(command, inputs, payload, int((time.monotonic() - t0) * 1000))
    return payload, False


def _cmd_classes(args) -> int:
    kind, n = args.group, args.n
    if args.rep:
        classes = [enumerate_class(kind, parse_element(args.rep))]
    else:
        classes = all_classes(kind, n)
    rows = []
    for cls in classes:
        cen = centralizer(kind, cls.rep, cls)
        rows.append(
            {
                "rep": format_element(cls.rep),
                "size": cls.size,
                "signed_type": str(cls.rep.signed_cycle_type()),
                "centralizer_order": cen.order,
            }
        )
    payload = {"group": kind.value, "n": n, "classes": rows, "count": len(rows)}
    _emit(
        args,
        payload,
        [f"{kind.value}_{n}: {len(rows)} classes"]
        + [
            f"  {r['rep']:<24} size {r['size']:<6} "
            f"centralizer {r['centralizer_order']:<6} {r['signed_type']}"
            for r in rows
        ],
    )
    return 0


def _cmd_typed(args) -> int:
    x = parse_element(args.rep)
    if x.n != args.n:
        raise SystemExit("--n disagrees with the rank of --rep")
    budget = {"max_pairs": args.budget} if args.budget else None
    inputs = {"group": args.group.value, "n": args.n, "rep": format_element(x)}
    payload, cached = _cached(
        args, "typed", inputs, lambda: classify(args.group, x, budget).to_json()
    )
    payload = {**payload, "cached": cached}
    _emit(
        args,
        payload,
        [
            f"{format_element(x)} in {args.group.value}_{args.n}: {payload['status']}"
            + (f" [{payload['exception_case']}]" if payload.get("exception_case") else "")
            + (" (cached)" if cached else "")
        ],
    )
    return 0


def _cmd_sq(args) -> int:
    x, y = parse_element(args.x), parse_element(args.y)
    if x.n != y.n:
        raise SystemExit("elements must share a rank")
    value = sq(x, y)
    general = sq_formula_general(x, y)
    commuting = None
    if multiply(x, y) == multiply(y, x):
        commuting = sq_formula_commuting(x, y)
    payload = {
        "x": format_element(x),
        "y": format_element(y),
        "sq": format_element(value),
        "general_formula": format_element(general),
        "formulas_agree": general == value and (commuting in (None, value)),
    }
    if commuting is not None:
        payload["commuting_formula"] = format_element(commuting)
    _emit(args, payload, [f"sq = {payload['sq']} (formulas agree: {payload['formulas_agree']})"])
    return 0


def _parse_char(spec: str, cen, default_field: int = 2):
    if spec == "trivial":
        F = CyclotomicField(default_field)
        return F, yd.trivial_rep(cen, F)
    if spec == "sign":
        F = CyclotomicField(default_field)
        return F, yd.perm_sign_rep(cen, F)
    tokens = [t.strip() for t in spec.split(",")]
    modulus = default_field
    parsed = []
    for tok in tokens:
        if tok.startswith("zeta"):
            base, _, power = tok[4:].partition("^")
            m, k = int(base), int(power or 1)
            parsed.append(("zeta", m, k))
            modulus = math.lcm(modulus, m)
        else:
            parsed.append(("int", int(tok), 0))
    F = CyclotomicField(modulus)
    values = []
    for kind_, a, b in parsed:
        if kind_ == "int":
            values.append(F.scalar(a))
        else:
            values.append(F.zeta(b * (modulus // a)))
    return F, yd.scalar_rep(cen, F, values)


def _cmd_nichols(args) -> int:
    x = parse_element(args.rep)
    if x.n != args.n:
        raise SystemExit("--n disagrees with the rank of --rep")
    inputs = {
        "group": args.group.value,
        "n": args.n,
        "rep": format_element(x),
        "char": args.char,
        "max_degree": args.max_degree,
    }

    def compute():
        cls = enumerate_class(args.group, x)
        cen = centralizer(args.group, x, cls)
        _, rep = _parse_char(args.char, cen)
        module = yd.build_yd_module(cls, rep)
        space = module.braided_space()
        dims = yd.nichols_graded_dims(space, args.max_degree)
        return {
            "class_size": cls.size,
            "braided_dim": module.D,
            "graded_dims": dims,
            "total": sum(dims),
            "terminated": len(dims) <= args.max_degree,
        }

    payload, cached = _cached(args, "nichols", inputs, compute)
    payload = {**payload, "cached": cached}
    _emit(
        args,
        payload,
        [
            f"graded dims: {payload['graded_dims']} (total {payload['total']}, "
            f"{'terminated' if payload['terminated'] else 'truncated'})"
        ],
    )
    return 0


def _cmd_fk(args) -> int:
    if args.signs:
        with open(args.signs, "r", encoding="utf-8") as fh:
            raw = json.load(fh)

        def sign_map(key):
            v = raw.get(key, 1 if key != "gamma" else -1)
            if isinstance(v, dict):
                return {tuple(map(int, k.split(","))): s for k, s in v.items()}
            return v

        pres = fk.presentation(
            args.n, sign_map("alpha"), sign_map("beta"), sign_map("gamma"), sign_map("lambda")
        )
    else:
        pres = fk.fk_presentation(args.n)
    inputs = {"n": args.n, "max_degree": args.max_degree, "engine": args.engine,
              "signs": args.signs or ""}

    def compute():
        engines = ("linear", "rewrite") if args.engine == "both" else (args.engine,)
        dims_by = {e: fk.graded_dims(pres, args.max_degree, engine=e) for e in engines}
        dims = dims_by[engines[0]]
        probe = fk.finiteness_probe(pres, args.max_degree, engines[0])
        return {
            "label": pres.label,
            "graded_dims": dims,
            "total": sum(dims),
            "engines_agree": len(set(map(tuple, dims_by.values()))) == 1,
            "probe": probe.to_json(),
            "forced_constraints": pres.forced_constraints,
        }

    payload, cached = _cached(args, "fk", inputs, compute)
    payload = {**payload, "cached": cached}
    _emit(
        args,
        payload,
        [
            f"{payload['label']}: dims {payload['graded_dims']} total {payload['total']} "
            f"probe {payload['probe']['status']}"
        ],
    )
    return 0 if payload["engines_agree"] else 1


def _cmd_verify(args) -> int:
    params = json.loads(args.params) if args.params else {}
    report = run_suite(args.suite, params, seed=args.seed)
    _emit(
        args,
        report,
        [f"suite {report['suite']}: {'PASS' if report['passed'] else 'FAIL'}"]
        + [
            f"  [{'ok' if c['passed'] else 'FAIL'}] {c['name']} ({c['tag']})"
            for c in report["checks"]
        ],
    )
    return 0 if report["passed"] else 1


_COMMANDS = {
    "classes": _cmd_classes,
    "typed": _cmd_typed,
    "sq": _cmd_sq,
    "nichols": _cmd_nichols,
    "fk": _cmd_fk,
    "verify": _cmd_verify,
}


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point ``weid``.

Exit codes: 0 clean, 2 discrepancy (or oracle disagreement, or conjecture
hit), 3 budget exhausted on a required computation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .cm import DEFAULT_MONOMIAL_BUDGET, depth_monomial, is_cm_reisner
from .complexes import BudgetExceeded
from .criteria import (
    complete_core_all_n,
    dif_nonCM_threshold,
    path3_all_n,
    pn_bound,
    power_ell_criterion,
    square_cm_criterion,
    star_all_n,
    tree_necessary,
)
from .decomposition import DecompositionError, height, is_unmixed, primary_decomposition, symbolic_power
from .graphs import GraphError, WeightedGraph, edge_ideal, find_vwc_labeling
from .harness import FAMILIES, SweepReport, SweepSpec, search_conjecture, sweep
from .linalg import FieldConfig
from .monomial import MonomialIdeal, power

EXIT_OK = 0
EXIT_DISCREPANCY = 2
EXIT_BUDGET = 3
CLI_FACE_BUDGET = 1 << 20  # the library default of 2^24 can take many minutes
THEOREMS = ("square", "powers", "pendant-bound", "path3", "star", "complete", "tree-necessary", "equal-weights")


def _load(path: str) -> dict:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return json.loads(text)


def _ideal(args) -> MonomialIdeal:
    if bool(args.ideal) == bool(args.graph):
        raise SystemExit("give exactly one of --ideal or --graph")
    I = MonomialIdeal.from_json(_load(args.ideal)) if args.ideal else edge_ideal(WeightedGraph.from_json(_load(args.graph)))
    n = getattr(args, "power", 1)
    return power(I, n) if n != 1 else I


def _emit(obj, fmt: str, table) -> None:
    if fmt == "table":
        print(table(obj))
    else:
        print(json.dumps(obj, indent=1, sort_keys=True))


def _kv_table(obj: dict) -> str:
    width = max((len(k) for k in obj), default=0)
    return "\n".join(f"{k:<{width}}  {json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in obj.items())


# -- subcommands ------------------------------------------------------------------


def cmd_check_cm(args) -> int:
    I = _ideal(args)
    field = FieldConfig.parse(args.field)
    start = time.perf_counter()
    verdicts = {}
    code = EXIT_OK
    for method in ("depth", "reisner") if args.method == "both" else (args.method,):
        try:
            if method == "depth":
                verdicts[method] = depth_monomial(I, field, args.budget_monomials)
            else:
                verdicts[method] = is_cm_reisner(I, field, args.budget_faces)
        except BudgetExceeded as exc:
            verdicts[method] = exc
    ok = [v for v in verdicts.values() if not isinstance(v, BudgetExceeded)]
    if not ok:
        out = {"is_cm": None, "method": args.method, "error": "; ".join(str(v) for v in verdicts.values())}
        _emit(out, args.format, _kv_table)
        return EXIT_BUDGET
    main = ok[0]
    out = {
        "is_cm": main.is_cm,
        "unmixed": is_unmixed(I),
        "depth": main.depth,
        "dim": main.dim,
        "witness": None if main.witness is None else str(main.witness),
        "method": args.method,
        "elapsed_ms": round(1000 * (time.perf_counter() - start), 1),
    }
    if args.method == "both":
        out["oracles"] = {
            m: ({"budget_exceeded": str(v)} if isinstance(v, BudgetExceeded) else v.to_json())
            for m, v in verdicts.items()
        }
        if len(ok) == 2 and ok[0].is_cm != ok[1].is_cm:
            out["disagreement"] = True
            code = EXIT_DISCREPANCY
    _emit(out, args.format, _kv_table)
    return code


def _decomposition_json(I: MonomialIdeal) -> dict:
    D = primary_decomposition(I)
    return {
        "components": [
            {"prime": sorted(c.prime, key=I.variables.index), "generators": c.ideal.to_json()["generators"]}
            for c in D.components
        ],
        "unmixed": is_unmixed(I),
        "height": height(I),
    }


def _decomposition_table(obj: dict) -> str:
    lines = [f"height {obj['height']}, unmixed {obj['unmixed']}"]
    for c in obj["components"]:
        gens = ", ".join("*".join(f"{v}^{e}" if e > 1 else v for v, e in g.items()) for g in c["generators"])
        lines.append(f"  ({', '.join(c['prime'])}):  ({gens})")
    return "\n".join(lines)


def cmd_decompose(args) -> int:
    _emit(_decomposition_json(_ideal(args)), args.format, _decomposition_table)
    return EXIT_OK


def cmd_symbolic(args) -> int:
    args.power = 1
    I = _ideal(args)
    S = symbolic_power(I, args.n)
    P = power(I, args.n)
    out = {"n": args.n, "symbolic_power": S.to_json(), "equals_ordinary_power": S == P}
    _emit(out, args.format, _kv_table)
    return EXIT_OK


def _criteria(G: WeightedGraph, theorem: Optional[str], ell: int) -> dict:
    wanted = [theorem] if theorem else list(THEOREMS)
    out = {}
    for name in wanted:
        try:
            if name in ("square", "powers"):
                L = find_vwc_labeling(G)
                if L is None:
                    raise GraphError("graph has no (*) labeling")
                rep = square_cm_criterion(G, L) if name == "square" else power_ell_criterion(G, L, ell)
                out[name] = rep.to_json()
            elif name == "pendant-bound":
                out[name] = {"theorem": "pendant-bound", "k_max": pn_bound(G)}
            elif name == "equal-weights":
                out[name] = {"theorem": "equal-core-weights", "n0": dif_nonCM_threshold(G)}
            else:
                fn = {
                    "path3": path3_all_n,
                    "star": star_all_n,
                    "complete": complete_core_all_n,
                    "tree-necessary": tree_necessary,
                }[name]
                out[name] = fn(G).to_json()
        except (GraphError, ValueError) as exc:
            if theorem:
                raise
            out[name] = {"applicable": False, "reason": str(exc)}
    return out[theorem] if theorem else out


def cmd_criteria(args) -> int:
    G = WeightedGraph.from_json(_load(args.graph))
    _emit(_criteria(G, args.theorem, args.ell), args.format, _kv_table)
    return EXIT_OK


def _spec(args) -> SweepSpec:
    return SweepSpec(
        family=args.family,
        sizes=tuple(args.sizes),
        max_weight=args.max_weight,
        max_power=args.max_power,
        method=args.method,
        budget_monomials=args.budget_monomials,
        budget_faces=args.budget_faces,
        seed=args.seed,
        samples=args.samples,
        field=FieldConfig.parse(args.field),
        select=args.select,
        metamorphic=not args.no_metamorphic,
        spot_checks=args.spot_checks,
    )


def _report_table(obj: dict) -> str:
    s = obj["summary"]
    lines = [
        f"{obj['kind']}  family={obj['spec']['family']}  instances={s['instances']}",
        f"discrepancies={s['discrepancies']}  budget_skips={s['budget_skips']}  hits={s['hits']}  unconfirmed={s['unconfirmed']}",
    ]
    if s["checks"]:
        width = max(len(k) for k in s["checks"])
        lines.append(f"{'check':<{width}}  passed  failed")
        for k, v in s["checks"].items():
            lines.append(f"{k:<{width}}  {v['passed']:>6}  {v['failed']:>6}")
    for d in obj["discrepancies"][:20]:
        lines.append(f"DISCREPANCY #{d['index']} {d['check']['check']}: {json.dumps(d['graph'])}")
    for h in obj["hits"][:20]:
        lines.append(f"HIT #{h['index']} {h['where']}: {json.dumps(h['graph'])}")
    return "\n".join(lines)


def _finish(report: SweepReport, args) -> int:
    obj = report.to_json()
    if args.out:
        Path(args.out).write_text(report.dumps() + "\n")
        obj = {k: v for k, v in obj.items() if k != "instances"}
    _emit(obj, args.format, _report_table)
    if report.discrepancies or report.hits:
        return EXIT_DISCREPANCY
    if report.budget_skips:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_sweep(args) -> int:
    return _finish(sweep(_spec(args)), args)


def cmd_search(args) -> int:
    return _finish(search_conjecture(args.conjecture, _spec(args)), args)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weid", description="Cohen-Macaulay powers of weighted edge ideals")
    p.add_argument("--format", choices=("json", "table"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def common_oracle(q):
        q.add_argument("--field", default="q", help="q (rationals) or fp:<p>")
        q.add_argument("--budget-faces", type=int, default=CLI_FACE_BUDGET)
        q.add_argument("--budget-monomials", type=int, default=DEFAULT_MONOMIAL_BUDGET)

    def source(q, with_power=True):
        q.add_argument("--ideal", help="ideal JSON file ('-' for stdin)")
        q.add_argument("--graph", help="weighted graph JSON file ('-' for stdin)")
        if with_power:
            q.add_argument("--power", type=int, default=1)

    q = sub.add_parser("check-cm", help="decide Cohen-Macaulayness of an ideal or a power of an edge ideal")
    source(q)
    q.add_argument("--method", choices=("depth", "reisner", "both"), default="both")
    common_oracle(q)
    q.set_defaults(func=cmd_check_cm)

    q = sub.add_parser("decompose", help="irredundant primary decomposition")
    source(q)
    q.set_defaults(func=cmd_decompose)

    q = sub.add_parser("symbolic", help="symbolic power")
    source(q, with_power=False)
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=cmd_symbolic)

    q = sub.add_parser("criteria", help="evaluate weight criteria on a graph")
    q.add_argument("--graph", required=True)
    q.add_argument("--theorem", choices=THEOREMS)
    q.add_argument("--ell", type=int, default=2)
    q.set_defaults(func=cmd_criteria)

    for name, fn in (("sweep", cmd_sweep), ("search", cmd_search)):
        q = sub.add_parser(name, help=f"{name} over an instance family")
        if name == "search":
            q.add_argument("--conjecture", choices=("vwc-square", "tree-converse"), required=True)
        q.add_argument("--family", choices=FAMILIES, required=True)
        q.add_argument("--sizes", type=int, nargs="+", default=[3], help="core sizes t")
        q.add_argument("--max-weight", type=int, default=5)
        q.add_argument("--max-power", type=int, default=3)
        q.add_argument("--method", choices=("depth", "reisner", "both"), default="both")
        q.add_argument("--select", choices=("all", "hypothesis", "violated"), default="all")
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--samples", type=int, default=20, help="random instances (tree family)")
        q.add_argument("--no-metamorphic", action="store_true")
        q.add_argument("--spot-checks", type=int, default=100, help="exponent-cap samples per run")
        q.add_argument("--out", help="write the full report here")
        q.add_argument("--field", default="q")
        q.add_argument("--budget-faces", type=int, default=1 << 13)
        q.add_argument("--budget-monomials", type=int, default=DEFAULT_MONOMIAL_BUDGET)
        q.set_defaults(func=fn)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, DecompositionError, ValueError) as exc:
        parser.exit(1, f"weid: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point: ``rwlab {gen,enum-family,reduce,solve,verify,roundtrip,separation}``.

Every command writes a JSON document to ``--out`` (default stdout). Exit codes:
0 pass, 1 assertion failure, 2 input error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .bundle import ReductionBundle
from .decomposition import find_balanced_cut_edge, linear_width, random_branch_tree
from .errors import PreconditionError, ResourceLimitError
from .formula import CnfFormula, Literal, parse_dimacs, pad_to_square
from .gf2 import cut_rank_masks
from .graph import Graph
from .oracles import (
    FOREST_CAP, MIM_CAP, MWDS_CAP, MWIS_CAP, SAT_CAP,
    max_induced_forest, max_induced_matching,
    max_weight_independent_set, min_weight_dominating_set, sat_enumerate,
)
from .reduce_is import build_is_instance, make_unweighted
from .reduce_mim_fvs import from_is_bundle
from .reduce_wds import build_wds_instance, decode_optima
from .separation import build_separation_instance, measure_cut_boolean_dimension
from .universal_cut import (
    enumerate_family, verify_distinct_neighborhoods, verify_family_equivalence,
    verify_neighborhood_size, verify_private_neighbors,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
REPORT_SCHEMA = "rwlab.report/1"
DEFAULT_FAMILY_GUARD = 4


# ---------- helpers


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def load_formula(path: str) -> CnfFormula:
    raw, n_vars = parse_dimacs(read_text(path))
    return pad_to_square(raw, n_vars).padded()


def random_formula(k: int, m: int, rng: random.Random) -> CnfFormula:
    """Clauses of 1 to 3 uniformly random grid literals; short clauses make unsatisfiable draws likely."""
    clauses = []
    for _ in range(m):
        length = rng.choice((1, 2, 3))
        clauses.append(tuple(
            Literal(rng.randint(1, k), rng.randint(k + 1, 2 * k), rng.random() < 0.5) for _ in range(length)
        ))
    return CnfFormula(k, tuple(clauses))


def build_bundles(problem: str, phi: CnfFormula, unweighted: bool = False) -> ReductionBundle:
    if problem == "is":
        b = build_is_instance(phi)
        return make_unweighted(b) if unweighted else b
    if problem in ("mim", "fvs"):
        mim, fvs = from_is_bundle(make_unweighted(build_is_instance(phi)))
        return mim if problem == "mim" else fvs
    if problem == "wds":
        return build_wds_instance(phi)
    raise PreconditionError(f"unknown problem {problem!r}")


def solve_bundle(bundle: ReductionBundle, cap: int | None = None) -> tuple[int, list[str]]:
    construction = bundle.meta.get("construction")
    if construction == "is":
        value, witness = max_weight_independent_set(bundle.instance, cap or MWIS_CAP)
    elif construction == "wds":
        value, witness = min_weight_dominating_set(bundle.instance, cap or MWDS_CAP)
    elif construction == "mim":
        value, edges = max_induced_matching(bundle.graph, cap or MIM_CAP)
        return value, [f"{u}-{v}" for u, v in edges]
    elif construction == "fvs":
        value, witness = max_induced_forest(bundle.graph, cap or FOREST_CAP)
    else:
        raise PreconditionError(f"bundle construction {construction!r} has no oracle")
    return value, sorted(map(str, witness))


def emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out and out != "-":
        Path(out).write_text(text + "\n")
    else:
        print(text)


def report(args: argparse.Namespace, **body: Any) -> dict:
    params = {k: v for k, v in vars(args).items() if k not in ("func",)}
    return {"schema": REPORT_SCHEMA, "tool": "rwlab", "version": __version__, "command": args.command, "params": params, **body}


# ---------- commands


def cmd_gen(args: argparse.Namespace) -> int:
    if args.what == "cnf":
        phi = random_formula(args.k, args.m, random.Random(args.seed))
        text = phi.to_dimacs()
        if args.out and args.out != "-":
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_PASS
    raise PreconditionError(f"unknown generator {args.what!r}")


def cmd_enum_family(args: argparse.Namespace) -> int:
    family = sorted(enumerate_family(args.k, guard=args.guard), key=lambda c: (len(c), c.members))
    emit(report(args, k=args.k, size=len(family), family=[str(c) for c in family], ok=True), args.out)
    return EXIT_PASS


def cmd_reduce(args: argparse.Namespace) -> int:
    phi = load_formula(args.cnf)
    bundle = build_bundles(args.problem, phi, args.unweighted)
    text = bundle.to_json(indent=None)
    if args.out and args.out != "-":
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_PASS


def cmd_solve(args: argparse.Namespace) -> int:
    text = read_text(args.input)
    if args.problem == "sat":
        raw, n_vars = parse_dimacs(text)
        phi = pad_to_square(raw, n_vars)
        res = sat_enumerate(phi, args.cap or SAT_CAP)
        model = None if res.model is None else {f"v{i},{j}": x for (i, j), x in sorted(res.model.items())}
        emit(report(args, satisfiable=res.satisfiable, count=res.count, model=model, ok=True), args.out)
        return EXIT_PASS
    bundle = ReductionBundle.from_json(text)
    wanted = {"mwis": "is", "mwds": "wds", "mim": "mim", "forest": "fvs"}[args.problem]
    bundle = ReductionBundle(bundle.instance, bundle.target, bundle.sense, bundle.order, bundle.width_bound,
                             dict(bundle.meta, construction=wanted))
    value, witness = solve_bundle(bundle, args.cap)
    emit(report(args, value=value, target=bundle.target, sense=bundle.sense, meets_target=bundle.meets(value),
                witness=witness, ok=True), args.out)
    return EXIT_PASS


def roundtrip(problem: str, phi: CnfFormula, cap: int | None = None) -> dict:
    """SAT oracle on ``phi`` against the problem oracle on its reduction, plus the width certificate."""
    sat = sat_enumerate(phi)
    bundle = build_bundles(problem, phi)
    value, _ = solve_bundle(bundle, cap)
    width = bundle.certified_width()
    checks = {
        "equivalence": sat.satisfiable == bundle.meets(value),
        "width": width <= bundle.width_bound,
    }
    result = {
        "problem": problem,
        "k": phi.k,
        "m": phi.m,
        "satisfiable": sat.satisfiable,
        "value": value,
        "target": bundle.target,
        "sense": bundle.sense,
        "meets_target": bundle.meets(value),
        "width": width,
        "width_bound": bundle.width_bound,
        "n_vertices": bundle.graph.n,
        "checks": checks,
        "ok": all(checks.values()),
    }
    if problem == "wds" and sat.satisfiable and value == bundle.target:
        result["decoded_assignments"] = decode_optima(bundle, cap)
        checks["decoding"] = result["decoded_assignments"]["consistent"]
        result["ok"] = all(checks.values())
    return result


def cmd_roundtrip(args: argparse.Namespace) -> int:
    phi = load_formula(args.cnf)
    result = roundtrip(args.problem, phi, args.cap)
    doc = report(args, **result)
    emit(doc, args.out)
    return EXIT_PASS if result["ok"] else EXIT_FAIL


def verify_widths(construction: str, k: int, m: int, seed: int) -> dict:
    if construction == "separation":
        inst = build_separation_instance(k)
        wr = linear_width(inst.graph, inst.order)
        bound = 2 * k + 1
    else:
        phi = random_formula(k, m, random.Random(seed)).padded()
        bundle = build_bundles(construction, phi)
        wr = linear_width(bundle.graph, bundle.order)
        bound = bundle.width_bound
    return {"check": "widths", "construction": construction, "k": k, "m": m,
            "width": wr.width, "argmax_prefix": wr.argmax_prefix, "width_bound": bound, "ok": wr.width <= bound}


def verify_subadditivity(trials: int, seed: int, max_n: int = 12) -> dict:
    rng = random.Random(seed)
    violations = []
    for trial in range(trials):
        g = random_graph(rng, rng.randint(2, max_n))
        labels = list(range(g.n))
        rng.shuffle(labels)
        cut = rng.randint(1, g.n - 1)
        a = sum(1 << v for v in labels[:cut])
        b = g.all_mask & ~a
        s = rng.getrandbits(g.n)
        lhs = cut_rank_masks(g, a, b)
        rhs = cut_rank_masks(g, a & s, b) + cut_rank_masks(g, a & ~s, b)
        if lhs > rhs:
            violations.append({"trial": trial, "lhs": lhs, "rhs": rhs})
    return {"check": "subadditivity", "trials": trials, "violations": violations, "ok": not violations}


def verify_balanced_edge(trials: int, seed: int, max_leaves: int = 20) -> dict:
    rng = random.Random(seed)
    violations = []
    for trial in range(trials):
        n = rng.randint(2, max_leaves)
        g = Graph.from_edges(n, [])
        tree = random_branch_tree(g.labels, rng)
        size = rng.randint(2, n)
        x = frozenset(rng.sample(list(g.labels), size))
        edge = find_balanced_cut_edge(tree, x)
        if 3 * len(edge.left & x) < size or 3 * len(edge.right & x) < size:
            violations.append({"trial": trial, "edge": list(edge.edge)})
    return {"check": "balanced-edge", "trials": trials, "violations": violations, "ok": not violations}


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


# short names kept for scripts written against the original numbering
CHECK_ALIASES = {"lemma34": "distinct-neighborhoods", "lemma35": "neighborhood-size", "claim36": "private-neighbors"}
FAMILY_CHECKS = ("distinct-neighborhoods", "neighborhood-size", "private-neighbors", "family-equivalence")


def cmd_verify(args: argparse.Namespace) -> int:
    check = CHECK_ALIASES.get(args.check, args.check)
    if check in FAMILY_CHECKS and args.k > args.guard:
        raise ResourceLimitError(f"k={args.k} exceeds family guard {args.guard}")
    table: dict[str, Callable[[], dict]] = {
        "distinct-neighborhoods": lambda: verify_distinct_neighborhoods(args.k, args.threads),
        "neighborhood-size": lambda: verify_neighborhood_size(args.k, args.threads),
        "private-neighbors": lambda: verify_private_neighbors(args.k),
        "family-equivalence": lambda: verify_family_equivalence(args.k),
        "widths": lambda: verify_widths(args.construction, args.k, args.m, args.seed),
        "subadditivity": lambda: verify_subadditivity(args.trials, args.seed),
        "balanced-edge": lambda: verify_balanced_edge(args.trials, args.seed),
    }
    result = table[check]()
    emit(report(args, **result), args.out)
    return EXIT_PASS if result["ok"] else EXIT_FAIL


def cmd_separation(args: argparse.Namespace) -> int:
    inst = build_separation_instance(args.k)
    wr = linear_width(inst.graph, inst.order)
    cut = measure_cut_boolean_dimension(inst.graph, inst.center, inst.leaves[0])
    ok = wr.width <= 2 * args.k + 1
    doc = report(args, k=args.k, n_vertices=inst.graph.n, width=wr.width, width_bound=2 * args.k + 1,
                 center_vs_first_leaf=cut, ok=ok)
    emit(doc, args.report or args.out)
    return EXIT_PASS if ok else EXIT_FAIL


# ---------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rwlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rwlab {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate random inputs")
    p.add_argument("what", choices=["cnf"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("enum-family", parents=[common], help="list the RREF collection family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--guard", type=int, default=DEFAULT_FAMILY_GUARD)
    p.set_defaults(func=cmd_enum_family)

    p = sub.add_parser("reduce", parents=[common], help="reduce a DIMACS formula to a bundle")
    p.add_argument("problem", choices=["is", "mim", "fvs", "wds"])
    p.add_argument("--cnf", required=True)
    p.add_argument("--unweighted", action="store_true", help="expand IS weights into false twins")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", parents=[common], help="run an exact oracle")
    p.add_argument("problem", choices=["mwis", "mwds", "mim", "forest", "sat"])
    p.add_argument("--in", dest="input", required=True, help="bundle JSON, or DIMACS for sat")
    p.add_argument("--cap", type=int, default=None, help="override the oracle size cap")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="run a structural verifier")
    p.add_argument("check", choices=[*FAMILY_CHECKS, "widths", "subadditivity", "balanced-edge", *CHECK_ALIASES])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--construction", choices=["is", "mim", "fvs", "wds", "separation"], default="is")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guard", type=int, default=DEFAULT_FAMILY_GUARD)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roundtrip", parents=[common], help="SAT oracle vs problem oracle on the reduction")
    p.add_argument("problem", choices=["is", "mim", "fvs", "wds"])
    p.add_argument("--cnf", required=True)
    p.add_argument("--cap", type=int, default=None, help="override the problem oracle size cap")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("separation", parents=[common], help="build and measure the separation instance")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--report", default=None, help="report file (alias of --out)")
    p.set_defaults(func=cmd_separation)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"rwlab: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PreconditionError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"rwlab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

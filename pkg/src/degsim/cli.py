"""Command-line entry point.

Machine-readable output (JSON, or JSON lines for streams) goes to stdout;
diagnostics go to stderr.  Exit codes: 0 success, 1 a checked property
failed, 2 usage error, 3 unreadable or invalid input data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions as cons
from . import search as srch
from . import similarity as sim
from . import spectra, srg
from .algebra import determinant_divisor
from .algebra.poly import json_num
from .canon import canonical_form
from .graph import (
    Graph,
    GraphError,
    ParseError,
    RootedGraph,
    degree_partition,
    emit_graph6,
    invariants_report,
    named_graph,
    parse_graph6,
    read_graph,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


class InputError(Exception):
    """Bad input data; reported with exit code 3."""


def load_graph(spec: str) -> Graph:
    """``named:<name>``, a file path (graph6 or edge list), or a literal graph6 string."""
    try:
        if spec.startswith("named:"):
            return named_graph(spec[6:])
        p = Path(spec)
        if p.is_file():
            return read_graph(p.read_text())
        return parse_graph6(spec)
    except (ParseError, GraphError, OSError) as exc:
        raise InputError(f"cannot read graph {spec!r}: {exc}") from exc


def parse_range(text: str) -> list[int]:
    """``a..b`` (inclusive) or a comma-separated list."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a..b or a comma list, got {text!r}") from exc


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


# --------------------------------------------------------------------------
# subcommands


def cmd_mu_poly(args) -> int:
    g = load_graph(args.graph)
    p = spectra.mu_polynomial(g)
    emit({"n": g.n, "mu_poly": p.to_json(), "text": str(p)})
    return EXIT_OK


def cmd_alpha_poly(args) -> int:
    g = load_graph(args.graph)
    p = spectra.alpha_polynomial(g)
    emit({"n": g.n, "alpha_poly": p.to_json(), "text": str(p)})
    return EXIT_OK


def cmd_snf(args) -> int:
    g = load_graph(args.graph)
    res = spectra.lmu_snf(g)
    emit(
        {
            "n": g.n,
            "invariant_factors": res.to_json(),
            "unit_count": res.unit_count(),
            "text": [str(f) for f in res.integer_forms],
        }
    )
    return EXIT_OK


def cmd_det_divisor(args) -> int:
    g = load_graph(args.graph)
    k = g.n - 1 if args.k is None else args.k
    if not 0 <= k <= g.n:
        raise InputError(f"k must lie in 0..{g.n}")
    d = determinant_divisor(spectra.lmu_matrix(g), k)
    emit({"n": g.n, "k": k, "divisor": d.primitive_bipoly().to_json(), "text": str(d), "is_one": d.degree() == 0})
    return EXIT_OK


def cmd_cospectral(args) -> int:
    g1, g2 = load_graph(args.g1), load_graph(args.g2)
    modes = args.mode or list(spectra.MODES)
    out = {}
    for m in modes:
        try:
            out[m] = spectra.cospectral(g1, g2, m)
        except spectra.IsolatedVertexError:
            out[m] = None
    payload = {"cospectral": out}
    code = EXIT_OK
    if args.audit:
        audit = spectra.implication_audit(g1, g2, seed=args.seed)
        payload["audit"] = audit
        code = EXIT_FAIL if audit["violations"] else EXIT_OK
    emit(payload)
    return code


def cmd_degree_similar(args) -> int:
    g1, g2 = load_graph(args.g1), load_graph(args.g2)
    d = sim.degree_similar(
        g1, g2, seed=args.seed, symbolic_threshold=args.threshold, rounds=args.rounds, sample_bits=args.bits
    )
    payload = d.to_json()
    if args.normalize and d.verdict == sim.YES:
        try:
            m = sim.normalize_row_sums(g1, g2, d.witness, seed=args.seed)
        except GraphError as exc:
            raise InputError(str(exc)) from exc
        payload["normalized_witness"] = None if m is None else [[json_num(x) for x in r] for r in m]
    emit(payload)
    return EXIT_OK


def _pair_args(args) -> tuple[Graph, Graph]:
    if args.g1 or args.g2:
        if not (args.g1 and args.g2):
            raise InputError("give both --g1 and --g2, or neither to use the shipped seed pair")
        return load_graph(args.g1), load_graph(args.g2)
    pair = cons.load_seed_pair()
    return pair.g1, pair.g2


def cmd_construct_t24(args) -> int:
    g1, g2 = _pair_args(args)
    p1, p2 = degree_partition(g1), degree_partition(g2)
    t = len(p1.parts)
    indices = [args.index] if args.index is not None else range(cons.OpVector.count(t))
    failed = False
    for i in indices:
        ops = cons.OpVector.from_index(t, i)
        try:
            h1, h2 = cons.apply_block_operations(g1, g2, ops)
        except GraphError as exc:
            raise InputError(str(exc)) from exc
        rec = {"index": i, "ops": ops.to_json(), "g1": emit_graph6(h1), "g2": emit_graph6(h2)}
        if args.check:
            rec["A_and_complement_cospectral"] = spectra.cospectral(h1, h2, "A-and-complement")
            dp = cons.degree_preserving(p1, g1, ops) and cons.degree_preserving(p2, g2, ops)
            rec["degree_preserving"] = dp
            if dp:
                rec["degree_similar"] = sim.degree_similar(h1, h2, seed=args.seed).verdict
            failed |= not rec["A_and_complement_cospectral"] or rec.get("degree_similar", sim.YES) != sim.YES
        emit(rec)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_mckay_pair(args) -> int:
    base = load_graph(args.base)
    try:
        g1, g2 = cons.mckay_pair(RootedGraph(base, args.root))
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    emit(
        {
            "g1": emit_graph6(g1),
            "g2": emit_graph6(g2),
            "isomorphic": canonical_form(g1).certificate == canonical_form(g2).certificate,
            "mu_cospectral": spectra.mu_polynomial(g1) == spectra.mu_polynomial(g2),
        }
    )
    return EXIT_OK


def cmd_srg(args) -> int:
    g = load_graph(args.graph)
    if args.srg_cmd == "params":
        p = srg.srg_params(g)
        emit({"srg": None if p is None else p.to_json(), "one_walk_regular": srg.is_one_walk_regular(g)})
        return EXIT_OK
    h = load_graph(args.h)
    try:
        rep = srg.sweep_mu_equal(g, h, args.clique_size, with_complement=args.complement)
    except srg.PreconditionError as exc:
        raise InputError(str(exc)) from exc
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    emit(rep.to_json())
    return EXIT_OK if rep.all_equal else EXIT_FAIL


def cmd_search(args) -> int:
    cfg = srch.SearchConfig(
        max_n=args.max_n, min_n=args.min_n, filters=tuple(args.filters), seed=args.seed, budget=args.budget, jobs=args.jobs
    )
    yes = 0
    complete = True
    for rec in srch.iter_ds_pair_search(cfg):
        emit(rec)
        yes += len(rec.get("yes_pairs", []))
        complete &= not rec.get("incomplete", False)
    emit({"summary": True, "yes_pairs": yes, "complete": complete})
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        tree = cons.load_tree_t()
    except cons.DataError as exc:
        raise InputError(str(exc)) from exc
    ok = True
    for label, base in srch.family_bases(args.base, args.m, args.seed):
        rec = srch.snf_family_check(label, base, tree, args.seed, strict_shape=args.base == "path")
        ok &= rec["ok"]
        emit(rec)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invariants(args) -> int:
    g = load_graph(args.graph)
    emit(invariants_report(g, args.walk_length))
    return EXIT_OK


def cmd_validate_data(args) -> int:
    reports = {}
    try:
        if args.only in (None, "tree"):
            reports["fig5-treeT"] = cons.validate_tree_t(cons.load_tree_t())
        if args.only in (None, "seed"):
            reports["seed-pair"] = cons.validate_seed_pair(cons.load_seed_pair())
    except cons.DataError as exc:
        emit({"ok": False, "error": str(exc)})
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    payload = {name: r.to_json() for name, r in reports.items()}
    ok = all(r.ok for r in reports.values())
    emit({"ok": ok, "files": payload})
    for name, r in reports.items():
        for check in r.failures():
            print(f"{name}: failed check {check}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_DATA


def cmd_canon(args) -> int:
    g = load_graph(args.graph)
    cf = canonical_form(g)
    emit({"certificate": cf.certificate, "labeling": list(cf.labeling)})
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    ap = _Parser(prog="degsim", description="Degree-similarity and mu-polynomial tools for graphs.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(group, name: str, **kw) -> argparse.ArgumentParser:
        # every subcommand accepts --seed and --jobs after its name
        return group.add_parser(name, parents=[common], **kw)

    graph_help = "graph6 / edge-list file, literal graph6, or named:<K4|P3|C5|S3|petersen|...>"

    p = add(sub, "mu-poly", help="det(tI - A + mu D)")
    p.add_argument("--graph", required=True, help=graph_help)
    p.set_defaults(func=cmd_mu_poly)

    p = add(sub, "alpha-poly", help="det(tI - A - alpha J)")
    p.add_argument("--graph", required=True, help=graph_help)
    p.set_defaults(func=cmd_alpha_poly)

    p = add(sub, "snf", help="Smith normal form of tI - L_mu over Q(mu)[t]")
    p.add_argument("--graph", required=True, help=graph_help)
    p.set_defaults(func=cmd_snf)

    p = add(sub, "det-divisor", help="gcd of the k x k minors of tI - L_mu")
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--k", type=int, help="minor size (default n - 1)")
    p.set_defaults(func=cmd_det_divisor)

    p = add(sub, "cospectral", help="compare spectra of two graphs")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--mode", action="append", choices=spectra.MODES, help="repeatable; default all")
    p.add_argument("--audit", action="store_true", help="also check the implication chain")
    p.set_defaults(func=cmd_cospectral)

    p = add(sub, "degree-similar", help="decide simultaneous similarity of A and D")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--threshold", type=int, default=sim.SYMBOLIC_THRESHOLD)
    p.add_argument("--rounds", type=int, default=sim.ROUNDS)
    p.add_argument("--bits", type=int, default=sim.SAMPLE_BITS)
    p.add_argument("--normalize", action="store_true", help="add a witness with unit row and column sums")
    p.set_defaults(func=cmd_degree_similar)

    p = add(sub, "construct-t24", help="block operations on a degree-similar pair (JSON lines)")
    p.add_argument("--g1")
    p.add_argument("--g2")
    p.add_argument("--index", type=int, help="a single operation vector (default: all)")
    p.add_argument("--check", action="store_true", help="verify cospectrality and degree-similarity")
    p.set_defaults(func=cmd_construct_t24)

    p = add(sub, "mckay-pair", help="coalesce a rooted graph with the tree at both roots")
    p.add_argument("--base", required=True, help=graph_help)
    p.add_argument("--root", type=int, default=0)
    p.set_defaults(func=cmd_mckay_pair)

    p = add(sub, "srg", help="strongly regular graph tools")
    ssub = p.add_subparsers(dest="srg_cmd", required=True, parser_class=_Parser)
    q = add(ssub, "params")
    q.add_argument("--graph", required=True, help=graph_help)
    q = add(ssub, "sweep")
    q.add_argument("--graph", required=True, help=graph_help)
    q.add_argument("--h", required=True, help="graph deleted inside each clique")
    q.add_argument("--clique-size", type=int, required=True)
    q.add_argument("--complement", action="store_true")
    p.set_defaults(func=cmd_srg)

    p = add(sub, "search", help="exhaustive searches")
    ssub = p.add_subparsers(dest="search_cmd", required=True, parser_class=_Parser)
    q = add(ssub, "unicyclic", help="non-isomorphic degree-similar unicyclic pairs (JSON lines)")
    q.add_argument("--max-n", type=int, default=10)
    q.add_argument("--min-n", type=int, default=3)
    q.add_argument("--filters", nargs="+", choices=srch.FILTERS, default=list(srch.FILTERS))
    q.add_argument("--budget", type=float, help="wall-clock seconds")
    p.set_defaults(func=cmd_search)

    p = add(sub, "experiment", help="experiment drivers")
    ssub = p.add_subparsers(dest="exp_cmd", required=True, parser_class=_Parser)
    q = add(ssub, "snf-family", help="SNF and degree-similarity across the coalescence family")
    q.add_argument("--base", choices=("path", "star", "random"), default="path")
    q.add_argument("--m", type=parse_range, default=list(range(5)), help="a..b or a,b,c")
    p.set_defaults(func=cmd_experiment)

    p = add(sub, "invariants", help="counting invariants shared by degree-similar graphs")
    p.add_argument("--graph", required=True, help=graph_help)
    p.add_argument("--walk-length", type=int, default=4)
    p.set_defaults(func=cmd_invariants)

    p = add(sub, "validate-data", help="check the shipped (or DEGSIM_DATA_DIR) data files")
    p.add_argument("--only", choices=("tree", "seed"))
    p.set_defaults(func=cmd_validate_data)

    p = add(sub, "canon", help="canonical labelling and certificate")
    p.add_argument("--graph", required=True, help=graph_help)
    p.set_defaults(func=cmd_canon)
    return ap


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, cons.DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

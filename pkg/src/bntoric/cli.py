"""Command-line interface.

Subcommands: analyze, param, ci-gens, kernel, check-gss, witness, rank.
Reports go to stdout as JSON (default) or text; errors go to stderr.
Exit codes: 0 success, 1 invalid input or failed precondition, 2 size
guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ideal, toric
from .dag import (Limits, global_markov, induced_cycles_gt3, is_perfect,
                  load_graph, toric_criterion)
from .errors import GuardExceeded, InputError, PreconditionError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bntoric",
        description="Algebraic analysis of finite Bayesian networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--graph", required=True, metavar="PATH",
                       help="graph JSON file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--max-monomials", type=int, default=100_000,
                       help="bound on graded matrix rows (default 100000)")
        p.add_argument("--max-n", type=int, default=10,
                       help="bound on statement enumeration (default 10)")

    common(sub.add_parser("analyze", help="graph-level structural report"))
    common(sub.add_parser("param", help="monomial parametrization"))
    common(sub.add_parser("ci-gens", help="independence minors"))
    kern = sub.add_parser("kernel", help="graded kernel dimension")
    common(kern)
    kern.add_argument("--degree", type=int, required=True)
    kern.add_argument("--basis", choices=("plus", "standard"),
                      default="standard")
    common(sub.add_parser("check-gss",
                          help="compare quadrics with independence ideal"))
    wit = sub.add_parser("witness", help="non-quadratic witness polynomial")
    common(wit)
    wit.add_argument("--type", choices=("deg4", "detM"), required=True,
                     dest="witness_type")
    common(sub.add_parser("rank", help="rank certificates of the minors"))
    return parser


def _limits(args) -> Limits:
    return Limits(max_n=args.max_n, max_monomials=args.max_monomials)


def _graph_summary(dag) -> dict:
    return {
        "n": dag.n,
        "levels": list(dag.cards),
        "edges": [list(e) for e in dag.edges],
        "sinks": list(dag.sinks),
        "renumbering": {str(old): new for old, new in dag.renumbering},
    }


def _run_analyze(dag, limits, args):
    markov = global_markov(dag, limits)
    return {
        "graph": _graph_summary(dag),
        "perfect": is_perfect(dag),
        "toric_criterion": toric_criterion(dag),
        "induced_cycles": [list(c) for c in induced_cycles_gt3(dag, limits)],
        "markov": {
            "full_count": len(markov.full),
            "reduced": [s.to_json() for s in markov.reduced],
            "reduced_display": [str(s) for s in markov.reduced],
        },
    }


def _run_param(dag, limits, args):
    return toric.plus_basis(dag)


def _run_ci_gens(dag, limits, args):
    markov = global_markov(dag, limits)
    gg = ideal.global_generators(dag, limits)
    statements = []
    for stmt in markov.reduced:
        minors = ideal.ci_generators(dag, stmt)
        statements.append({
            "statement": stmt.to_json(),
            "display": str(stmt),
            "count": len(minors),
            "minors": [m.to_json() for m in minors],
        })
    return {
        "statements": statements,
        "raw_count": len(gg.raw),
        "ci_dim": gg.reduced.dim,
    }


def _run_kernel(dag, limits, args):
    basis = ideal.graded_kernel(dag, args.degree, args.basis, limits)
    return {
        "degree": args.degree,
        "basis": args.basis,
        "kernel_dim": basis.dim,
    }


def _run_check_gss(dag, limits, args):
    report = ideal.degree2_span_check(dag, limits)
    return {
        "degree": report["degree"],
        "kernel_dim": report["kernel_dim"],
        "ci_dim": report["ci_dim"],
        "equal": report["equal"],
        "witness": None,
    }


def _run_witness(dag, limits, args):
    if args.witness_type == "deg4":
        report = ideal.degree4_witness(dag, limits)
    else:
        report = ideal.detm_witness(dag, limits)
    return report.to_json()


def _run_rank(dag, limits, args):
    markov = global_markov(dag, limits)
    forms = []
    labels = []
    for stmt in markov.reduced:
        for minor in ideal.ci_generators(dag, stmt):
            labels.append((str(stmt), minor))
    for i, (display, minor) in enumerate(labels):
        _, rank = toric.quad_form_rank(minor, model=dag)
        forms.append({"index": i, "statement": display,
                      "form": str(minor), "rank": rank})
    pairs = []
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            report = toric.pairwise_rank_poly(
                labels[i][1], labels[j][1], model=dag)
            pairs.append({
                "i": i,
                "j": j,
                "generic_rank": report.generic_rank,
                "verdict": report.verdict,
            })
    return {"forms": forms, "pairs": pairs}


_RUNNERS = {
    "analyze": _run_analyze,
    "param": _run_param,
    "ci-gens": _run_ci_gens,
    "kernel": _run_kernel,
    "check-gss": _run_check_gss,
    "witness": _run_witness,
    "rank": _run_rank,
}


def _render_text(report, out) -> None:
    if hasattr(report, "to_text"):
        out.write(report.to_text() + "\n")
        return

    def walk(value, indent=""):
        if isinstance(value, dict):
            for key in value:
                item = value[key]
                if isinstance(item, (dict, list)):
                    out.write(f"{indent}{key}:\n")
                    walk(item, indent + "  ")
                else:
                    out.write(f"{indent}{key}: {item}\n")
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, (dict, list)):
                    walk(item, indent + "  ")
                    out.write("\n" if indent == "" else "")
                else:
                    out.write(f"{indent}- {item}\n")

    walk(report)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        dag = load_graph(args.graph)
        limits = _limits(args)
        report = _RUNNERS[args.command](dag, limits, args)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "text":
        _render_text(report, sys.stdout)
    else:
        payload = report.to_json() if hasattr(report, "to_json") else report
        print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())

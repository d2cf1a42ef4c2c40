"""Command-line interface.

Exit codes: 0 success, 1 failed verification checks, 2 invalid
parameters, 3 infeasible search budget, 4 I/O or data-format errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import harness
from .checks import verification_battery
from .clique import AlgoParams, detect
from .errors import GraphCorrError, InvalidParameterError
from .exact import ExactBudget, enumerate_max_score
from .model import (
    Hypothesis,
    dump_graph_to_edge_list,
    generate_pair,
    load_graph_from_edge_list,
    sample_subgraphs,
)
from .similarity import SimilarityKernel


def _kernel_from_args(args) -> SimilarityKernel:
    if args.kernel == "mle":
        if args.rho is None:
            raise InvalidParameterError("--kernel mle requires --rho")
        return SimilarityKernel("mle", args.rho)
    return SimilarityKernel(args.kernel)


def _format_mapping(mapping) -> str:
    return ",".join(f"{int(u)}->{int(v)}" for u, v in zip(mapping.domain, mapping.image))


def _cmd_gen(args) -> int:
    hyp = Hypothesis(args.hypothesis)
    if hyp is Hypothesis.ALT and args.rho is None:
        raise InvalidParameterError("--hypothesis alt requires --rho")
    pair = generate_pair(args.n, args.rho if hyp is Hypothesis.ALT else 0.0, hyp, args.seed)
    sample = sample_subgraphs(pair, args.s, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dump_graph_to_edge_list(sample.sub1, out / "g1.csv")
    dump_graph_to_edge_list(sample.sub2, out / "g2.csv")
    meta = {
        "n": args.n,
        "s": args.s,
        "rho": args.rho,
        "hypothesis": hyp.value,
        "seed": args.seed,
        "idx1": [int(v) for v in sample.idx1],
        "idx2": [int(v) for v in sample.idx2],
        "latent_perm": None
        if pair.latent_perm is None
        else [int(v) for v in pair.latent_perm.image],
    }
    (out / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    print(f"wrote {out / 'g1.csv'}, {out / 'g2.csv'}, {out / 'meta.json'}")
    return 0


def _cmd_detect(args) -> int:
    sub1 = load_graph_from_edge_list(args.g1)
    sub2 = load_graph_from_edge_list(args.g2)
    params = AlgoParams(
        k1=args.k1,
        k2=args.k2,
        n1=args.n1,
        n2=args.n2,
        m=args.m,
        f=_kernel_from_args(args),
        tau=args.tau,
        seed=args.seed,
    )
    result = detect(sub1, sub2, params)
    print(f"statistic={result.statistic!r}")
    print(f"decision={result.decision.value}")
    print(f"mapping={_format_mapping(result.mapping)}")
    return 0


def _cmd_exact(args) -> int:
    sub1 = load_graph_from_edge_list(args.g1)
    sub2 = load_graph_from_edge_list(args.g2)
    score, mapping = enumerate_max_score(
        sub1, sub2, args.m, _kernel_from_args(args), ExactBudget(args.budget)
    )
    print(f"statistic={score!r}")
    print(f"mapping={_format_mapping(mapping)}")
    return 0


def _cmd_experiment(args) -> int:
    config = harness.ExperimentConfig.from_json_file(args.config)
    records = harness.run_experiment(config, workers=args.workers)
    null, alt = harness.split_statistics(records)
    if config.output_path is not None:
        harness.emit_trials_csv(records, config.output_path)
        print(f"wrote {config.output_path}")
    print(f"null: mean={np.mean(null):.4f} std={np.std(null):.4f} over {len(null)} trials")
    print(f"alt:  mean={np.mean(alt):.4f} std={np.std(alt):.4f} over {len(alt)} trials")
    print(f"auc={harness.auc(null, alt):.4f}")
    return 0


def _cmd_theory_check(args) -> int:
    results = verification_battery(args.trials, args.seed)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        failures += not r.passed
        print(f"[{status}] {r.name:<{width}}  {r.detail}")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def _cmd_roc(args) -> int:
    records = harness.read_trials_csv(args.infile)
    null, alt = harness.split_statistics(records)
    curve = harness.roc_points(null, alt)
    harness.emit_roc_csv(curve, args.out)
    print(f"wrote {args.out} (auc={curve.auc:.4f})")
    return 0


def _cmd_hist(args) -> int:
    records = harness.read_trials_csv(args.infile)
    null, alt = harness.split_statistics(records)
    harness.emit_histogram_csv(harness.histogram(null, args.bins), args.out_null)
    harness.emit_histogram_csv(harness.histogram(alt, args.bins), args.out_alt)
    print(f"wrote {args.out_null}, {args.out_alt}")
    return 0


def _add_kernel_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kernel", choices=["overlap", "mse", "mle"], required=True)
    p.add_argument("--rho", type=float, default=None, help="assumed correlation (mle kernel)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphcorr",
        description="Correlation detection between sampled subgraphs of Gaussian Wigner graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a pair, sample subgraphs, write them as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--hypothesis", choices=["null", "alt"], required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("detect", help="run the clique-based detector on two graph CSVs")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    _add_kernel_flags(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("exact", help="exhaustive max-similarity statistic")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    _add_kernel_flags(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**8)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("experiment", help="Monte Carlo trials from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("theory-check", help="run the verification battery")
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_theory_check)

    p = sub.add_parser("roc", help="trial CSV -> ROC curve CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_roc)

    p = sub.add_parser("hist", help="trial CSV -> per-hypothesis histogram CSVs")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-null", required=True)
    p.add_argument("--out-alt", required=True)
    p.add_argument("--bins", type=int, default=20)
    p.set_defaults(func=_cmd_hist)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphCorrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())

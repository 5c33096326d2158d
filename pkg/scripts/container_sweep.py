#!/usr/bin/env python3
"""Run the container soundness sweeps and write CSV reports.

The graph sweep is exhaustive over all labeled graphs on --n vertices; the
hypergraph sweep samples seeded 3-uniform instances that pass the degree
precondition.
"""

import argparse

from homlab.experiments import ExperimentConfig, emit_report, run_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6, help="vertex count for the exhaustive sweep")
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--out-prefix", default="container_sweep")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    graph_cfg = ExperimentConfig(
        kind="graph-container-exhaustive",
        grid={"n": args.n, "eps": ["1/4", "1/2", "1"]},
    )
    rows = run_experiment(graph_cfg, workers=args.threads)
    path = f"{args.out_prefix}_graph.csv"
    emit_report(rows, path=path)
    bad = sum(1 for r in rows if r.verdict != "ok")
    print(f"graph sweep: {len(rows)} parameter combos, {bad} violations -> {path}")

    hyper_cfg = ExperimentConfig(
        kind="hypergraph-container-sample",
        grid={"n": [8, 9, 10], "p": ["4/5"], "eps": ["1/8"], "count": 5},
        seeds=tuple(args.seeds),
    )
    rows = run_experiment(hyper_cfg, workers=args.threads)
    path = f"{args.out_prefix}_hyper.csv"
    emit_report(rows, path=path)
    bad = sum(1 for r in rows if r.verdict != "ok")
    print(f"hypergraph sweep: {len(rows)} qualifying instances, {bad} violations -> {path}")


if __name__ == "__main__":
    main()

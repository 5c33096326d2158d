#!/usr/bin/env python3
"""Report-only tradeoff curves: eps-homogeneous witness sizes on structured
instances, and the sampled triangle-count versus transitivity-distance
frontier for small tournaments."""

import argparse

from homlab.experiments import ExperimentConfig, emit_report, run_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=60)
    ap.add_argument("--m", type=int, default=9, help="tournament order for the scan")
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--out-prefix", default="tradeoff")
    args = ap.parse_args()

    for gen in ("cograph", "bipartite", "gnp"):
        cfg = ExperimentConfig(
            kind="eps-homog-curve",
            generator={"kind": gen},
            grid={"n": args.n, "eps": ["1/4", "1/8", "1/16", "1/32"]},
            seeds=tuple(args.seeds),
        )
        path = f"{args.out_prefix}_{gen}.csv"
        emit_report(run_experiment(cfg), path=path)
        print(f"eps-homogeneous curve ({gen}) -> {path}")

    scan = ExperimentConfig(
        kind="triangle-scan",
        grid={"m": args.m, "samples": args.samples},
        seeds=tuple(args.seeds),
    )
    path = f"{args.out_prefix}_triangle_scan.csv"
    emit_report(run_experiment(scan), path=path)
    print(f"triangle/distance scan -> {path}")


if __name__ == "__main__":
    main()

"""Command line front end.

    hopwar run --config scenario.cfg [--seed N] [--runs N]
               [--attacker S] [--defender S] [--out-dir DIR] [--timeseries]

Exit codes: 0 success, 1 configuration error, 2 output I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .engine import emit_summary, emit_timeseries, run_batch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopwar", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario batch and write CSV results")
    run.add_argument("--config", required=True, help="path to a key = value scenario file")
    run.add_argument("--seed", default=None, help="override the base seed")
    run.add_argument("--runs", default=None, help="override the number of runs")
    run.add_argument("--attacker", default=None, help="override the attacker strategy")
    run.add_argument("--defender", default=None, help="override the defender strategy")
    run.add_argument("--out-dir", default="hopwar_out", help="directory for CSV outputs")
    run.add_argument(
        "--timeseries",
        action="store_true",
        help="also write one per-second trace CSV per run",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(
            args.config,
            overrides={
                "seed": args.seed,
                "runs": args.runs,
                "attacker": args.attacker,
                "defender": args.defender,
            },
        )
    except ConfigError as exc:
        print(f"hopwar: config error: {exc}", file=sys.stderr)
        return 1

    batch = run_batch(config, collect_trace=args.timeseries)

    try:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        summary_path = emit_summary(batch, out_dir / "summary.csv")
        written = [summary_path]
        if args.timeseries:
            for run_metrics in batch.runs:
                written.append(emit_timeseries(run_metrics, out_dir / f"run_{run_metrics.seed}.csv"))
    except OSError as exc:
        print(f"hopwar: cannot write results: {exc}", file=sys.stderr)
        return 2

    print(
        f"{config.attacker} vs {config.defender}: runs={len(batch.runs)} "
        f"mean_pdr={batch.mean_pdr:.4f} mean_success_rate={batch.mean_success_rate:.4f} "
        f"mean_retransmissions={batch.mean_retransmissions:.1f} "
        f"mean_detections={batch.mean_detections:.1f} "
        f"mean_extra_energy_j={batch.mean_extra_energy_j:.4f} std_pdr={batch.std_pdr:.4f}"
    )
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

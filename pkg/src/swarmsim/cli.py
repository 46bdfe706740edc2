"""Command line harness.

    swarmsim run <scenario> [--seed N] [--duration S] [--out DIR]
    swarmsim replay <trace> [--out DIR]
    swarmsim metrics <trace> [--out DIR]

run executes a scenario (preset name or YAML path) and writes trace.csv,
metrics.json, and series.csv. replay re-executes the scenario embedded in a
trace header and verifies the two files are byte-identical. metrics
recomputes the report from a trace alone.
"""

from __future__ import annotations

import argparse
import sys
import tempfile
from pathlib import Path

from .metrics import compute_metrics, write_metrics_json, write_series_csv
from .scenario import from_meta, load_scenario, run
from .trace import read_trace, write_trace


def _summary_lines(report) -> list[str]:
    lines = [f"ticks: {report.tick_count}", f"collisions: {report.collision_count}"]
    if report.tick_count:
        lines.append(
            f"final mean distance to centroid: {report.mean_distance_to_centroid[-1]:.4f}"
        )
        lines.append(f"final min pairwise distance: {report.min_pairwise_distance[-1]:.4f}")
    if report.consensus_time is not None:
        lines.append(f"consensus at t={report.consensus_time:.1f}s")
    return lines


def _cmd_run(args) -> int:
    config = load_scenario(args.scenario, seed=args.seed, duration=args.duration)
    out = Path(args.out) if args.out else Path("runs") / f"{config.name}-seed{config.seed}"
    _, report = run(config, out_dir=out)
    print(f"wrote {out / 'trace.csv'}")
    for line in _summary_lines(report):
        print(line)
    return 0


def _cmd_replay(args) -> int:
    original = Path(args.trace)
    trace = read_trace(original)
    config = from_meta(trace.meta)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
    else:
        out = Path(tempfile.mkdtemp(prefix="swarmsim-replay-"))
    new_trace, _ = run(config, out_dir=out)
    same = (out / "trace.csv").read_bytes() == original.read_bytes()
    print(f"replayed {config.name} seed {config.seed}: {'MATCH' if same else 'MISMATCH'}")
    print(f"replay artifacts in {out}")
    return 0 if same else 1


def _cmd_metrics(args) -> int:
    trace_path = Path(args.trace)
    trace = read_trace(trace_path)
    report = compute_metrics(trace)
    out = Path(args.out) if args.out else trace_path.parent
    write_metrics_json(report, out / "metrics.json")
    write_series_csv(report, out / "series.csv")
    print(f"wrote {out / 'metrics.json'} and {out / 'series.csv'}")
    for line in _summary_lines(report):
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swarmsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario preset or YAML file")
    p_run.add_argument("scenario", help="preset name (e.g. experiment1-waffle) or YAML path")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--duration", type=float, default=None)
    p_run.add_argument("--out", default=None)
    p_run.set_defaults(fn=_cmd_run)

    p_replay = sub.add_parser("replay", help="re-run a trace's scenario and compare bytes")
    p_replay.add_argument("trace")
    p_replay.add_argument("--out", default=None)
    p_replay.set_defaults(fn=_cmd_replay)

    p_metrics = sub.add_parser("metrics", help="recompute metrics from a trace file")
    p_metrics.add_argument("trace")
    p_metrics.add_argument("--out", default=None)
    p_metrics.set_defaults(fn=_cmd_metrics)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())

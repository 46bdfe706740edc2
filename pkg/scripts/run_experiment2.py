#!/usr/bin/env python3
"""Discussed dispersion experiment: vote on an opinion, then spread to match.

Each robot starts with a random opinion drawn from the dispersion mapping,
spends the first phase standing still while majority voting runs, then
disperses to the range its current opinion selects. The report shows the
per-window opinion histograms, the time of consensus, and the final
clearances against the dispersion range the winning opinion implies.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from swarmsim import load_scenario, run


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=20, help="number of seeds (0..N-1)")
    parser.add_argument("--duration", type=float, default=None)
    parser.add_argument("--out", default="runs/experiment2")
    args = parser.parse_args()

    for seed in range(args.seeds):
        config = load_scenario("experiment2", seed=seed, duration=args.duration)
        out = Path(args.out) / f"{config.name}-seed{seed}"
        _, report = run(config, out_dir=out)
        mapping = config.pattern_params["mapping"]
        initial = config.initial_opinions
        windows = report.opinion_windows or []
        consensus = report.consensus_time
        if consensus is not None and windows:
            # opinion everyone settled on, read from the last window histogram
            final_opinion = max(windows[-1].items(), key=lambda kv: kv[1])[0]
            target = mapping[final_opinion]
        else:
            final_opinion, target = None, None
        clear = float(report.clearance.min()) if report.tick_count else float("nan")
        print(
            f"seed {seed:3d}: opinions {initial} -> {final_opinion} "
            f"(consensus {'t=%.1fs' % consensus if consensus is not None else 'never'}), "
            f"target range {target}, min clearance {clear:.3f}, "
            f"collisions {report.collision_count}"
        )


if __name__ == "__main__":
    main()

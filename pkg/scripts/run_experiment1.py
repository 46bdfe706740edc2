#!/usr/bin/env python3
"""Aggregation experiment: a line of robots pulls together under attraction.

Runs the waffle_pi preset over a batch of seeds (and optionally the burger
and jackal presets) and reports, per seed, the ratio of final to initial
mean distance to the swarm centroid, the minimum pairwise distance at the
end, and the collision count. Under the noiseless simulator the TurtleBot3
swarms contract by roughly a tenth and then freeze into small clusters at
the protection shell; the larger Jackals stop farther apart because their
1.2 m protection threshold keeps them at a distance.
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

import numpy as np

from swarmsim import load_scenario, run


def initial_mean_distance(config) -> float:
    xy = np.array([[p.x, p.y] for p in config.poses])
    centroid = xy.mean(axis=0)
    return float(np.linalg.norm(xy - centroid, axis=1).mean())


def run_batch(preset: str, seeds: list[int], duration: float | None, out_root: Path) -> None:
    print(f"== {preset} ==")
    for seed in seeds:
        config = load_scenario(preset, seed=seed, duration=duration)
        out = out_root / f"{config.name}-seed{seed}"
        start = time.perf_counter()
        _, report = run(config, out_dir=out)
        elapsed = time.perf_counter() - start
        initial = initial_mean_distance(config)
        final = report.mean_distance_to_centroid[-1]
        print(
            f"seed {seed:3d}: mean dist {initial:.3f} -> {final:.3f} "
            f"({final / initial:6.1%}), min pairwise {report.min_pairwise_distance[-1]:.3f}, "
            f"collisions {report.collision_count}, {elapsed:.1f}s wall"
        )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=10, help="number of seeds (0..N-1)")
    parser.add_argument("--duration", type=float, default=None)
    parser.add_argument("--out", default="runs/experiment1")
    parser.add_argument(
        "--presets",
        nargs="+",
        default=["experiment1-waffle"],
        help="e.g. experiment1-waffle experiment1-burger experiment1-jackal",
    )
    args = parser.parse_args()
    seeds = list(range(args.seeds))
    for preset in args.presets:
        run_batch(preset, seeds, args.duration, Path(args.out))


if __name__ == "__main__":
    main()

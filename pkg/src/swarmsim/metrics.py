"""Aggregate metrics, computed purely from a trace.

Series are aligned with recorded ticks (one entry per tick). Clearance uses
the same convention as the range sensor: distance from a robot's center to
the nearest obstacle surface (wall segment, or another body's circle).
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .trace import Trace


@dataclass
class MetricsReport:
    robot_ids: list[int]
    clock: np.ndarray
    mean_distance_to_centroid: np.ndarray
    min_pairwise_distance: np.ndarray
    clearance: np.ndarray  # (ticks, robots)
    collision_count: int
    opinion_windows: list[dict[int, int]] | None
    consensus_time: float | None

    @property
    def tick_count(self) -> int:
        return len(self.clock)


def _point_segment_distances(points: np.ndarray, walls: np.ndarray) -> np.ndarray:
    """Distances from N points to S segments, shape (N, S)."""
    ax, ay = walls[:, 0][None, :], walls[:, 1][None, :]
    ex = walls[:, 2][None, :] - ax
    ey = walls[:, 3][None, :] - ay
    px = points[:, 0][:, None]
    py = points[:, 1][:, None]
    L2 = ex * ex + ey * ey
    with np.errstate(divide="ignore", invalid="ignore"):
        s = ((px - ax) * ex + (py - ay) * ey) / L2
    s = np.clip(np.where(L2 > 0, s, 0.0), 0.0, 1.0)
    return np.hypot(px - (ax + s * ex), py - (ay + s * ey))


def compute_metrics(trace: Trace) -> MetricsReport:
    scenario = trace.meta["scenario"]
    robot_ids = [int(r) for r in scenario["robot_ids"]]
    radii = np.asarray(scenario["radii"], dtype=float)
    walls = np.asarray(scenario["walls"], dtype=float).reshape(-1, 4)
    dt = float(scenario["dt"])
    R = len(robot_ids)

    n = len(trace.tick)
    T = n // R if R else 0
    if n != T * R:
        raise ValueError("trace rows do not form complete ticks")

    if T == 0:
        return MetricsReport(
            robot_ids=robot_ids,
            clock=np.empty(0),
            mean_distance_to_centroid=np.empty(0),
            min_pairwise_distance=np.empty(0),
            clearance=np.empty((0, R)),
            collision_count=0,
            opinion_windows=[] if _window_length(scenario) else None,
            consensus_time=None,
        )

    order = np.lexsort((trace.robot, trace.tick))
    xs = trace.x[order].reshape(T, R)
    ys = trace.y[order].reshape(T, R)
    clock = trace.clock[order].reshape(T, R)[:, 0]
    opinions = trace.opinion[order].reshape(T, R)

    cx = xs.mean(axis=1, keepdims=True)
    cy = ys.mean(axis=1, keepdims=True)
    mean_dist = np.hypot(xs - cx, ys - cy).mean(axis=1)

    dxx = xs[:, :, None] - xs[:, None, :]
    dyy = ys[:, :, None] - ys[:, None, :]
    pair = np.hypot(dxx, dyy)
    eye = np.eye(R, dtype=bool)
    pair_masked = np.where(eye[None, :, :], np.inf, pair)
    min_pairwise = pair_masked.min(axis=(1, 2)) if R > 1 else np.full(T, np.inf)

    points = np.stack([xs.ravel(), ys.ravel()], axis=1)
    if walls.shape[0]:
        wall_clear = _point_segment_distances(points, walls).min(axis=1).reshape(T, R)
    else:
        wall_clear = np.full((T, R), np.inf)
    if R > 1:
        surface = pair_masked - radii[None, None, :]
        robot_clear = surface.min(axis=2)
    else:
        robot_clear = np.full((T, R), np.inf)
    clearance = np.minimum(wall_clear, robot_clear)

    sum_radii = radii[:, None] + radii[None, :]
    overlaps = (pair < sum_radii[None, :, :]) & ~eye[None, :, :]
    collision_count = int(overlaps.sum()) // 2

    window_length = _window_length(scenario)
    has_opinions = not np.isnan(opinions).all()
    opinion_windows: list[dict[int, int]] | None = None
    if window_length and has_opinions:
        opinion_windows = []
        # Tick t runs at t*dt and lands in row t; window k closes at the
        # first tick time >= (k+1)*L, the same comparison the robots make.
        tick_times = np.arange(T) * dt
        k = 0
        while True:
            boundary = (k + 1) * window_length
            t_idx = int(np.searchsorted(tick_times, boundary, side="left"))
            if t_idx >= T:
                break
            row = opinions[t_idx]
            opinion_windows.append(dict(Counter(int(v) for v in row[~np.isnan(row)])))
            k += 1

    consensus_time: float | None = None
    if has_opinions:
        for t in range(T):
            row = opinions[t]
            if not np.isnan(row).any() and np.all(row == row[0]):
                consensus_time = float(clock[t])
                break

    return MetricsReport(
        robot_ids=robot_ids,
        clock=clock,
        mean_distance_to_centroid=mean_dist,
        min_pairwise_distance=min_pairwise,
        clearance=clearance,
        collision_count=collision_count,
        opinion_windows=opinion_windows,
        consensus_time=consensus_time,
    )


def _window_length(scenario: dict) -> float | None:
    params = scenario.get("pattern_params") or {}
    wl = params.get("window_length")
    return float(wl) if wl else None


def _json_safe(value):
    if value is None:
        return None
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_metrics_json(report: MetricsReport, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    final_mean = float(report.mean_distance_to_centroid[-1]) if report.tick_count else None
    final_pair = float(report.min_pairwise_distance[-1]) if report.tick_count else None
    payload = {
        "tick_count": report.tick_count,
        "robot_ids": report.robot_ids,
        "collision_count": report.collision_count,
        "consensus_time": report.consensus_time,
        "final_mean_distance_to_centroid": _json_safe(final_mean),
        "final_min_pairwise_distance": _json_safe(final_pair),
        "min_clearance_per_robot": [
            _json_safe(float(report.clearance[:, i].min())) if report.tick_count else None
            for i in range(len(report.robot_ids))
        ],
        "opinion_windows": (
            None
            if report.opinion_windows is None
            else [{str(k): v for k, v in hist.items()} for hist in report.opinion_windows]
        ),
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def write_series_csv(report: MetricsReport, path: str | Path) -> Path:
    """Plot-ready column file: one row per tick."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = ["clock", "mean_distance_to_centroid", "min_pairwise_distance"]
    header += [f"clearance_r{rid}" for rid in report.robot_ids]
    lines = [",".join(header)]
    for t in range(report.tick_count):
        row = [
            repr(float(report.clock[t])),
            repr(float(report.mean_distance_to_centroid[t])),
            repr(float(report.min_pairwise_distance[t])),
        ]
        row += [repr(float(v)) for v in report.clearance[t]]
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")
    return path

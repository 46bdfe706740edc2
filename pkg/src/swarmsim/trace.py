"""Trace files: one CSV row per (tick, robot) with a JSON metadata header.

The header line carries the fully resolved scenario so a trace is
self-describing: metrics and replay need nothing but the file. Floats are
written with repr (shortest round-trip), which makes files byte-stable for
identical runs and lossless to parse.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

HEADER_PREFIX = "# swarmsim-trace v1 "
COLUMN_NAMES = (
    "tick",
    "robot",
    "clock",
    "x",
    "y",
    "theta",
    "pattern_linear",
    "pattern_angular",
    "cmd_linear",
    "cmd_angular",
    "suppressed",
    "opinion",
)


@dataclass
class Trace:
    meta: dict
    tick: np.ndarray
    robot: np.ndarray
    clock: np.ndarray
    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    pattern_linear: np.ndarray
    pattern_angular: np.ndarray
    cmd_linear: np.ndarray
    cmd_angular: np.ndarray
    suppressed: np.ndarray
    opinion: np.ndarray

    @property
    def robot_ids(self) -> list[int]:
        return sorted(set(int(r) for r in self.robot))

    @property
    def tick_count(self) -> int:
        return len(set(int(t) for t in self.tick))


def trace_from_columns(meta: dict, columns) -> Trace:
    return Trace(
        meta=meta,
        tick=np.asarray(columns.tick, dtype=int),
        robot=np.asarray(columns.robot, dtype=int),
        clock=np.asarray(columns.clock, dtype=float),
        x=np.asarray(columns.x, dtype=float),
        y=np.asarray(columns.y, dtype=float),
        theta=np.asarray(columns.theta, dtype=float),
        pattern_linear=np.asarray(columns.pattern_linear, dtype=float),
        pattern_angular=np.asarray(columns.pattern_angular, dtype=float),
        cmd_linear=np.asarray(columns.cmd_linear, dtype=float),
        cmd_angular=np.asarray(columns.cmd_angular, dtype=float),
        suppressed=np.asarray(columns.suppressed, dtype=int),
        opinion=np.asarray(columns.opinion, dtype=float),
    )


def _fmt(value: float) -> str:
    return repr(float(value))


def write_trace(trace: Trace, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        HEADER_PREFIX + json.dumps(trace.meta, sort_keys=True, separators=(",", ":")),
        ",".join(COLUMN_NAMES),
    ]
    n = len(trace.tick)
    for i in range(n):
        opinion = trace.opinion[i]
        lines.append(
            ",".join(
                (
                    str(int(trace.tick[i])),
                    str(int(trace.robot[i])),
                    _fmt(trace.clock[i]),
                    _fmt(trace.x[i]),
                    _fmt(trace.y[i]),
                    _fmt(trace.theta[i]),
                    _fmt(trace.pattern_linear[i]),
                    _fmt(trace.pattern_angular[i]),
                    _fmt(trace.cmd_linear[i]),
                    _fmt(trace.cmd_angular[i]),
                    str(int(trace.suppressed[i])),
                    "" if math.isnan(opinion) else str(int(opinion)),
                )
            )
        )
    path.write_text("\n".join(lines) + "\n")
    return path


def read_trace(path: str | Path) -> Trace:
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith(HEADER_PREFIX):
            raise ValueError(f"{path} is not a trace file")
        meta = json.loads(header[len(HEADER_PREFIX):])
        names = fh.readline().rstrip("\n").split(",")
        if tuple(names) != COLUMN_NAMES:
            raise ValueError(f"unexpected trace columns: {names}")
        cols: dict[str, list] = {name: [] for name in COLUMN_NAMES}
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            for name, part in zip(COLUMN_NAMES, parts):
                cols[name].append(part)
    return Trace(
        meta=meta,
        tick=np.array([int(v) for v in cols["tick"]], dtype=int),
        robot=np.array([int(v) for v in cols["robot"]], dtype=int),
        clock=np.array([float(v) for v in cols["clock"]], dtype=float),
        x=np.array([float(v) for v in cols["x"]], dtype=float),
        y=np.array([float(v) for v in cols["y"]], dtype=float),
        theta=np.array([float(v) for v in cols["theta"]], dtype=float),
        pattern_linear=np.array([float(v) for v in cols["pattern_linear"]], dtype=float),
        pattern_angular=np.array([float(v) for v in cols["pattern_angular"]], dtype=float),
        cmd_linear=np.array([float(v) for v in cols["cmd_linear"]], dtype=float),
        cmd_angular=np.array([float(v) for v in cols["cmd_angular"]], dtype=float),
        suppressed=np.array([int(v) for v in cols["suppressed"]], dtype=int),
        opinion=np.array(
            [math.nan if v == "" else float(v) for v in cols["opinion"]], dtype=float
        ),
    )

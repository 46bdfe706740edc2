"""Scenario configuration, validation, and the run harness.

A scenario names a platform, an arena, robot start poses, one behavior with
parameters, a seed, and a duration. Scenarios load from YAML files, from
packaged presets (by name), or from dicts; loading resolves every random
choice (headings, opinions) so the resulting config is fully explicit and
reproducible. The resolved form round-trips through the trace header, which
is what makes replay and trace-only metrics possible.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .core import Pose2D
from .metrics import MetricsReport, compute_metrics, write_metrics_json, write_series_csv
from .patterns.base import Pattern
from .patterns.combined import DiscussedDispersionPattern, DiscussedDispersionState
from .patterns.movement import (
    AttractionConfig,
    AttractionPattern,
    DispersionConfig,
    DispersionPattern,
    DriveConfig,
    DrivePattern,
    FlockingConfig,
    FlockingPattern,
    RandomWalkConfig,
    RandomWalkPattern,
)
from .patterns.voting import MAJORITY, VOTER, VotingPattern, VotingState
from .platforms import PATTERN_DEFAULTS, PLATFORMS, PlatformSpec
from .protection import DEFAULT_STALENESS_LIMIT, ProtectionState
from .sim import RobotBody, RobotNode, Simulation, WorldState, rect_walls, wall_clearance
from .trace import Trace, trace_from_columns, write_trace

MOVEMENT_KINDS = ("attraction", "dispersion", "drive", "random_walk", "flocking")
VOTING_KINDS = (MAJORITY, VOTER)
PATTERN_KINDS = MOVEMENT_KINDS + VOTING_KINDS + ("discussed_dispersion",)

DEFAULT_WINDOW_LENGTH = 1.0


class ScenarioError(ValueError):
    pass


class UnknownPlatformError(ScenarioError):
    pass


class MappingThresholdError(ScenarioError):
    """An opinion maps to a distance the protection layer would never allow."""


class PoseOutsideArenaError(ScenarioError):
    pass


@dataclass
class ScenarioConfig:
    """Fully resolved scenario; every field is explicit and serializable."""

    name: str
    platform: str
    arena_width: float
    arena_height: float
    poses: list[Pose2D]
    pattern: str
    pattern_params: dict
    seed: int
    duration: float
    dt: float = 0.1
    extra_walls: list[list[float]] = field(default_factory=list)
    initial_opinions: list[int] | None = None
    staleness_limit: float = DEFAULT_STALENESS_LIMIT

    @property
    def spec(self) -> PlatformSpec:
        return PLATFORMS[self.platform]

    def walls(self) -> np.ndarray:
        walls = rect_walls(self.arena_width, self.arena_height)
        if self.extra_walls:
            walls = np.vstack([walls, np.asarray(self.extra_walls, dtype=float)])
        return walls

    def tick_count(self) -> int:
        return int(round(self.duration / self.dt))


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *key]))


_SCENARIO_STREAM = 0
_WALK_STREAM = 1
_VOTER_STREAM = 2


_ROBOT_KEYS = {"poses", "layout", "count", "spacing", "headings", "heading_jitter"}


def _resolve_poses(raw: dict, rng: np.random.Generator) -> list[Pose2D]:
    robots = raw.get("robots") or {}
    unknown = set(robots) - _ROBOT_KEYS
    if unknown:
        raise ScenarioError(f"unknown robot keys: {sorted(unknown)}")
    if "poses" in robots:
        poses = [Pose2D(float(x), float(y), float(th)) for x, y, th in robots["poses"]]
        if not poses:
            raise ScenarioError("need at least one robot")
        return poses
    layout = robots.get("layout", "line")
    if layout != "line":
        raise ScenarioError(f"unknown layout: {layout!r}")
    count = int(robots.get("count", 1))
    spacing = float(robots.get("spacing", 1.0))
    if count < 1 or spacing <= 0:
        raise ScenarioError("bad line layout parameters")
    headings = robots.get("headings", 0.0)
    jitter = float(robots.get("heading_jitter", 0.0))
    if jitter < 0:
        raise ScenarioError("heading_jitter must be >= 0")
    center = -(count - 1) / 2.0 * spacing
    poses = []
    for i in range(count):
        x = -(count - 1 - i) * spacing  # rightmost robot at the arena center
        if headings == "random":
            th = float(rng.uniform(-math.pi, math.pi))
        elif headings == "inward":
            # face the line's midpoint, the way robots get aimed at the
            # group when placed by hand for a gathering demo
            th = 0.0 if x <= center else math.pi
        elif isinstance(headings, (list, tuple)):
            th = float(headings[i])
        else:
            th = float(headings)
        if jitter:
            th += float(rng.uniform(-jitter, jitter))
        poses.append(Pose2D(x, 0.0, th))
    return poses


def _resolve_opinions(
    kind: str, params: dict, count: int, rng: np.random.Generator
) -> list[int] | None:
    if kind not in VOTING_KINDS and kind != "discussed_dispersion":
        return None
    raw = params.pop("opinions", "random")
    if kind == "discussed_dispersion":
        choices = sorted(int(k) for k in params["mapping"])
    else:
        choices = [int(c) for c in params.pop("opinion_choices", [0, 1])]
    if raw == "random":
        return [int(choices[rng.integers(len(choices))]) for _ in range(count)]
    opinions = [int(v) for v in raw]
    if len(opinions) != count:
        raise ScenarioError("initial opinions must match the robot count")
    return opinions


def _merged_params(platform: str, kind: str, overrides: dict) -> dict:
    params = dict(PATTERN_DEFAULTS.get(platform, {}).get(kind, {}))
    params.update(overrides or {})
    if kind in VOTING_KINDS or kind == "discussed_dispersion":
        params.setdefault("window_length", DEFAULT_WINDOW_LENGTH)
    if kind == "discussed_dispersion":
        params.setdefault("decision_duration", 20.0)
        if "mapping" not in params:
            raise ScenarioError("discussed_dispersion needs an opinion mapping")
        params["mapping"] = {int(k): float(v) for k, v in params["mapping"].items()}
    return params


def load_scenario(
    source: str | Path | dict,
    seed: int | None = None,
    duration: float | None = None,
) -> ScenarioConfig:
    """Load and resolve a scenario from a preset name, YAML path, or dict.

    seed/duration override the file's values before any random choice is
    drawn, so the override fully determines the resolved scenario.
    """
    if isinstance(source, dict):
        raw = dict(source)
    else:
        text = _read_scenario_text(source)
        raw = yaml.safe_load(text)
        if not isinstance(raw, dict):
            raise ScenarioError("scenario file must hold a mapping")

    platform = raw.get("platform")
    if platform not in PLATFORMS:
        raise UnknownPlatformError(f"unknown platform: {platform!r}")
    spec = PLATFORMS[platform]

    pattern = raw.get("pattern") or {}
    kind = pattern.get("kind")
    if kind not in PATTERN_KINDS:
        raise ScenarioError(f"unknown pattern kind: {kind!r}")
    params = _merged_params(platform, kind, pattern.get("params") or {})

    use_seed = int(raw.get("seed", 0)) if seed is None else int(seed)
    use_duration = float(raw.get("duration", 60.0)) if duration is None else float(duration)
    rng = _rng(use_seed, _SCENARIO_STREAM)

    arena = raw.get("arena") or {}
    config = ScenarioConfig(
        name=str(raw.get("name", "scenario")),
        platform=platform,
        arena_width=float(arena.get("width", 18.0)),
        arena_height=float(arena.get("height", 18.0)),
        poses=_resolve_poses(raw, rng),
        pattern=kind,
        pattern_params=params,
        seed=use_seed,
        duration=use_duration,
        dt=float(raw.get("dt", 0.1)),
        extra_walls=[[float(v) for v in w] for w in raw.get("extra_walls", [])],
        staleness_limit=float(raw.get("staleness_limit", DEFAULT_STALENESS_LIMIT)),
    )
    config.initial_opinions = _resolve_opinions(kind, params, len(config.poses), rng)
    validate_scenario(config)
    return config


def _read_scenario_text(source: str | Path) -> str:
    path = Path(source)
    if path.exists():
        return path.read_text()
    if path.suffix in (".yaml", ".yml"):
        raise ScenarioError(f"scenario file not found: {source}")
    preset = str(source).replace("-", "_")
    res = resources.files("swarmsim").joinpath(f"scenarios/{preset}.yaml")
    if not res.is_file():
        raise ScenarioError(f"no such scenario file or preset: {source!r}")
    return res.read_text()


def validate_scenario(config: ScenarioConfig) -> None:
    spec = config.spec
    if config.duration < 0 or config.dt <= 0:
        raise ScenarioError("need duration >= 0 and dt > 0")

    half_w = config.arena_width / 2.0
    half_h = config.arena_height / 2.0
    walls = config.walls()
    for i, pose in enumerate(config.poses):
        if abs(pose.x) > half_w - spec.body_radius or abs(pose.y) > half_h - spec.body_radius:
            raise PoseOutsideArenaError(f"robot {i} starts outside the arena: {pose}")
        if wall_clearance(pose.x, pose.y, walls) < spec.body_radius:
            raise PoseOutsideArenaError(f"robot {i} starts inside a wall: {pose}")

    params = config.pattern_params
    kind = config.pattern
    if kind == "attraction" and params["attraction_range"] <= spec.range_min:
        raise ScenarioError("attraction_range must exceed the sensor floor")
    if kind == "dispersion" and params["dispersion_range"] <= spec.range_min:
        raise ScenarioError("dispersion_range must exceed the sensor floor")
    if kind == "flocking":
        if not (spec.range_min < params["r_near"] < params["r_far"] <= spec.range_max):
            raise ScenarioError("flocking bands must fit inside the sensor window")
    if kind == "discussed_dispersion":
        mapping = params["mapping"]
        low = [op for op, dist in mapping.items() if dist < spec.protection_threshold]
        if low:
            raise MappingThresholdError(
                f"mapped distances below protection threshold {spec.protection_threshold}: "
                f"opinions {sorted(low)}"
            )
        if any(dist <= spec.range_min for dist in mapping.values()):
            raise ScenarioError("mapped distances must exceed the sensor floor")
    if config.initial_opinions is not None and kind == "discussed_dispersion":
        domain = set(config.pattern_params["mapping"])
        missing = set(config.initial_opinions) - domain
        if missing:
            raise ScenarioError(f"initial opinions outside mapping domain: {sorted(missing)}")


def _build_behavior(config: ScenarioConfig, robot_id: int, index: int) -> Pattern:
    spec = config.spec
    limits = spec.limits()
    kind = config.pattern
    p = config.pattern_params
    if kind == "attraction":
        return AttractionPattern(AttractionConfig(p["attraction_range"], limits))
    if kind == "dispersion":
        return DispersionPattern(DispersionConfig(p["dispersion_range"], limits))
    if kind == "drive":
        return DrivePattern(DriveConfig(p["linear"], limits))
    if kind == "random_walk":
        cfg = RandomWalkConfig(
            linear=p["linear"],
            angular=p["angular"],
            drive_duration=tuple(p["drive_duration"]),
            turn_angle=tuple(p["turn_angle"]),
            limits=limits,
            curved_turns=bool(p.get("curved_turns", False)),
        )
        return RandomWalkPattern(cfg, _rng(config.seed, _WALK_STREAM, robot_id))
    if kind == "flocking":
        cfg = FlockingConfig(
            r_near=p["r_near"],
            r_far=p["r_far"],
            linear=p["linear"],
            linear_turning=p["linear_turning"],
            angular=p["angular"],
            limits=limits,
        )
        return FlockingPattern(cfg)
    opinion = config.initial_opinions[index]
    if kind in VOTING_KINDS:
        state = VotingState(
            robot_id=robot_id,
            own_opinion=opinion,
            window_length=p["window_length"],
            rule=kind,
            rng=_rng(config.seed, _VOTER_STREAM, robot_id) if kind == VOTER else None,
        )
        return VotingPattern(state)
    if kind == "discussed_dispersion":
        voting = VotingState(
            robot_id=robot_id,
            own_opinion=opinion,
            window_length=p["window_length"],
            rule=MAJORITY,
        )
        state = DiscussedDispersionState(
            voting=voting,
            dispersion=DispersionConfig(p["mapping"][opinion], limits),
            mapping=dict(p["mapping"]),
            decision_duration=p["decision_duration"],
        )
        return DiscussedDispersionPattern(state)
    raise ScenarioError(f"unknown pattern kind: {kind!r}")


def build_simulation(config: ScenarioConfig) -> Simulation:
    spec = config.spec
    bodies = [
        RobotBody(robot_id=i, pose=pose, radius=spec.body_radius)
        for i, pose in enumerate(config.poses)
    ]
    world = WorldState(walls=config.walls(), robots=bodies, dt=config.dt)
    nodes = []
    for i, body in enumerate(bodies):
        nodes.append(
            RobotNode(
                robot_id=body.robot_id,
                spec=spec,
                behavior=_build_behavior(config, body.robot_id, i),
                protection=ProtectionState(
                    threshold=spec.protection_threshold,
                    limits=spec.limits(),
                    staleness_limit=config.staleness_limit,
                ),
            )
        )
    return Simulation(world, nodes, meta=to_meta(config))


def to_meta(config: ScenarioConfig) -> dict:
    spec = config.spec
    mapping = config.pattern_params.get("mapping")
    params = dict(config.pattern_params)
    if mapping is not None:
        params["mapping"] = {str(k): float(v) for k, v in mapping.items()}
    return {
        "format": "swarmsim-trace",
        "version": 1,
        "scenario": {
            "name": config.name,
            "platform": config.platform,
            "platform_spec": asdict(spec),
            "arena": [config.arena_width, config.arena_height],
            "extra_walls": config.extra_walls,
            "walls": [[float(v) for v in row] for row in config.walls()],
            "poses": [[p.x, p.y, p.theta] for p in config.poses],
            "robot_ids": list(range(len(config.poses))),
            "radii": [spec.body_radius] * len(config.poses),
            "pattern": config.pattern,
            "pattern_params": params,
            "initial_opinions": config.initial_opinions,
            "seed": config.seed,
            "duration": config.duration,
            "dt": config.dt,
            "staleness_limit": config.staleness_limit,
        },
    }


def from_meta(meta: dict) -> ScenarioConfig:
    sc = meta["scenario"]
    params = dict(sc["pattern_params"])
    if "mapping" in params and params["mapping"] is not None:
        params["mapping"] = {int(k): float(v) for k, v in params["mapping"].items()}
    config = ScenarioConfig(
        name=sc["name"],
        platform=sc["platform"],
        arena_width=float(sc["arena"][0]),
        arena_height=float(sc["arena"][1]),
        poses=[Pose2D(x, y, th) for x, y, th in sc["poses"]],
        pattern=sc["pattern"],
        pattern_params=params,
        seed=int(sc["seed"]),
        duration=float(sc["duration"]),
        dt=float(sc["dt"]),
        extra_walls=[[float(v) for v in w] for w in sc["extra_walls"]],
        initial_opinions=(
            None if sc["initial_opinions"] is None else [int(v) for v in sc["initial_opinions"]]
        ),
        staleness_limit=float(sc.get("staleness_limit", DEFAULT_STALENESS_LIMIT)),
    )
    if config.platform not in PLATFORMS:
        raise UnknownPlatformError(f"unknown platform: {config.platform!r}")
    validate_scenario(config)
    return config


def run(
    config: ScenarioConfig, out_dir: str | Path | None = None
) -> tuple[Trace, MetricsReport]:
    """Run a resolved scenario to completion; optionally write the artifacts.

    Writes trace.csv, metrics.json, and series.csv into out_dir when given.
    """
    sim = build_simulation(config)
    sim.run(config.tick_count())
    trace = trace_from_columns(sim.meta, sim.columns)
    report = compute_metrics(trace)
    if out_dir is not None:
        out = Path(out_dir)
        write_trace(trace, out / "trace.csv")
        write_metrics_json(report, out / "metrics.json")
        write_series_csv(report, out / "series.csv")
    return trace, report

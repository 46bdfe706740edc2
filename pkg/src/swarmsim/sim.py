"""Deterministic fixed-timestep 2D simulator.

World model: a walled rectangle (plus optional interior wall segments) and
circular robot bodies moving under unicycle kinematics. Each robot carries a
planar range sensor simulated by exact ray casting. One tick runs, robot by
robot in id order: raycast and publish the scan, tick the behavior, run the
protection arbiter; then all poses are integrated with the arbitrated
commands and one trace row per robot is recorded. Robot-wall contact
truncates motion at the contact point; robot-robot overlap is not prevented,
only recorded downstream as a collision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bus import Envelope, MessageBus, motor_cmd_topic, pattern_cmd_topic, scan_topic, VOTE_TOPIC
from .core import DriveCommand, Pose2D, ScanSnapshot
from .patterns.base import Pattern
from .platforms import PlatformSpec
from .protection import ProtectionState, arbitrate, note_command, triggered

# Turn rates below this integrate as straight-line motion.
_OMEGA_EPS = 1e-9


def integrate_pose(pose: Pose2D, cmd: DriveCommand, dt: float) -> Pose2D:
    """Exact unicycle step: straight line for negligible turn rate, else a
    circular arc of radius v/omega."""
    v, w = cmd.linear, cmd.angular
    if abs(w) < _OMEGA_EPS:
        return Pose2D(
            pose.x + v * dt * math.cos(pose.theta),
            pose.y + v * dt * math.sin(pose.theta),
            pose.theta + w * dt,
        )
    theta1 = pose.theta + w * dt
    x = pose.x + (v / w) * (math.sin(theta1) - math.sin(pose.theta))
    y = pose.y + (v / w) * (math.cos(pose.theta) - math.cos(theta1))
    return Pose2D(x, y, theta1)


def rect_walls(width: float, height: float) -> np.ndarray:
    """Boundary segments of an axis-aligned rectangle centered at the origin."""
    hw, hh = width / 2.0, height / 2.0
    return np.array(
        [
            [-hw, -hh, hw, -hh],
            [hw, -hh, hw, hh],
            [hw, hh, -hw, hh],
            [-hw, hh, -hw, -hh],
        ]
    )


def raycast(
    origin: tuple[float, float],
    heading: float,
    beam_count: int,
    walls: np.ndarray,
    circles: np.ndarray,
) -> np.ndarray:
    """Distance from origin to the first obstacle along each beam.

    Beam 0 points along the heading; bearings increase CCW in uniform steps
    covering a full revolution. Beams that hit nothing give inf. walls is an
    (S, 4) array of segments, circles an (C, 3) array of (cx, cy, r).
    """
    ox, oy = origin
    angles = heading + (math.tau / beam_count) * np.arange(beam_count)
    dx = np.cos(angles)
    dy = np.sin(angles)
    best = np.full(beam_count, np.inf)

    walls = np.asarray(walls, dtype=float).reshape(-1, 4)
    if walls.shape[0]:
        ax, ay = walls[:, 0], walls[:, 1]
        ex, ey = walls[:, 2] - ax, walls[:, 3] - ay
        aox = ax[None, :] - ox
        aoy = ay[None, :] - oy
        denom = dx[:, None] * ey[None, :] - dy[:, None] * ex[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (aox * ey[None, :] - aoy * ex[None, :]) / denom
            u = (aox * dy[:, None] - aoy * dx[:, None]) / denom
        hit = (denom != 0) & np.isfinite(t) & (t >= 0) & (u >= 0) & (u <= 1)
        t = np.where(hit, t, np.inf)
        best = np.minimum(best, t.min(axis=1))

    circles = np.asarray(circles, dtype=float).reshape(-1, 3)
    if circles.shape[0]:
        mx = circles[:, 0][None, :] - ox
        my = circles[:, 1][None, :] - oy
        r = circles[:, 2][None, :]
        b = dx[:, None] * mx + dy[:, None] * my
        c = mx * mx + my * my - r * r
        disc = b * b - c
        sq = np.sqrt(np.maximum(disc, 0.0))
        t1 = b - sq
        t2 = b + sq
        t = np.where(t1 >= 0, t1, np.where(t2 >= 0, t2, np.inf))
        t = np.where(disc >= 0, t, np.inf)
        best = np.minimum(best, t.min(axis=1))

    return best


@dataclass
class RobotBody:
    robot_id: int
    pose: Pose2D
    radius: float


@dataclass
class WorldState:
    walls: np.ndarray
    robots: list[RobotBody]
    dt: float = 0.1
    tick: int = 0

    def __post_init__(self):
        self.walls = np.asarray(self.walls, dtype=float).reshape(-1, 4)
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        ids = [b.robot_id for b in self.robots]
        if sorted(ids) != ids or len(set(ids)) != len(ids):
            raise ValueError("robots must be listed in strictly increasing id order")

    @property
    def clock(self) -> float:
        return self.tick * self.dt


def raycast_scan(world: WorldState, robot_id: int, spec: PlatformSpec) -> ScanSnapshot:
    """Simulated sweep for one robot: walls plus every other robot body.

    Hits beyond range_max are encoded as inf; hits below range_min keep
    their raw distance. Both are invalid in-band per the scan contract.
    """
    me = next(b for b in world.robots if b.robot_id == robot_id)
    circles = np.array(
        [[b.pose.x, b.pose.y, b.radius] for b in world.robots if b.robot_id != robot_id]
    ).reshape(-1, 3)
    dist = raycast((me.pose.x, me.pose.y), me.pose.theta, spec.beam_count, world.walls, circles)
    ranges = np.where(dist > spec.range_max, np.inf, dist)
    return ScanSnapshot(
        ranges=ranges,
        angle_min=0.0,
        angle_increment=math.tau / spec.beam_count,
        range_min=spec.range_min,
        range_max=spec.range_max,
        stamp=world.clock,
    )


def _segment_distances(px: float, py: float, walls: np.ndarray) -> np.ndarray:
    ax, ay = walls[:, 0], walls[:, 1]
    bx, by = walls[:, 2], walls[:, 3]
    ex, ey = bx - ax, by - ay
    L2 = ex * ex + ey * ey
    with np.errstate(divide="ignore", invalid="ignore"):
        s = ((px - ax) * ex + (py - ay) * ey) / L2
    s = np.clip(np.where(L2 > 0, s, 0.0), 0.0, 1.0)
    cx = ax + s * ex
    cy = ay + s * ey
    return np.hypot(px - cx, py - cy)


def wall_clearance(x: float, y: float, walls: np.ndarray) -> float:
    """Distance from a point to the nearest wall segment (inf if no walls)."""
    if walls.shape[0] == 0:
        return math.inf
    return float(_segment_distances(x, y, walls).min())


def resolve_wall_contact(
    pose: Pose2D, cmd: DriveCommand, dt: float, radius: float, walls: np.ndarray
) -> Pose2D:
    """Integrate one step, truncating the motion at wall contact.

    The step is first sampled at waypoints no more than one body radius
    apart, so a step spanning several radii cannot jump across a thin wall;
    the admissible fraction is then bisected so the resulting body never
    overlaps a wall (assuming the starting pose does not).
    """
    if walls.shape[0] == 0:
        return integrate_pose(pose, cmd, dt)
    travel = abs(cmd.linear) * dt
    checks = max(1, math.ceil(travel / radius))
    lo, hi = 0.0, None
    for i in range(1, checks + 1):
        f = i / checks
        p = integrate_pose(pose, cmd, f * dt)
        if wall_clearance(p.x, p.y, walls) >= radius:
            lo = f
        else:
            hi = f
            break
    if hi is None:
        return integrate_pose(pose, cmd, dt)
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        p = integrate_pose(pose, cmd, mid * dt)
        if wall_clearance(p.x, p.y, walls) >= radius:
            lo = mid
        else:
            hi = mid
    return integrate_pose(pose, cmd, lo * dt)


@dataclass
class RobotNode:
    """One robot's processing graph, wired through the bus."""

    robot_id: int
    spec: PlatformSpec
    behavior: Pattern
    protection: ProtectionState

    def attach(self, bus: MessageBus) -> None:
        # The behavior and the protection layer subscribe independently;
        # negative subscriber ids keep the protection queues separate.
        rid = self.robot_id
        self.scan_sub = bus.subscribe(scan_topic(rid), rid)
        self.vote_sub = bus.subscribe(VOTE_TOPIC, rid)
        self.prot_scan_sub = bus.subscribe(scan_topic(rid), -rid - 1)
        self.cmd_sub = bus.subscribe(pattern_cmd_topic(rid), -rid - 1)
        self.motor_sub = bus.subscribe(motor_cmd_topic(rid), rid)


@dataclass
class TraceColumns:
    tick: list = field(default_factory=list)
    robot: list = field(default_factory=list)
    clock: list = field(default_factory=list)
    x: list = field(default_factory=list)
    y: list = field(default_factory=list)
    theta: list = field(default_factory=list)
    pattern_linear: list = field(default_factory=list)
    pattern_angular: list = field(default_factory=list)
    cmd_linear: list = field(default_factory=list)
    cmd_angular: list = field(default_factory=list)
    suppressed: list = field(default_factory=list)
    opinion: list = field(default_factory=list)


class Simulation:
    """Owns the world, the bus, and the robot nodes; records the trace."""

    def __init__(self, world: WorldState, nodes: list[RobotNode], meta: dict):
        if [n.robot_id for n in nodes] != [b.robot_id for b in world.robots]:
            raise ValueError("nodes must match world robots one to one, in id order")
        self.world = world
        self.nodes = nodes
        self.meta = meta
        self.bus = MessageBus()
        for node in nodes:
            node.attach(self.bus)
        self.columns = TraceColumns()

    def step(self) -> None:
        world = self.world
        now = world.clock
        dt = world.dt
        staged: list[tuple[DriveCommand | None, DriveCommand, bool]] = []

        for node in self.nodes:
            rid = node.robot_id
            scan = raycast_scan(world, rid, node.spec)
            self.bus.publish(Envelope(scan_topic(rid), scan, rid, now))

            scan_env = node.scan_sub.drain()[-1]
            inbox = [(env.payload, env.stamp) for env in node.vote_sub.drain()]
            result = node.behavior.tick(scan_env.payload, now, dt, inbox)
            for msg in result.messages:
                self.bus.publish(Envelope(VOTE_TOPIC, msg, rid, now))
            if result.command is not None:
                self.bus.publish(Envelope(pattern_cmd_topic(rid), result.command, rid, now))

            prot_scan = node.prot_scan_sub.drain()[-1].payload
            for env in node.cmd_sub.drain():
                note_command(node.protection, env.payload, env.stamp)
            suppressed = triggered(node.protection, prot_scan)
            actuator = arbitrate(node.protection, prot_scan, now)
            self.bus.publish(Envelope(motor_cmd_topic(rid), actuator, rid, now))
            staged.append((result.command, actuator, suppressed))

        for node, body in zip(self.nodes, world.robots):
            actuator = node.motor_sub.drain()[-1].payload
            body.pose = resolve_wall_contact(body.pose, actuator, dt, body.radius, world.walls)

        world.tick += 1
        clock = world.tick * dt
        cols = self.columns
        for (pattern_cmd, actuator, suppressed), node, body in zip(
            staged, self.nodes, world.robots
        ):
            cols.tick.append(world.tick)
            cols.robot.append(node.robot_id)
            cols.clock.append(clock)
            cols.x.append(body.pose.x)
            cols.y.append(body.pose.y)
            cols.theta.append(body.pose.theta)
            cols.pattern_linear.append(math.nan if pattern_cmd is None else pattern_cmd.linear)
            cols.pattern_angular.append(math.nan if pattern_cmd is None else pattern_cmd.angular)
            cols.cmd_linear.append(actuator.linear)
            cols.cmd_angular.append(actuator.angular)
            cols.suppressed.append(1 if suppressed else 0)
            opinion = node.behavior.opinion
            cols.opinion.append(math.nan if opinion is None else float(opinion))

    def run(self, ticks: int) -> None:
        for _ in range(ticks):
            self.step()

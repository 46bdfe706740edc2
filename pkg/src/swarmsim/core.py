"""Core types and math shared by all swarm behaviors.

Everything here is pure: scan snapshots go in, force vectors and drive
commands come out. No simulator or middleware coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ATTRACTIVE = "attractive"
REPULSIVE = "repulsive"


def wrap_angle(theta: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    w = math.remainder(theta, math.tau)
    if w <= -math.pi:
        w += math.tau
    return w


@dataclass(frozen=True, slots=True)
class Vector2:
    x: float
    y: float

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def __neg__(self) -> "Vector2":
        return Vector2(-self.x, -self.y)


ZERO_VECTOR = Vector2(0.0, 0.0)


@dataclass(frozen=True, slots=True)
class Pose2D:
    """Planar pose. theta is normalized to (-pi, pi] at construction."""

    x: float
    y: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.theta)):
            raise ValueError("pose components must be finite")
        object.__setattr__(self, "theta", wrap_angle(self.theta))


@dataclass(frozen=True, slots=True)
class DriveCommand:
    """Differential-drive setpoint: forward speed [m/s], turn rate [rad/s]."""

    linear: float
    angular: float

    def __post_init__(self):
        if not (math.isfinite(self.linear) and math.isfinite(self.angular)):
            raise ValueError("drive command must be finite")


STOP = DriveCommand(0.0, 0.0)


@dataclass(frozen=True, slots=True)
class DriveLimits:
    """Per-platform actuation envelope plus the steering gain."""

    max_linear: float
    max_angular: float
    turn_gain: float = 1.0

    def __post_init__(self):
        if self.max_linear <= 0 or self.max_angular <= 0 or self.turn_gain <= 0:
            raise ValueError("drive limits must be positive")

    def clamp(self, linear: float, angular: float) -> DriveCommand:
        return DriveCommand(
            min(self.max_linear, max(-self.max_linear, linear)),
            min(self.max_angular, max(-self.max_angular, angular)),
        )


@dataclass(eq=False, slots=True)
class ScanSnapshot:
    """One full range sweep in the robot frame.

    Beam i points at bearing ``angle_min + i * angle_increment`` relative to
    the robot heading. Readings outside [range_min, range_max] are invalid
    in-band encodings (the simulator writes inf for beams that hit nothing
    inside the window and keeps raw sub-minimum distances as-is).
    """

    ranges: np.ndarray
    angle_min: float
    angle_increment: float
    range_min: float
    range_max: float
    stamp: float = 0.0

    def __post_init__(self):
        self.ranges = np.asarray(self.ranges, dtype=float)
        if self.ranges.ndim != 1 or self.ranges.size < 1:
            raise ValueError("ranges must be a non-empty 1-D array")
        if self.angle_increment <= 0:
            raise ValueError("angle_increment must be positive")
        sweep = self.ranges.size * self.angle_increment
        if abs(sweep - math.tau) > self.angle_increment + 1e-9:
            raise ValueError("beam set must cover a full revolution")
        if not (0 < self.range_min < self.range_max):
            raise ValueError("need 0 < range_min < range_max")

    @property
    def beam_count(self) -> int:
        return self.ranges.size

    def bearings(self) -> np.ndarray:
        return self.angle_min + np.arange(self.ranges.size) * self.angle_increment

    def valid_mask(self) -> np.ndarray:
        return (self.ranges >= self.range_min) & (self.ranges <= self.range_max)


def nearest_obstacle(scan: ScanSnapshot) -> tuple[float, float] | None:
    """Closest valid reading as (distance, bearing), or None if none is valid.

    Ties go to the lowest beam index.
    """
    masked = np.where(scan.valid_mask(), scan.ranges, np.inf)
    idx = int(np.argmin(masked))
    if not math.isfinite(masked[idx]):
        return None
    return float(scan.ranges[idx]), float(scan.angle_min + idx * scan.angle_increment)


def potential_field(scan: ScanSnapshot, effect_range: float, polarity: str = ATTRACTIVE) -> Vector2:
    """Weighted sum of unit bearing vectors over readings within effect_range.

    Weight falls off linearly from 1 at range_min to 0 at effect_range and is
    clamped to [0, 1]. Repulsive polarity is the exact negation of the
    attractive sum. Returns the zero vector when no reading qualifies.
    """
    if polarity not in (ATTRACTIVE, REPULSIVE):
        raise ValueError(f"unknown polarity: {polarity!r}")
    r = scan.ranges
    considered = scan.valid_mask() & (r <= effect_range)
    if not considered.any():
        return ZERO_VECTOR
    span = effect_range - scan.range_min
    if span > 0:
        w = np.clip((effect_range - r[considered]) / span, 0.0, 1.0)
    else:
        # Degenerate window: every considered reading sits at range_min.
        w = np.ones(int(considered.sum()))
    theta = scan.bearings()[considered]
    fx = float(np.sum(w * np.cos(theta)))
    fy = float(np.sum(w * np.sin(theta)))
    if polarity == REPULSIVE:
        return Vector2(-fx, -fy)
    return Vector2(fx, fy)


def vector_to_drive(force: Vector2, limits: DriveLimits) -> DriveCommand:
    """Steer toward a force vector.

    Turn rate is proportional to the heading error and clamped; forward speed
    is gated by cos(error) so the robot never drives away from the force, and
    scaled by min(1, |force|). A zero force maps to a zero command.
    """
    phi = math.atan2(force.y, force.x)
    angular = max(-limits.max_angular, min(limits.max_angular, limits.turn_gain * phi))
    linear = limits.max_linear * max(0.0, math.cos(phi)) * min(1.0, force.norm())
    return DriveCommand(linear, angular)

"""Scan utilities: nearest obstacle, potential fields, drive mapping."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from swarmsim.core import (
    ATTRACTIVE,
    REPULSIVE,
    DriveCommand,
    DriveLimits,
    Pose2D,
    ScanSnapshot,
    Vector2,
    nearest_obstacle,
    potential_field,
    vector_to_drive,
    wrap_angle,
)

from conftest import make_scan, scan_from_array, scans


def field_oracle(scan: ScanSnapshot, effect_range: float, polarity: str) -> Vector2:
    """Plain per-beam loop over the weight definition."""
    span = effect_range - scan.range_min
    fx = fy = 0.0
    for i, r in enumerate(scan.ranges):
        if not (scan.range_min <= r <= scan.range_max):
            continue
        if r > effect_range:
            continue
        if span <= 0.0:
            w = 1.0
        else:
            w = min(1.0, max(0.0, (effect_range - r) / span))
        theta = scan.angle_min + i * scan.angle_increment
        fx += w * math.cos(theta)
        fy += w * math.sin(theta)
    if polarity == REPULSIVE:
        fx, fy = -fx, -fy
    return Vector2(fx, fy)


# -- domain type validation --------------------------------------------------


def test_scan_rejects_partial_sweep():
    with pytest.raises(ValueError):
        ScanSnapshot(
            ranges=np.ones(90),
            angle_min=0.0,
            angle_increment=math.pi / 180.0,
            range_min=0.12,
            range_max=3.5,
        )


def test_scan_rejects_bad_window():
    with pytest.raises(ValueError):
        make_scan(range_min=0.0)
    with pytest.raises(ValueError):
        make_scan(range_min=3.5, range_max=3.5)


def test_pose_normalizes_theta():
    pose = Pose2D(0.0, 0.0, 3.0 * math.pi)
    assert pose.theta == pytest.approx(math.pi)
    assert Pose2D(0.0, 0.0, -math.pi).theta == pytest.approx(math.pi)


def test_drive_command_requires_finite():
    with pytest.raises(ValueError):
        DriveCommand(math.nan, 0.0)
    with pytest.raises(ValueError):
        DriveCommand(0.0, math.inf)


def test_wrap_angle_half_open_interval():
    assert wrap_angle(math.pi) == pytest.approx(math.pi)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)
    assert wrap_angle(2.0 * math.pi) == pytest.approx(0.0)


# -- nearest_obstacle ---------------------------------------------------------


def test_nearest_all_invalid_is_none():
    assert nearest_obstacle(make_scan(fill=3.5 + 1.0)) is None


def test_nearest_single_valid_beam():
    scan = make_scan({0: 0.4})
    assert nearest_obstacle(scan) == (0.4, 0.0)


def test_nearest_two_beams_picks_minimum():
    scan = make_scan({0: 0.4, 180: 0.3})
    dist, bearing = nearest_obstacle(scan)
    assert dist == 0.3
    assert bearing == pytest.approx(math.pi)


def test_nearest_tie_breaks_on_lowest_index():
    scan = make_scan({10: 0.5, 40: 0.5})
    dist, bearing = nearest_obstacle(scan)
    assert dist == 0.5
    assert bearing == pytest.approx(10 * scan.angle_increment)


def test_nearest_ignores_below_floor():
    scan = make_scan({0: 0.05, 90: 1.0})
    assert nearest_obstacle(scan) == (1.0, pytest.approx(math.pi / 2))


@given(scans())
def test_nearest_is_min_of_valid(scan):
    result = nearest_obstacle(scan)
    valid = [
        (r, i)
        for i, r in enumerate(scan.ranges)
        if scan.range_min <= r <= scan.range_max
    ]
    if not valid:
        assert result is None
    else:
        best = min(valid)
        assert result[0] == best[0]
        assert result[1] == pytest.approx(best[1] * scan.angle_increment)


# -- potential_field ----------------------------------------------------------


def test_field_empty_scan_is_zero():
    assert potential_field(make_scan(), 2.0, ATTRACTIVE) == Vector2(0.0, 0.0)


def test_field_weight_clamps_to_one_at_floor():
    scan = make_scan({0: 0.12})
    force = potential_field(scan, 2.0, ATTRACTIVE)
    assert force.x == pytest.approx(1.0)
    assert force.y == pytest.approx(0.0, abs=1e-12)


def test_field_lateral_cancellation():
    scan = make_scan({90: 1.0, 270: 1.0})
    force = potential_field(scan, 2.0, REPULSIVE)
    assert force.x == pytest.approx(0.0, abs=1e-12)
    assert force.y == pytest.approx(0.0, abs=1e-12)


def test_field_hand_computed_weights():
    # obstacle at 1.0 m ahead and another at exactly the effect range
    scan = make_scan({0: 1.0, 90: 2.0})
    force = potential_field(scan, 2.0, ATTRACTIVE)
    assert force.x == pytest.approx((2.0 - 1.0) / (2.0 - 0.12))
    assert force.x == pytest.approx(0.5319148936170213)
    assert force.y == pytest.approx(0.0, abs=1e-12)


def test_field_beyond_effect_range_ignored():
    scan = make_scan({0: 2.5})
    assert potential_field(scan, 2.0, ATTRACTIVE) == Vector2(0.0, 0.0)


def test_field_degenerate_span_uses_full_weight():
    scan = make_scan({0: 0.12})
    force = potential_field(scan, 0.12, ATTRACTIVE)
    assert force.x == pytest.approx(1.0)


@given(scans(), st.floats(min_value=0.13, max_value=5.0))
def test_field_matches_loop_oracle(scan, effect_range):
    got = potential_field(scan, effect_range, ATTRACTIVE)
    want = field_oracle(scan, effect_range, ATTRACTIVE)
    assert got.x == pytest.approx(want.x, abs=1e-12)
    assert got.y == pytest.approx(want.y, abs=1e-12)


@given(scans(), st.floats(min_value=0.13, max_value=5.0))
def test_field_repulsive_is_exact_negation(scan, effect_range):
    att = potential_field(scan, effect_range, ATTRACTIVE)
    rep = potential_field(scan, effect_range, REPULSIVE)
    assert rep.x == -att.x
    assert rep.y == -att.y


@given(scans(), st.integers(min_value=0, max_value=71))
def test_field_roll_preserves_magnitude(scan, shift):
    """Rotating the scan by whole beams rotates the force by the same angle."""
    shift = shift % len(scan.ranges)
    rolled = scan_from_array(np.roll(scan.ranges, shift))
    f0 = potential_field(scan, 2.0, ATTRACTIVE)
    f1 = potential_field(rolled, 2.0, ATTRACTIVE)
    delta = shift * scan.angle_increment
    want_x = f0.x * math.cos(delta) - f0.y * math.sin(delta)
    want_y = f0.x * math.sin(delta) + f0.y * math.cos(delta)
    assert f1.x == pytest.approx(want_x, abs=1e-9)
    assert f1.y == pytest.approx(want_y, abs=1e-9)


# -- vector_to_drive ----------------------------------------------------------


def test_drive_zero_force_is_rest(tb3_limits):
    assert vector_to_drive(Vector2(0.0, 0.0), tb3_limits) == DriveCommand(0.0, 0.0)


def test_drive_aligned_unit_force():
    limits = DriveLimits(max_linear=0.2, max_angular=1.8)
    cmd = vector_to_drive(Vector2(1.0, 0.0), limits)
    assert cmd.linear == pytest.approx(0.2)
    assert cmd.angular == pytest.approx(0.0)


def test_drive_perpendicular_force():
    limits = DriveLimits(max_linear=0.2, max_angular=1.8)
    cmd = vector_to_drive(Vector2(0.0, 1.0), limits)
    assert cmd.linear == pytest.approx(0.0, abs=1e-12)
    assert cmd.angular == pytest.approx(math.pi / 2)


def test_drive_rearward_force_gates_linear(tb3_limits):
    cmd = vector_to_drive(Vector2(-1.0, 0.0), tb3_limits)
    assert cmd.linear == 0.0
    assert abs(cmd.angular) == pytest.approx(tb3_limits.max_angular)


def test_drive_small_force_scales_linear(tb3_limits):
    cmd = vector_to_drive(Vector2(0.5, 0.0), tb3_limits)
    assert cmd.linear == pytest.approx(0.26 * 0.5)


def test_drive_turn_gain_amplifies_steering():
    limits = DriveLimits(max_linear=0.26, max_angular=1.82, turn_gain=3.0)
    cmd = vector_to_drive(Vector2(1.0, 0.2), limits)
    assert cmd.angular == pytest.approx(min(1.82, 3.0 * math.atan2(0.2, 1.0)))


finite_forces = st.builds(
    Vector2,
    st.floats(min_value=-50.0, max_value=50.0),
    st.floats(min_value=-50.0, max_value=50.0),
)


@given(finite_forces)
def test_drive_respects_limits_totally(force):
    limits = DriveLimits(max_linear=0.26, max_angular=1.82, turn_gain=2.5)
    cmd = vector_to_drive(force, limits)
    assert 0.0 <= cmd.linear <= limits.max_linear + 1e-12
    assert abs(cmd.angular) <= limits.max_angular + 1e-12

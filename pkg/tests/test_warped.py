"""The warped product surface: profile, distances, volumes, ratios."""

import math

import numpy as np
import pytest

from orbitlab.errors import ConvergenceError
from orbitlab.warped import (
    CIRCUMFERENCE,
    ball_volume,
    deck_distances,
    falsifying_ratios,
    metric_factor,
    orbit_count,
    point_distance,
    verify_dual,
    warp,
    warp_derivative,
    word_count,
)

# --------------------------------------------------------------------------
# the profile


def test_warp_profile_values():
    assert warp(0.0) == 1.0
    assert warp(1.0) == 1.0
    assert warp(2.0) == 0.25
    assert warp(-2.0) == 0.25
    assert warp(4.0) == pytest.approx(1 / 16)
    assert warp(1.5) == pytest.approx(0.65625)


def test_warp_is_even_and_monotone_outward():
    xs = [0.1 * i for i in range(0, 80)]
    for x in xs:
        assert warp(x) == warp(-x)
    vals = [warp(x) for x in xs]
    for a, b in zip(vals, vals[1:]):
        assert b <= a + 1e-15


def test_warp_derivative_matches_finite_differences():
    eps = 1e-7
    for r in (0.3, 1.2, 1.8, 2.5, -1.5, -3.0):
        fd = (warp(r + eps) - warp(r - eps)) / (2 * eps)
        assert warp_derivative(r) == pytest.approx(fd, abs=1e-5)


def test_warp_derivative_continuous_at_joins():
    assert warp_derivative(1.0) == 0.0
    assert warp_derivative(1.0 + 1e-9) == pytest.approx(0.0, abs=1e-7)
    assert warp_derivative(2.0) == pytest.approx(-0.25)
    assert warp_derivative(2.0 - 1e-9) == pytest.approx(-0.25, abs=1e-7)


def test_metric_factor_vectorized_and_square():
    rs = np.array([0.0, 1.5, 3.0])
    plain = metric_factor(rs)
    squared = metric_factor(rs, square=True)
    assert plain == pytest.approx([1.0, 0.65625, 1 / 9])
    assert squared == pytest.approx(plain**2)


# --------------------------------------------------------------------------
# counts


def test_word_count():
    assert word_count(0.0) == 1
    assert word_count(0.9) == 1
    assert word_count(4.0) == 9
    with pytest.raises(ValueError):
        word_count(-1.0)


def test_orbit_count_from_table():
    table = [0.0, 5.0, 9.0, 14.0]
    assert orbit_count(table, 6.0) == 3
    assert orbit_count(table, 9.0) == 5
    with pytest.raises(Exception):
        orbit_count(table, 20.0)


# --------------------------------------------------------------------------
# certified distances


def test_deck_distance_first_translate_is_flat_loop():
    table = deck_distances(2)
    assert table.values[0] == 0.0
    # the straight loop through the flat core has length exactly 2*pi
    assert table.values[1] == pytest.approx(CIRCUMFERENCE, rel=0.02)
    assert table.rel_max <= table.tol


def test_deck_distances_monotone():
    table = deck_distances(8)
    vals = table.values
    for a, b in zip(vals[1:], vals[2:]):
        assert b > a


def test_deck_distances_sublinear():
    table = deck_distances(16)
    ref = 4.0 * math.sqrt(math.pi)
    # far translates are reached through the thin end, near sqrt growth
    assert table.values[16] < 0.4 * CIRCUMFERENCE * 16
    assert abs(table.values[16] / 4.0 - ref) <= 0.1 * ref


def test_deck_distances_rejects_bad_k():
    with pytest.raises(ValueError):
        deck_distances(0)


def test_unreachable_tolerance_raises():
    with pytest.raises(ConvergenceError):
        deck_distances(2, tol=1e-9)


def test_point_distance_radial():
    cert = point_distance((0.0, 0.0), (3.0, 0.0))
    assert cert.value == pytest.approx(3.0, rel=0.01)


def test_point_distance_around_the_core():
    cert = point_distance((0.0, 0.0), (0.0, CIRCUMFERENCE))
    assert cert.value == pytest.approx(CIRCUMFERENCE, rel=0.02)


# --------------------------------------------------------------------------
# volumes and ratios


def test_ball_volume_flat_core():
    # the 8-neighbor chamfer metric overshoots off-axis distances by up
    # to 8%, shaving the ball; the deficit stays within the squared
    # chamfer factor even though it never shrinks under refinement
    v = ball_volume(1.0)
    assert v.value == pytest.approx(math.pi, rel=0.14)
    assert v.value < math.pi
    assert v.rel_diff <= v.tol


def test_ball_volume_log_growth():
    v4 = ball_volume(4.0).value
    v8 = ball_volume(8.0).value
    assert v8 - v4 == pytest.approx(4 * math.pi * math.log(2), rel=0.1)


def test_ball_volume_rejects_nonpositive():
    with pytest.raises(ValueError):
        ball_volume(0.0)


def test_square_warp_shrinks_everything():
    plain = ball_volume(6.0).value
    squared = ball_volume(6.0, square=True).value
    assert squared < plain
    t_plain = deck_distances(4)
    t_sq = deck_distances(4, square=True)
    assert t_sq.values[4] < t_plain.values[4]


def test_falsifying_ratios_decay():
    rows = falsifying_ratios([1.0, 2.0], [4.0, 16.0])
    by_key = {(r.scale_c, r.radius): r for r in rows}
    for c in (1.0, 2.0):
        assert by_key[(c, 16.0)].ratio < by_key[(c, 4.0)].ratio
    # doubling c doubles the word count, roughly doubling the ratio
    assert by_key[(2.0, 16.0)].ratio > by_key[(1.0, 16.0)].ratio


def test_verify_dual_small_radii():
    rep = verify_dual([8.0, 16.0])
    assert rep.ok
    assert [row.radius for row in rep.rows] == [8.0, 16.0]
    for row in rep.rows:
        assert row.lower_lhs >= row.lower_rhs
        assert row.upper_lhs <= row.upper_rhs

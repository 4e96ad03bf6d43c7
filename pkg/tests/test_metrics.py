"""Set distances: raster Fraenkel vs the piecewise-analytic polar oracle,
certified dictionary bounds, the node LP, and the oscillation index."""

from __future__ import annotations

import numpy as np
import pytest

from steinshapes import (
    StarDomain,
    fraenkel_asymmetry,
    fraenkel_polar_oracle,
    normalize,
    oscillation_index,
    zolotarev_lower,
    zolotarev_lp,
    zolotarev_oracle,
    zolotarev_tv,
)
from steinshapes.errors import GridTooCoarse

# frozen oracle values, printed once at %.17g and pinned
VN_POLAR_FRAENKEL = 0.12673006187118815
VN_Z_ALPHA1 = 0.092209453499899244
VN_Z_ALPHA05 = 0.08946524072916491
VN_LP_ORACLE = 0.11967016589200467
VN_TV = 0.39813719292650651
VN_OSCILLATION = 0.35317371922235025


def ball() -> StarDomain:
    return StarDomain(1.0, ())


def bump_vn() -> StarDomain:
    return normalize(StarDomain(1.0, (0.0, 0.1)), "volume")


def test_ball_fraenkel_vanishes():
    res = fraenkel_asymmetry(ball())
    assert res.value < 1e-10
    assert abs(res.center[0]) < 1e-8 and abs(res.center[1]) < 1e-8
    assert res.radius == pytest.approx(1.0, rel=1e-12)


def test_fraenkel_grid_matches_polar_oracle():
    oracle = fraenkel_polar_oracle(bump_vn())
    np.testing.assert_allclose(oracle, VN_POLAR_FRAENKEL, rtol=1e-12)
    grid = fraenkel_asymmetry(bump_vn())
    assert abs(grid.value - oracle) < 5e-5


def test_raster_grid_floors():
    with pytest.raises(GridTooCoarse):
        fraenkel_asymmetry(ball(), n=64)
    with pytest.raises(GridTooCoarse):
        zolotarev_tv(ball(), n=64)


def test_dictionary_bound_frozen():
    est1 = zolotarev_lower(bump_vn(), alpha=1.0)
    np.testing.assert_allclose(est1.lower_bound, VN_Z_ALPHA1, rtol=1e-10)
    assert est1.witness == "harmonic-moment k=2"
    est_half = zolotarev_lower(bump_vn(), alpha=0.5)
    np.testing.assert_allclose(est_half.lower_bound, VN_Z_ALPHA05, rtol=1e-10)
    assert all(value >= 0.0 for _, value, _ in est1.features)
    assert est1.lower_bound == max(value for _, value, _ in est1.features)


def test_dictionary_bound_is_rotation_invariant():
    base = zolotarev_lower(bump_vn(), alpha=1.0).lower_bound
    rotated = zolotarev_lower(bump_vn().rotated(0.7), alpha=1.0).lower_bound
    assert abs(base - rotated) < 1e-6


def test_lp_two_point_closed_form():
    # max h1 - h2 over m + s <= 1 with |h| <= m and |h1 - h2| <= s
    # at unit separation splits the budget as m = 1/3, s = 2/3
    points = np.array([[0.0, 0.0], [1.0, 0.0]])
    optimum, h, m, s = zolotarev_lp(points, np.array([1.0, -1.0]), alpha=1.0)
    assert optimum == pytest.approx(2.0 / 3.0, rel=1e-9)
    assert m == pytest.approx(1.0 / 3.0, rel=1e-6)
    assert s == pytest.approx(2.0 / 3.0, rel=1e-6)
    assert h[0] - h[1] == pytest.approx(2.0 / 3.0, rel=1e-6)


def test_lp_oracle_frozen():
    est = zolotarev_oracle(bump_vn())
    np.testing.assert_allclose(est.lower_bound, VN_LP_ORACLE, rtol=1e-10)
    assert est.method == "lp-oracle"
    assert len(est.history) == 2
    assert est.history[-1][1] == est.lower_bound
    assert est.error_bound > 0.0
    assert len(est.node_values) == est.grid


def test_lp_oracle_dominates_dictionary_here():
    oracle = zolotarev_oracle(bump_vn()).lower_bound
    dictionary = zolotarev_lower(bump_vn()).lower_bound
    assert oracle > dictionary


def test_lp_oracle_ball_within_slack():
    est = zolotarev_oracle(ball())
    assert abs(est.lower_bound) <= 1e-9
    assert abs(est.lower_bound) <= est.error_bound


def test_lp_node_bounds():
    with pytest.raises(ValueError):
        zolotarev_oracle(ball(), n_g=500)
    with pytest.raises(GridTooCoarse):
        zolotarev_oracle(ball(), n_g=8)


def test_tv_distance_frozen():
    np.testing.assert_allclose(zolotarev_tv(bump_vn()), VN_TV, rtol=1e-12)
    assert zolotarev_tv(ball()) < 1e-10


def test_oscillation_index_frozen():
    res = oscillation_index(bump_vn())
    np.testing.assert_allclose(res.value, VN_OSCILLATION, rtol=1e-10)
    assert res.center == (0.0, 0.0)
    assert len(res.evaluations) == 2
    origin_only = oscillation_index(bump_vn(), include_fraenkel=False)
    assert len(origin_only.evaluations) == 1
    np.testing.assert_allclose(origin_only.value, res.value, rtol=1e-10)


def test_alpha_validation():
    with pytest.raises(ValueError):
        zolotarev_lower(ball(), alpha=0.0)
    with pytest.raises(ValueError):
        zolotarev_oracle(ball(), alpha=1.5)

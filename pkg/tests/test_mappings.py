"""Conformal map families, Lipschitz sampling and the expansion search."""

import math

import numpy as np
import pytest

from intrinsic_metrics import (
    Cayley,
    HalfSpace,
    MetricKind,
    MobiusDisk,
    OutsideDomainError,
    PowerMap,
    RadialMap,
    Sector,
    SectorInversion,
    UnitBall,
    apply,
    apply_many,
    claimed_bound,
    conjecture_search,
    contains,
    extremal_pairs,
    lipschitz_estimate,
    metric_pairs,
    power_coefficient,
    power_map_bounds_check,
    radial_map_check,
    sample_points,
    sector_inversion_s_invariance,
)
from intrinsic_metrics.mappings import _conjecture_ratios


# ---------------------------------------------------------------------------
# Map construction and pointwise images


def test_mobius_sends_parameter_to_origin():
    m = MobiusDisk(0.3 + 0.4j)
    img = apply(m, (0.3, 0.4))
    assert abs(img[0]) < 1e-15 and abs(img[1]) < 1e-15


def test_mobius_origin_goes_to_minus_a():
    m = MobiusDisk(0.3 + 0.4j)
    img = apply(m, (0.0, 0.0))
    assert img[0] == pytest.approx(-0.3, abs=1e-15)
    assert img[1] == pytest.approx(-0.4, abs=1e-15)


def test_mobius_parameter_validation():
    with pytest.raises(ValueError):
        MobiusDisk(1.0)
    with pytest.raises(ValueError):
        MobiusDisk(0.8 + 0.7j)


def test_cayley_images():
    m = Cayley()
    assert apply(m, (0.0, 0.0)) == pytest.approx((0.0, 1.0), abs=1e-15)
    # (1 - 0.5) i / 1.5 = i / 3
    assert apply(m, (0.5, 0.0)) == pytest.approx((0.0, 1.0 / 3.0), abs=1e-15)
    assert apply(m, (-0.5, 0.0)) == pytest.approx((0.0, 3.0), abs=1e-14)


def test_cayley_pole_rejected():
    with pytest.raises(OutsideDomainError):
        apply(Cayley(), (-1.0, 0.0))


def test_power_map_squares_the_angle():
    m = PowerMap(math.pi / 2.0, math.pi)
    c = math.cos(math.pi / 4.0)
    img = apply(m, (c, c))
    assert img == pytest.approx((0.0, 1.0), abs=1e-15)


def test_power_map_angle_validation():
    with pytest.raises(ValueError):
        PowerMap(0.0, math.pi)
    with pytest.raises(ValueError):
        PowerMap(math.pi / 2.0, 1.5 * math.pi)


def test_radial_map_stretches_radius():
    m = RadialMap(0.5)
    img = apply(m, (0.25, 0.0))
    assert img == pytest.approx((0.5, 0.0), abs=1e-15)


def test_radial_map_exponent_validation():
    for bad in (0.0, 1.0, -0.5, 2.0):
        with pytest.raises(ValueError):
            RadialMap(bad)


def test_inversion_flips_radius():
    m = SectorInversion(math.pi / 2.0)
    c = 2.0 * math.cos(math.pi / 4.0)
    img = apply(m, (c, c))
    r = math.hypot(*img)
    assert r == pytest.approx(0.5, abs=1e-15)
    assert math.atan2(img[1], img[0]) == pytest.approx(math.pi / 4.0, abs=1e-15)


def test_inversion_angle_validation():
    with pytest.raises(ValueError):
        SectorInversion(0.0)
    with pytest.raises(ValueError):
        SectorInversion(2.0 * math.pi)


def test_apply_rejects_source_outsiders():
    with pytest.raises(OutsideDomainError):
        apply(MobiusDisk(0.5), (2.0, 0.0))
    with pytest.raises(OutsideDomainError):
        apply(RadialMap(0.5), (0.0, 0.0))
    with pytest.raises(OutsideDomainError):
        apply(SectorInversion(math.pi / 2.0), (-1.0, 0.5))


def test_apply_many_matches_apply():
    m = MobiusDisk(0.2 - 0.3j)
    rng = np.random.default_rng(5)
    X = sample_points(UnitBall(2), 64, rng)
    imgs = apply_many(m, X)
    for row, img in zip(X, imgs):
        one = apply(m, row)
        assert img[0] == pytest.approx(one[0], abs=1e-15)
        assert img[1] == pytest.approx(one[1], abs=1e-15)


# ---------------------------------------------------------------------------
# Involutions and inverse pairs


def test_mobius_inverse_roundtrip():
    a = 0.4 + 0.25j
    rng = np.random.default_rng(11)
    X = sample_points(UnitBall(2), 200, rng)
    back = apply_many(MobiusDisk(-a), apply_many(MobiusDisk(a), X))
    assert np.max(np.abs(back - X)) < 1e-12


def test_power_map_inverse_roundtrip():
    alpha, beta = math.pi / 3.0, math.pi / 1.5
    rng = np.random.default_rng(12)
    X = sample_points(Sector(alpha), 200, rng)
    back = apply_many(PowerMap(beta, alpha), apply_many(PowerMap(alpha, beta), X))
    assert np.max(np.abs(back - X)) < 1e-11


def test_sector_inversion_is_an_involution():
    m = SectorInversion(2.0)
    rng = np.random.default_rng(13)
    X = sample_points(Sector(2.0), 200, rng)
    back = apply_many(m, apply_many(m, X))
    assert np.max(np.abs(back - X)) < 1e-12


def test_inversion_fixes_the_unit_circle():
    m = SectorInversion(3.0)
    ang = np.linspace(0.1, 2.9, 25)
    X = np.column_stack([np.cos(ang), np.sin(ang)])
    assert np.max(np.abs(apply_many(m, X) - X)) < 1e-15


# ---------------------------------------------------------------------------
# Hyperbolic isometries


def test_cayley_preserves_hyperbolic_distance():
    rng = np.random.default_rng(21)
    X = sample_points(UnitBall(2), 2000, rng)
    Y = sample_points(UnitBall(2), 2000, rng)
    src = metric_pairs(MetricKind.RHO, UnitBall(2), X, Y)
    m = Cayley()
    img = metric_pairs(MetricKind.RHO, HalfSpace(2),
                       apply_many(m, X), apply_many(m, Y))
    assert np.max(np.abs(img - src)) < 1e-9


def test_mobius_preserves_hyperbolic_distance():
    rep = lipschitz_estimate(MobiusDisk(0.6 - 0.2j), "rho", 2000, seed=3)
    assert rep.bound_claimed == 1.0
    assert rep.bound_respected
    assert rep.sup_ratio == pytest.approx(1.0, abs=1e-9)


# ---------------------------------------------------------------------------
# Claimed bounds and Lipschitz sampling


def test_claimed_bound_table():
    assert claimed_bound(MobiusDisk(0.5), MetricKind.T) == 2.0
    assert claimed_bound(Cayley(), MetricKind.T) == 2.0
    assert claimed_bound(Cayley(), MetricKind.RHO) == 1.0
    up = PowerMap(math.pi / 2.0, math.pi)
    assert claimed_bound(up, MetricKind.T) == pytest.approx(math.sqrt(2.0))
    down = PowerMap(math.pi, math.pi / 2.0)
    assert claimed_bound(down, MetricKind.T) == 2.0
    assert claimed_bound(RadialMap(0.5), MetricKind.T) == pytest.approx(
        1.0 / (2.0 ** 0.5 - 1.0))
    narrow = SectorInversion(math.pi / 2.0)
    assert claimed_bound(narrow, MetricKind.T) == pytest.approx(
        1.0 + math.sin(math.pi / 4.0))
    wide = SectorInversion(1.5 * math.pi)
    assert claimed_bound(wide, MetricKind.T) == 2.0
    assert claimed_bound(wide, MetricKind.SRATIO) == 1.0
    with pytest.raises(ValueError):
        claimed_bound(RadialMap(0.5), MetricKind.JSTAR)
    with pytest.raises(ValueError):
        claimed_bound(Cayley(), MetricKind.SRATIO)


def test_power_coefficient_identities():
    a, b = 1.1, 2.3
    assert power_coefficient(a, a) == pytest.approx(1.0)
    assert power_coefficient(a, b) * power_coefficient(b, a) == pytest.approx(1.0)


def test_cayley_t_expansion_approaches_two():
    rep = lipschitz_estimate(Cayley(), "t", 5000, seed=7)
    assert rep.bound_respected
    assert rep.sup_ratio >= 1.99
    assert rep.sup_ratio <= 2.0 + 1e-9


def test_mobius_t_expansion_within_two():
    rep = lipschitz_estimate(MobiusDisk(0.9), "t", 5000, seed=7)
    assert rep.bound_respected
    assert 1.0 <= rep.sup_ratio <= 2.0 + 1e-9


def test_power_map_expansion_reaches_coefficient():
    rep = lipschitz_estimate(PowerMap(math.pi / 2.0, math.pi), "t", 5000, seed=9)
    assert rep.bound_respected
    assert rep.sup_ratio >= math.sqrt(2.0) - 1e-3


def test_inversion_narrow_sector_supremum():
    rep = lipschitz_estimate(
        SectorInversion(math.pi / 2.0), "t", 20000, seed=1)
    assert rep.bound_respected
    assert 1.70 <= rep.sup_ratio <= 1.7072


def test_inversion_wide_sector_supremum():
    rep = lipschitz_estimate(SectorInversion(1.5 * math.pi), "t", 5000, seed=1)
    assert rep.bound_respected
    assert rep.sup_ratio >= 1.99


def test_lipschitz_estimate_rejects_empty_sample():
    with pytest.raises(ValueError):
        lipschitz_estimate(Cayley(), "t", 0, seed=0)


def test_lipschitz_estimate_is_deterministic():
    a = lipschitz_estimate(SectorInversion(2.0), "t", 3000, seed=42)
    b = lipschitz_estimate(SectorInversion(2.0), "t", 3000, seed=42)
    assert a == b


def test_lipschitz_custom_sampler_is_used():
    def fixed(domain, n, rng):
        pts = np.tile([[0.5, 0.5], [0.25, 0.125]], (n // 2 + 1, 1))
        return pts[:n]

    rep = lipschitz_estimate(SectorInversion(math.pi / 2.0), "t", 4,
                             seed=0, sampler=fixed)
    # two distinct fixed points plus the extremal family
    assert rep.samples == 4 + extremal_pairs(
        SectorInversion(math.pi / 2.0), MetricKind.T)[0].shape[0]


def test_extremal_pairs_stay_inside_source():
    cases = [
        (MobiusDisk(0.7j), MetricKind.T),
        (Cayley(), MetricKind.T),
        (PowerMap(math.pi / 3.0, math.pi / 2.0), MetricKind.T),
        (RadialMap(0.5), MetricKind.T),
        (SectorInversion(2.5), MetricKind.T),
    ]
    for m, kind in cases:
        X, Y = extremal_pairs(m, kind)
        assert X.shape == Y.shape and X.shape[0] > 0
        for row in np.vstack([X, Y]):
            assert contains(m.source, row)


def test_extremal_pairs_empty_for_uncovered_metric():
    X, Y = extremal_pairs(SectorInversion(2.0), MetricKind.SRATIO)
    assert X.shape == (0, 2) and Y.shape == (0, 2)


# ---------------------------------------------------------------------------
# Dedicated two-sided checks


@pytest.mark.parametrize("alpha,beta", [
    (math.pi / 2.0, math.pi),
    (math.pi, math.pi / 2.0),
    (math.pi / 3.0, math.pi / 3.0),
])
def test_power_map_two_sided_bounds(alpha, beta):
    rep = power_map_bounds_check(alpha, beta, 10000, seed=17)
    assert rep.violations == 0
    assert rep.witnesses == ()


def test_power_map_identity_case_has_unit_ratio():
    # The map rebuilds points from polar form, so merged extremal pairs see
    # coordinate rounding amplified into the ratio; 1e-9 absorbs that.
    rep = power_map_bounds_check(1.0, 1.0, 2000, seed=3)
    assert rep.violations == 0
    assert rep.ratio_min == pytest.approx(1.0, abs=1e-9)
    assert rep.ratio_max == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("a", [0.25, 0.5, 0.75])
def test_radial_map_ratio_range(a):
    rep = radial_map_check(a, 10000, seed=23)
    assert rep.violations == 0
    cap = 1.0 / (2.0 ** a - 1.0)
    assert 1.0 - 1e-9 <= rep.ratio_min
    assert rep.ratio_max <= cap + 1e-9


def test_radial_map_ratio_is_one_on_small_radii():
    # With both points at radius r and r, r^a below one half, the boundary
    # distance before and after the map is the radius itself, so the t-ratio
    # cancels exactly.
    m = RadialMap(0.5)
    ang = 0.3
    X = np.array([[0.2 * math.cos(ang), 0.2 * math.sin(ang)]])
    Y = np.array([[0.2 * math.cos(ang), -0.2 * math.sin(ang)]])
    from intrinsic_metrics.domains import PuncturedDisk
    src = metric_pairs(MetricKind.T, PuncturedDisk(), X, Y)
    img = metric_pairs(MetricKind.T, PuncturedDisk(),
                       apply_many(m, X), apply_many(m, Y))
    assert img[0] / src[0] == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("theta", [math.pi / 2.0, math.pi, 1.5 * math.pi])
def test_inversion_s_invariance(theta):
    rep = sector_inversion_s_invariance(theta, 4000, seed=29)
    assert rep.violations == 0
    assert rep.worst_margin >= -1e-9


# ---------------------------------------------------------------------------
# Expansion conjecture search


def test_conjecture_ratio_closed_case():
    # x = a, y = 0: both t-values equal |a| / 2, so the normalized ratio is
    # exactly 1 / (1 + |a|).
    for a in (0.3 + 0.0j, 0.5j, -0.2 + 0.6j):
        val = _conjecture_ratios(
            np.array([a]), np.array([a]), np.array([0.0 + 0.0j]))[0]
        assert val == pytest.approx(1.0 / (1.0 + abs(a)), abs=1e-12)


def test_conjecture_ratio_merged_pair_is_nan():
    z = 0.4 + 0.1j
    val = _conjecture_ratios(np.array([0.2 + 0.0j]), np.array([z]),
                             np.array([z]))[0]
    assert math.isnan(val)


def test_conjecture_search_is_deterministic():
    a = conjecture_search(20000, seed=99)
    b = conjecture_search(20000, seed=99)
    assert a == b
    c = conjecture_search(20000, seed=100)
    assert c.sup_ratio != a.sup_ratio or c.witness != a.witness


def test_conjecture_search_never_flags_failure():
    for strategy in ("uniform", "boundary-biased"):
        rep = conjecture_search(20000, seed=5, strategy=strategy)
        assert rep.bound_claimed == 1.0
        assert 0.0 < rep.sup_ratio <= 1.0 + 1e-9
        assert rep.bound_respected


def test_conjecture_search_validation():
    with pytest.raises(ValueError):
        conjecture_search(0, seed=1)
    with pytest.raises(ValueError):
        conjecture_search(10, seed=1, strategy="exhaustive")


def test_ratio_report_json_shape():
    rep = lipschitz_estimate(Cayley(), "t", 100, seed=0)
    d = rep.to_dict()
    assert set(d) == {"map", "metric", "sup_ratio", "bound_claimed",
                      "bound_respected", "witness", "samples", "seed"}
    assert d["metric"] == "t"
    assert isinstance(d["witness"], list)
    assert all(isinstance(part, list) for part in d["witness"])

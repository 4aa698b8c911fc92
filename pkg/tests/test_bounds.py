"""Inequality catalog: applicability, fuzzing, sharpness families."""

import math

import numpy as np
import pytest

from intrinsic_metrics import bounds as B
from intrinsic_metrics import domains as D
from intrinsic_metrics import metrics as M

HS = D.HalfSpace()
UB = D.UnitBall()
SEC3 = D.Sector(math.pi / 3.0)
SEC_PI = D.Sector(math.pi)
SEC_LARGE = D.Sector(4.5)
PENT = D.pentagram()

GENERAL_IDS = {
    "jstar_le_p", "p_le_sqrt2_jstar", "jstar_le_s", "s_le_2jstar",
    "t_le_jstar", "jstar_le_2t", "t_le_p", "p_le_2t", "t_le_s", "s_le_2t",
}
CURVED_IDS = {
    "th4_le_jstar", "s_le_p", "p_le_th2", "th2_le_2th4", "th2_le_2t", "t_le_th2",
}
SECTOR_IDS = {
    "rho_sector_lower_small_theta", "rho_sector_upper_small_theta",
    "rho_sector_lower_at_pi", "rho_sector_upper_at_pi",
    "rho_sector_lower_large_theta", "rho_sector_upper_large_theta",
}


def test_catalog_shape():
    cat = B.catalog()
    assert len(cat) == 22
    ids = {e.entry_id for e in cat}
    assert ids == GENERAL_IDS | CURVED_IDS | SECTOR_IDS
    assert len(ids) == 22  # unique
    sharp = [e for e in cat if e.sharp]
    assert len(sharp) == 18
    external = {e.entry_id for e in cat if e.relies_on_external_bound}
    assert external == {
        "rho_sector_lower_small_theta", "rho_sector_upper_small_theta",
        "rho_sector_lower_large_theta", "rho_sector_upper_large_theta",
    }


def test_applicability_counts():
    for dom, count in ((HS, 16), (UB, 16), (SEC3, 12), (PENT, 10)):
        applicable = [e for e in B.catalog() if e.applicable(dom)]
        assert len(applicable) == count, dom


def test_sector_entry_selection_by_angle():
    ids_small = {e.entry_id for e in B.catalog() if e.applicable(SEC3)} & SECTOR_IDS
    ids_pi = {e.entry_id for e in B.catalog() if e.applicable(SEC_PI)} & SECTOR_IDS
    ids_large = {e.entry_id for e in B.catalog() if e.applicable(SEC_LARGE)} & SECTOR_IDS
    assert ids_small == {"rho_sector_lower_small_theta", "rho_sector_upper_small_theta"}
    assert ids_pi == {"rho_sector_lower_at_pi", "rho_sector_upper_at_pi"}
    assert ids_large == {"rho_sector_lower_large_theta", "rho_sector_upper_large_theta"}


def test_find_entry():
    e = B.find_entry("t_le_jstar")
    assert e.entry_id == "t_le_jstar"
    with pytest.raises(KeyError):
        B.find_entry("no_such_entry")


def test_check_pair_margin_sign():
    e = B.find_entry("t_le_jstar")
    # always t <= j*, so the margin is non-negative
    assert B.check_pair(e, HS, (0.0, 1.0), (1.0, 1.0)) >= 0.0
    with pytest.raises(ValueError):
        B.check_pair(B.find_entry("p_le_th2"), PENT, (0.0, 0.0), (0.1, 0.1))


def test_check_pair_known_margins():
    # on (i, i/2): t = 1/4, j* = 1/3 -> margin of t <= j* is 1/12
    got = B.check_pair(B.find_entry("t_le_jstar"), HS, (0.0, 1.0), (0.0, 0.5))
    assert got == pytest.approx(1.0 / 3.0 - 0.25, abs=1e-12)
    # j* <= 2t margin: 2/4 - 1/3 = 1/6
    got = B.check_pair(B.find_entry("jstar_le_2t"), HS, (0.0, 1.0), (0.0, 0.5))
    assert got == pytest.approx(0.5 - 1.0 / 3.0, abs=1e-12)


def test_sector_coefficients():
    up = B.find_entry("rho_sector_upper_small_theta")
    theta = math.pi / 3.0
    want = 2.0 * (math.pi / theta) * math.sin(theta / 2.0)
    assert up.rhs.coefficient(SEC3) == pytest.approx(want, rel=1e-15)
    low = B.find_entry("rho_sector_lower_large_theta")
    assert low.rhs.coefficient(SEC_LARGE) == pytest.approx(1.0, rel=1e-15)
    assert low.lhs.coefficient(SEC_LARGE) == pytest.approx(math.pi / 4.5, rel=1e-15)


def test_margin_tolerance_rules():
    s_entry = B.find_entry("s_le_2jstar")
    assert s_entry.margin_tolerance(HS) == B.DEFAULT_MARGIN_TOL
    assert s_entry.margin_tolerance(UB) == B.CURVED_SRATIO_MARGIN_TOL
    assert s_entry.margin_tolerance(D.PuncturedDisk()) == B.CURVED_SRATIO_MARGIN_TOL
    t_entry = B.find_entry("t_le_jstar")
    assert t_entry.margin_tolerance(UB) == B.DEFAULT_MARGIN_TOL


def test_fuzz_bounds_clean(stock_domain):
    reports = B.fuzz_bounds(stock_domain, 4000, seed=0)
    assert len(reports) >= 10
    for r in reports:
        assert r.violations == 0, (r.entry, r.worst_margin)
        assert r.witnesses == ()
        assert not r.suspect_upstream
        assert r.seed == 0
        assert r.samples == 4000


def test_fuzz_bounds_deterministic():
    a = B.fuzz_bounds(HS, 1500, seed=3)
    b = B.fuzz_bounds(HS, 1500, seed=3)
    assert B.reports_to_json(a) == B.reports_to_json(b)
    c = B.fuzz_bounds(HS, 1500, seed=4)
    assert B.reports_to_json(a) != B.reports_to_json(c)


def test_fuzz_bounds_control_entry_fails():
    control = B.InequalityEntry(
        entry_id="control",
        lhs=B.Term(M.MetricKind.T, 1.0, "t"),
        rhs=B.Term(M.MetricKind.JSTAR, 0.4, "0.4 jstar"),
        applies=lambda dom: True,
        statement="t <= 0.4 jstar (false)",
        sharp=False,
    )
    reports = B.fuzz_bounds(HS, 500, seed=0, entries=[control])
    assert reports[0].violations > 0
    assert reports[0].worst_margin < 0.0
    assert 0 < len(reports[0].witnesses) <= 10
    # witnesses are ordered worst-first
    margins = [w[2] for w in reports[0].witnesses]
    assert margins == sorted(margins)


def test_fuzz_bounds_rejects_inapplicable_entry():
    sector_entry = B.find_entry("rho_sector_upper_small_theta")
    with pytest.raises(ValueError):
        B.fuzz_bounds(HS, 100, seed=0, entries=[sector_entry])


def test_report_json_shape():
    reports = B.fuzz_bounds(HS, 200, seed=0)
    data = B.reports_to_json(reports)
    for row in data:
        assert set(row) == {"entry", "samples", "violations", "worst_margin",
                            "ratio_min", "ratio_max", "seed", "witnesses"}
        assert row["witnesses"] == []


def test_ratio_range_sane():
    for r in B.fuzz_bounds(UB, 3000, seed=1):
        assert 0.0 <= r.ratio_min <= r.ratio_max <= 1.0 + 1e-12, r.entry


# ---------------------------------------------------------------------------
# sharpness


def test_families_cover_every_sharp_entry():
    families = B.sharpness_families()
    assert len(families) == 19
    covered = {f.entry_id for f in families}
    sharp_ids = {e.entry_id for e in B.catalog() if e.sharp}
    assert sharp_ids <= covered


def test_sharpness_scan_matches_closed_ratio():
    for fam in B.sharpness_families():
        entry = B.find_entry(fam.entry_id)
        ratios = B.sharpness_scan(entry, fam)
        want = np.array([fam.closed_ratio(k) for k in fam.k_values])
        ok = np.isfinite(ratios)
        assert np.all(ok), fam.entry_id
        assert np.max(np.abs(ratios - want)) < 1e-12, fam.entry_id


def test_sharpness_scan_tail_monotone_toward_limit():
    """The last five scan points approach the sharp limit monotonically."""
    for fam in B.sharpness_families():
        entry = B.find_entry(fam.entry_id)
        ratios = B.sharpness_scan(entry, fam)
        tail = ratios[-5:]
        gaps = np.abs(tail - fam.limit)
        for a, b in zip(gaps[:-1], gaps[1:]):
            assert b <= a + 1e-9, (fam.entry_id, tail)
        assert gaps[-1] < 1e-3, (fam.entry_id, tail[-1], fam.limit)


def test_sharpness_scan_out_of_domain_pair_raises():
    fam = [f for f in B.sharpness_families() if f.domain == UB][0]
    entry = B.find_entry(fam.entry_id)
    with pytest.raises(D.OutsideDomainError):
        B.sharpness_scan(entry, fam, k_values=(1.5,))


def test_pentagram_contact_family_exact():
    fams = [f for f in B.sharpness_families()
            if isinstance(f.domain, D.Polygon)]
    assert fams, "pentagram contact family missing"
    fam = fams[0]
    entry = B.find_entry(fam.entry_id)
    ratios = B.sharpness_scan(entry, fam)
    want = np.array([fam.closed_ratio(k) for k in fam.k_values])
    assert np.max(np.abs(ratios - want)) < 1e-12


def test_t_jstar_limit_half():
    fams = B.families_for("t_le_jstar")
    assert fams
    fam = fams[0]
    entry = B.find_entry("t_le_jstar")
    ratio = B.sharpness_scan(entry, fam, k_values=(1e-4,))[0]
    assert abs(ratio - 0.5) < 1e-3


def test_t_th2_reaches_both_ends():
    fams = [f for f in B.families_for("t_le_th2")]
    assert fams
    fam = fams[0]
    entry = B.find_entry("t_le_th2")
    low = B.sharpness_scan(entry, fam, k_values=(1e-3,))[0]
    high = B.sharpness_scan(entry, fam, k_values=(0.999,))[0]
    lo, hi = sorted((low, high))
    assert abs(lo - 0.5) < 1e-3
    assert abs(hi - 1.0) < 2e-3


def test_height_one_family_peak_at_k_one():
    fams = B.families_for("p_le_sqrt2_jstar")
    fam = fams[0]
    entry = B.find_entry("p_le_sqrt2_jstar")
    exact = B.sharpness_scan(entry, fam, k_values=(1.0,))[0]
    assert exact == pytest.approx(1.0, abs=1e-12)

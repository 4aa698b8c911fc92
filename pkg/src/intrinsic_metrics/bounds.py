"""Catalog of inequalities between the intrinsic metrics, with fuzz checks.

Every comparison the library relies on is one InequalityEntry: a lhs term,
a rhs term and the domains it applies to.  fuzz_bounds verifies entries on
seeded random pairs and reports margins; sharpness_scan walks an extremal
family of point pairs and traces the lhs/rhs ratio toward its limit, which
shows the constants cannot be improved.

Terms are coefficient-weighted metrics.  Coefficients may depend on the
domain; the sector comparisons between t and tanh(rho/2) scale with the
opening angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from intrinsic_metrics import _dispatch
from intrinsic_metrics import domains as _D
from intrinsic_metrics.domains import (
    DomainSpec,
    HalfSpace,
    Point,
    PuncturedDisk,
    Sector,
    UnitBall,
    pentagram,
    sample_points,
)
from intrinsic_metrics.metrics import MetricKind, metric_pairs, metric_value

DEFAULT_MARGIN_TOL = -1e-9
# The circular-arc part of the boundary path infimum is found iteratively
# (about 1e-6 relative error), so entries touching sratio on a curved
# boundary get a wider violation tolerance.
CURVED_SRATIO_MARGIN_TOL = -1e-5

_SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Terms and entries


@dataclass(frozen=True)
class Term:
    """One side of an inequality: coefficient * metric.

    coef is a float or a callable taking the domain, for coefficients that
    depend on domain parameters such as the sector angle.
    """

    kind: MetricKind
    coef: object = 1.0
    label: str = ""

    def coefficient(self, domain: DomainSpec) -> float:
        if callable(self.coef):
            return float(self.coef(domain))
        return float(self.coef)

    def evaluate(self, domain: DomainSpec, X, Y) -> np.ndarray:
        return self.coefficient(domain) * metric_pairs(self.kind, domain, X, Y)

    def value(self, domain: DomainSpec, x: Point, y: Point) -> float:
        return self.coefficient(domain) * metric_value(self.kind, domain, x, y)

    def describe(self) -> str:
        if self.label:
            return self.label
        return self.kind.value


@dataclass(frozen=True)
class InequalityEntry:
    """One machine-checkable inequality lhs <= rhs.

    statement restates the inequality in plain text.  sharp entries carry a
    short description of the extremal configuration; the full parameterized
    families live in sharpness_families().  relies_on_external_bound marks
    comparisons whose proof leans on a hyperbolic-geometry estimate outside
    this library, so a fuzz violation there is flagged as suspect input
    rather than treated as a certain implementation bug.
    """

    entry_id: str
    lhs: Term
    rhs: Term
    applies: Callable[[DomainSpec], bool]
    statement: str
    sharp: bool
    sharp_family: str = ""
    relies_on_external_bound: bool = False

    def applicable(self, domain: DomainSpec) -> bool:
        return bool(self.applies(domain))

    def margin_tolerance(self, domain: DomainSpec) -> float:
        touches_sratio = MetricKind.SRATIO in (self.lhs.kind, self.rhs.kind)
        if touches_sratio and isinstance(domain, (UnitBall, PuncturedDisk)):
            return CURVED_SRATIO_MARGIN_TOL
        return DEFAULT_MARGIN_TOL


def _any_domain(domain: DomainSpec) -> bool:
    return True


def _half_or_ball(domain: DomainSpec) -> bool:
    return isinstance(domain, (HalfSpace, UnitBall))


def _sector_below_pi(domain: DomainSpec) -> bool:
    return isinstance(domain, Sector) and domain.theta < math.pi


def _sector_at_pi(domain: DomainSpec) -> bool:
    return isinstance(domain, Sector) and domain.theta == math.pi


def _sector_above_pi(domain: DomainSpec) -> bool:
    return isinstance(domain, Sector) and domain.theta > math.pi


def _sector_upper_small_coef(domain: DomainSpec) -> float:
    return 2.0 * (math.pi / domain.theta) * math.sin(domain.theta / 2.0)


def _sector_lower_large_coef(domain: DomainSpec) -> float:
    return math.pi / domain.theta


_T = MetricKind.T
_J = MetricKind.JSTAR
_P = MetricKind.POINTPAIR
_S = MetricKind.SRATIO
_TH2 = MetricKind.TH_HALF_RHO
_TH4 = MetricKind.TH_QUARTER_RHO


def _entry(entry_id, lhs, rhs, applies, statement, sharp, family="", external=False):
    return InequalityEntry(entry_id=entry_id, lhs=lhs, rhs=rhs, applies=applies,
                           statement=statement, sharp=sharp, sharp_family=family,
                           relies_on_external_bound=external)


_CATALOG: tuple[InequalityEntry, ...] = (
    # Comparisons valid on every proper subdomain.
    _entry("jstar_le_p", Term(_J), Term(_P),
           _any_domain, "jstar <= pointpair", True,
           "equality whenever min(d) * (|x-y| + min(d)) = d(x) d(y), e.g. "
           "boundary-normal pairs in a half-plane"),
    _entry("p_le_sqrt2_jstar", Term(_P), Term(_J, _SQRT2, "sqrt(2) jstar"),
           _any_domain, "pointpair <= sqrt(2) jstar", True,
           "attained at height-1 half-plane pairs two apart"),
    _entry("jstar_le_s", Term(_J), Term(_S),
           _any_domain, "jstar <= sratio", True,
           "equality on boundary-normal pairs in a half-plane"),
    _entry("s_le_2jstar", Term(_S), Term(_J, 2.0, "2 jstar"),
           _any_domain, "sratio <= 2 jstar", True,
           "equality for opposite points around the puncture of a punctured disk"),
    _entry("t_le_jstar", Term(_T), Term(_J),
           _any_domain, "t <= jstar", True,
           "ratio (1+k)/2 -> 1 as the pair merges along a boundary normal"),
    _entry("jstar_le_2t", Term(_J), Term(_T, 2.0, "2 t"),
           _any_domain, "jstar <= 2 t", True,
           "ratio 1/(1+k) -> 1 as one point approaches the boundary"),
    _entry("t_le_p", Term(_T), Term(_P),
           _any_domain, "t <= pointpair", True,
           "ratio (1+k)/2 -> 1 as the pair merges along a boundary normal"),
    _entry("p_le_2t", Term(_P), Term(_T, 2.0, "2 t"),
           _any_domain, "pointpair <= 2 t", True,
           "ratio 1/(1+k) -> 1 as one point approaches the boundary"),
    _entry("t_le_s", Term(_T), Term(_S),
           _any_domain, "t <= sratio", True,
           "ratio (1+k)/2 -> 1 as the pair merges along a boundary normal"),
    _entry("s_le_2t", Term(_S), Term(_T, 2.0, "2 t"),
           _any_domain, "sratio <= 2 t", True,
           "ratio 1/(1+k) -> 1 as one point approaches the boundary"),
    # Comparisons against the hyperbolic metric on the half-space and ball.
    _entry("th4_le_jstar", Term(_TH4), Term(_J),
           _half_or_ball, "tanh(rho/4) <= jstar", True,
           "ratio -> 1 for far-separated boundary-normal pairs"),
    _entry("s_le_p", Term(_S), Term(_P),
           _half_or_ball, "sratio <= pointpair", True,
           "equality everywhere on a half-space"),
    _entry("p_le_th2", Term(_P), Term(_TH2),
           _half_or_ball, "pointpair <= tanh(rho/2)", True,
           "equality everywhere on a half-space"),
    _entry("th2_le_2th4", Term(_TH2), Term(_TH4, 2.0, "2 tanh(rho/4)"),
           _half_or_ball, "tanh(rho/2) <= 2 tanh(rho/4)", True,
           "ratio -> 1 as the pair merges"),
    _entry("th2_le_2t", Term(_TH2), Term(_T, 2.0, "2 t"),
           _half_or_ball, "tanh(rho/2) <= 2 t", True,
           "ratio 1/(1+k^2) -> 1 for short diameters of the unit ball"),
    _entry("t_le_th2", Term(_T), Term(_TH2),
           _half_or_ball, "t <= tanh(rho/2)", True,
           "ratio (1+k^2)/2 -> 1 for long diameters of the unit ball"),
    # Sector comparisons between t and tanh(rho/2), keyed by opening angle.
    _entry("rho_sector_lower_small_theta", Term(_T), Term(_TH2),
           _sector_below_pi, "t <= tanh(rho/2) on sectors with angle < pi",
           False, external=True),
    _entry("rho_sector_upper_small_theta", Term(_TH2),
           Term(_T, _sector_upper_small_coef, "2 (pi/theta) sin(theta/2) t"),
           _sector_below_pi,
           "tanh(rho/2) <= 2 (pi/theta) sin(theta/2) t on sectors with angle < pi",
           False, external=True),
    _entry("rho_sector_lower_at_pi", Term(_T), Term(_TH2),
           _sector_at_pi, "t <= tanh(rho/2) on the straight-angle sector",
           True, "ratio (1+k)/2 -> 1 as the pair merges along a boundary normal"),
    _entry("rho_sector_upper_at_pi", Term(_TH2), Term(_T, 2.0, "2 t"),
           _sector_at_pi, "tanh(rho/2) <= 2 t on the straight-angle sector",
           True, "ratio 1/(1+k) -> 1 as one point approaches the boundary"),
    _entry("rho_sector_lower_large_theta",
           Term(_T, _sector_lower_large_coef, "(pi/theta) t"), Term(_TH2),
           _sector_above_pi, "(pi/theta) t <= tanh(rho/2) on sectors with angle > pi",
           False, external=True),
    _entry("rho_sector_upper_large_theta", Term(_TH2), Term(_T, 2.0, "2 t"),
           _sector_above_pi, "tanh(rho/2) <= 2 t on sectors with angle > pi",
           False, external=True),
)


def catalog() -> tuple[InequalityEntry, ...]:
    """The full fixed inequality list."""
    return _CATALOG


def find_entry(entry_id: str) -> InequalityEntry:
    for entry in _CATALOG:
        if entry.entry_id == entry_id:
            return entry
    raise KeyError(f"no inequality entry {entry_id!r}")


def check_pair(entry: InequalityEntry, domain: DomainSpec, x: Point, y: Point) -> float:
    """Signed margin rhs - lhs at one pair; nonnegative means the bound holds."""
    if not entry.applicable(domain):
        raise ValueError(f"entry {entry.entry_id!r} does not apply to this domain")
    return entry.rhs.value(domain, x, y) - entry.lhs.value(domain, x, y)


# ---------------------------------------------------------------------------
# Fuzzing


@dataclass(frozen=True)
class BoundReport:
    """Result of fuzzing one entry: counts, worst margin and ratio range.

    witnesses holds up to 10 violating pairs, worst margin first; empty when
    the entry held everywhere.
    """

    entry: str
    samples: int
    violations: int
    worst_margin: float
    ratio_min: float
    ratio_max: float
    seed: int
    witnesses: tuple = ()
    suspect_upstream: bool = False

    def to_dict(self) -> dict:
        return {
            "entry": self.entry,
            "samples": self.samples,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "ratio_min": self.ratio_min,
            "ratio_max": self.ratio_max,
            "seed": self.seed,
            "witnesses": [[list(x), list(y)] for x, y, _ in self.witnesses],
        }


def build_report(entry_id: str, X, Y, margins: np.ndarray, ratios: np.ndarray,
                 seed: int, tol: float = DEFAULT_MARGIN_TOL,
                 flag_suspect: bool = False) -> BoundReport:
    """Assemble a BoundReport from per-sample margins and lhs/rhs ratios.

    ratios may contain NaN where the denominator vanished; those samples
    still count toward the margin check.
    """
    margins = np.asarray(margins, dtype=np.float64)
    bad = np.flatnonzero(margins < tol)
    finite = np.asarray(ratios, dtype=np.float64)
    finite = finite[np.isfinite(finite)]
    worst = bad[np.argsort(margins[bad])][:10]
    witnesses = tuple((tuple(X[i]), tuple(Y[i]), float(margins[i])) for i in worst)
    return BoundReport(
        entry=entry_id,
        samples=int(margins.size),
        violations=int(bad.size),
        worst_margin=float(margins.min()) if margins.size else math.nan,
        ratio_min=float(finite.min()) if finite.size else math.nan,
        ratio_max=float(finite.max()) if finite.size else math.nan,
        seed=seed,
        witnesses=witnesses,
        suspect_upstream=bool(bad.size) and flag_suspect,
    )


def fuzz_bounds(domain: DomainSpec, n: int, seed: int,
                sampler: Optional[Callable] = None,
                entries: Optional[Sequence[InequalityEntry]] = None) -> list[BoundReport]:
    """Check every applicable entry on n sampled pairs; deterministic per seed.

    Samples are drawn once up front (uniform box rejection by default) and
    evaluated in fixed chunks, so reports do not depend on the worker count.
    """
    if n < 1:
        raise ValueError("need at least one sample pair")
    rng = np.random.default_rng(seed)
    draw = sampler if sampler is not None else sample_points
    pts = np.asarray(draw(domain, 2 * n, rng), dtype=np.float64)
    X = np.ascontiguousarray(pts[:n])
    Y = np.ascontiguousarray(pts[n:])
    if entries is None:
        entries = [e for e in _CATALOG if e.applicable(domain)]
    reports = []
    for entry in entries:
        if not entry.applicable(domain):
            raise ValueError(f"entry {entry.entry_id!r} does not apply to this domain")
        lhs_parts = _dispatch.map_chunks(
            lambda lo, hi: entry.lhs.evaluate(domain, X[lo:hi], Y[lo:hi]), n)
        rhs_parts = _dispatch.map_chunks(
            lambda lo, hi: entry.rhs.evaluate(domain, X[lo:hi], Y[lo:hi]), n)
        lhs = _dispatch.concat_chunks(lhs_parts)
        rhs = _dispatch.concat_chunks(rhs_parts)
        margins = rhs - lhs
        ratios = np.full(n, math.nan)
        positive = rhs > 0.0
        ratios[positive] = lhs[positive] / rhs[positive]
        reports.append(build_report(
            entry.entry_id, X, Y, margins, ratios, seed,
            tol=entry.margin_tolerance(domain),
            flag_suspect=entry.relies_on_external_bound,
        ))
    return reports


def reports_to_json(reports: Sequence[BoundReport]) -> list[dict]:
    return [r.to_dict() for r in reports]


# ---------------------------------------------------------------------------
# Sharpness scans


@dataclass(frozen=True)
class SharpnessFamily:
    """Parameterized extremal point-pair path for one catalog entry.

    pair(k) returns an in-domain pair; the lhs/rhs ratio along k_values
    approaches limit at the tail end.  closed_ratio, when present, is the
    hand-derived exact ratio used to cross-check the scan.
    """

    entry_id: str
    domain: DomainSpec
    description: str
    pair: Callable[[float], tuple]
    k_values: tuple
    limit: float
    closed_ratio: Optional[Callable[[float], float]] = None


def sharpness_scan(entry: InequalityEntry, family: SharpnessFamily,
                   k_values: Optional[Sequence[float]] = None) -> np.ndarray:
    """lhs/rhs ratio along the family; raises if the family leaves the domain."""
    ks = family.k_values if k_values is None else tuple(k_values)
    out = np.empty(len(ks))
    for i, k in enumerate(ks):
        x, y = family.pair(k)
        lhs = entry.lhs.value(family.domain, x, y)
        rhs = entry.rhs.value(family.domain, x, y)
        out[i] = lhs / rhs if rhs > 0.0 else math.nan
    return out


def _normal_pair(k: float) -> tuple:
    return (0.0, 1.0), (0.0, k)


def _height_one_pair(k: float) -> tuple:
    return (0.0, 1.0), (2.0 * k, 1.0)


def _ball_diameter_pair(k: float) -> tuple:
    return (k, 0.0), (-k, 0.0)


def _punctured_pair(k: float) -> tuple:
    return (k, 0.0), (-k, 0.0)


_PENTAGRAM = pentagram()
_PENTAGRAM_GAP = _D.boundary_distance(_PENTAGRAM, (0.0, 0.0))
_PENTAGRAM_DIR = (math.cos(math.radians(126.0)), math.sin(math.radians(126.0)))


def _pentagram_contact_pair(k: float) -> tuple:
    r = (1.0 - k) * _PENTAGRAM_GAP
    return (0.0, 0.0), (r * _PENTAGRAM_DIR[0], r * _PENTAGRAM_DIR[1])


_KS_UP = (1e-4, 1e-3, 1e-2, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999)
_KS_DOWN = (0.9, 0.7, 0.5, 0.3, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
_KS_DEEP = (0.9, 0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)
_KS_BALL_UP = (1e-3, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999, 0.9995)
_KS_UNIT = (0.1, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 0.99, 1.0)
_KS_PUNCTURED = (0.45, 0.35, 0.25, 0.15, 0.05, 0.01)

_H2 = HalfSpace(2)
_B2 = UnitBall(2)
_SPI = Sector(math.pi)
_PD = PuncturedDisk()


def _ratio_up(k: float) -> float:
    return (1.0 + k) / 2.0


def _ratio_down(k: float) -> float:
    return 1.0 / (1.0 + k)


def _ratio_one(k: float) -> float:
    return 1.0


def _ratio_ball_up(k: float) -> float:
    return (1.0 + k * k) / 2.0


def _ratio_ball_down(k: float) -> float:
    return 1.0 / (1.0 + k * k)


def _ratio_th4_jstar(k: float) -> float:
    rk = math.sqrt(k)
    return (1.0 + k) / ((1.0 + rk) * (1.0 + rk))


def _ratio_height_one(k: float) -> float:
    return (1.0 + k) / math.sqrt(2.0 * (1.0 + k * k))


def _ratio_th2_2th4(k: float) -> float:
    # rho((0,1),(0,k)) = -ln k, and th(rho/2) = 2w/(1+w^2) for w = th(rho/4)
    w = math.tanh(-math.log(k) / 4.0)
    return 1.0 / (1.0 + w * w)


_FAMILIES: tuple[SharpnessFamily, ...] = (
    SharpnessFamily("t_le_jstar", _H2,
                    "boundary-normal pair (0,1),(0,k) merging as k -> 1",
                    _normal_pair, _KS_UP, 1.0, _ratio_up),
    SharpnessFamily("t_le_jstar", _PENTAGRAM,
                    "pentagram center toward its contact point, ratio (1+k)/2 exactly",
                    _pentagram_contact_pair, _KS_UP, 1.0, _ratio_up),
    SharpnessFamily("jstar_le_2t", _H2,
                    "boundary-normal pair (0,1),(0,k) with k -> 0",
                    _normal_pair, _KS_DOWN, 1.0, _ratio_down),
    SharpnessFamily("t_le_p", _H2,
                    "boundary-normal pair (0,1),(0,k) merging as k -> 1",
                    _normal_pair, _KS_UP, 1.0, _ratio_up),
    SharpnessFamily("p_le_2t", _H2,
                    "boundary-normal pair (0,1),(0,k) with k -> 0",
                    _normal_pair, _KS_DOWN, 1.0, _ratio_down),
    SharpnessFamily("t_le_s", _H2,
                    "boundary-normal pair (0,1),(0,k) merging as k -> 1",
                    _normal_pair, _KS_UP, 1.0, _ratio_up),
    SharpnessFamily("s_le_2t", _H2,
                    "boundary-normal pair (0,1),(0,k) with k -> 0",
                    _normal_pair, _KS_DOWN, 1.0, _ratio_down),
    SharpnessFamily("jstar_le_p", _H2,
                    "boundary-normal pair: jstar equals pointpair along the whole path",
                    _normal_pair, _KS_UP, 1.0, _ratio_one),
    SharpnessFamily("p_le_sqrt2_jstar", _H2,
                    "height-1 pair (0,1),(2k,1): equality exactly at k = 1",
                    _height_one_pair, _KS_UNIT, 1.0, _ratio_height_one),
    SharpnessFamily("jstar_le_s", _H2,
                    "boundary-normal pair: jstar equals sratio along the whole path",
                    _normal_pair, _KS_UP, 1.0, _ratio_one),
    SharpnessFamily("s_le_2jstar", _PD,
                    "opposite pair (k,0),(-k,0) around the puncture: equality throughout",
                    _punctured_pair, _KS_PUNCTURED, 1.0, _ratio_one),
    SharpnessFamily("th4_le_jstar", _H2,
                    "boundary-normal pair with k -> 0: both sides approach 1",
                    _normal_pair, _KS_DEEP, 1.0, _ratio_th4_jstar),
    SharpnessFamily("s_le_p", _H2,
                    "any half-plane pair: sratio equals pointpair identically",
                    _normal_pair, _KS_UP, 1.0, _ratio_one),
    SharpnessFamily("p_le_th2", _H2,
                    "any half-plane pair: pointpair equals tanh(rho/2) identically",
                    _normal_pair, _KS_UP, 1.0, _ratio_one),
    SharpnessFamily("th2_le_2th4", _H2,
                    "boundary-normal pair merging as k -> 1: hyperbolic distance -> 0",
                    _normal_pair, _KS_UP, 1.0, _ratio_th2_2th4),
    SharpnessFamily("t_le_th2", _B2,
                    "diameter pair (k,0),(-k,0) with k -> 1, ratio (1+k^2)/2",
                    _ball_diameter_pair, _KS_BALL_UP, 1.0, _ratio_ball_up),
    SharpnessFamily("th2_le_2t", _B2,
                    "diameter pair (k,0),(-k,0) with k -> 0, ratio 1/(1+k^2)",
                    _ball_diameter_pair, _KS_DOWN, 1.0, _ratio_ball_down),
    SharpnessFamily("rho_sector_lower_at_pi", _SPI,
                    "boundary-normal pair in the straight-angle sector, k -> 1",
                    _normal_pair, _KS_UP, 1.0, _ratio_up),
    SharpnessFamily("rho_sector_upper_at_pi", _SPI,
                    "boundary-normal pair in the straight-angle sector, k -> 0",
                    _normal_pair, _KS_DOWN, 1.0, _ratio_down),
)


def sharpness_families() -> tuple[SharpnessFamily, ...]:
    """Extremal families for every sharp catalog entry."""
    return _FAMILIES


def families_for(entry_id: str) -> tuple[SharpnessFamily, ...]:
    return tuple(f for f in _FAMILIES if f.entry_id == entry_id)

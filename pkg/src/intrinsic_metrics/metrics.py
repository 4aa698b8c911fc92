"""Metric evaluation on a domain.

All values route through the shared kernels so every entry point (scalar
calls, fuzz batches, grid fields) computes identical doubles.  With |x-y|
written u and d(x) the boundary distance:

  t          u / (u + d(x) + d(y))
  jstar      u / (u + 2 min(d(x), d(y)))
  pointpair  u / sqrt(u^2 + 4 d(x) d(y))      (not a metric on every domain)
  sratio     u / inf_z (|x-z| + |z-y|)        z running over the boundary
  rho        hyperbolic distance (half-space, ball, sector via power map)
  th_half_rho  tanh(rho / 2) through the stable closed forms

The generalized constructors build further metrics from a distance oracle
eta and offset functions; see generalized_t, distance_offset_metric and the
three closed-form variants on the unit ball.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from intrinsic_metrics import _kernels as _K
from intrinsic_metrics import domains as _D
from intrinsic_metrics.domains import (
    DomainSpec,
    HalfSpace,
    OutsideDomainError,
    Point,
    Sector,
    UnitBall,
    sample_points,
)

SQRT2 = math.sqrt(2.0)


class MetricKind(enum.Enum):
    T = "t"
    JSTAR = "jstar"
    POINTPAIR = "pointpair"
    SRATIO = "sratio"
    RHO = "rho"
    TH_HALF_RHO = "th_half_rho"
    TH_QUARTER_RHO = "th_quarter_rho"


_CODE = {
    MetricKind.T: _K.M_T,
    MetricKind.JSTAR: _K.M_JSTAR,
    MetricKind.POINTPAIR: _K.M_POINTPAIR,
    MetricKind.SRATIO: _K.M_SRATIO,
    MetricKind.RHO: _K.M_RHO,
    MetricKind.TH_HALF_RHO: _K.M_TH_HALF_RHO,
    MetricKind.TH_QUARTER_RHO: _K.M_TH_QUARTER_RHO,
}

_ALIASES = {
    "t": MetricKind.T,
    "jstar": MetricKind.JSTAR,
    "j*": MetricKind.JSTAR,
    "pointpair": MetricKind.POINTPAIR,
    "p": MetricKind.POINTPAIR,
    "sratio": MetricKind.SRATIO,
    "s": MetricKind.SRATIO,
    "rho": MetricKind.RHO,
    "hyperbolic": MetricKind.RHO,
    "th_half_rho": MetricKind.TH_HALF_RHO,
    "th": MetricKind.TH_HALF_RHO,
    "th2": MetricKind.TH_HALF_RHO,
    "th_quarter_rho": MetricKind.TH_QUARTER_RHO,
    "th4": MetricKind.TH_QUARTER_RHO,
}


def metric_kind(name) -> MetricKind:
    if isinstance(name, MetricKind):
        return name
    try:
        return _ALIASES[str(name)]
    except KeyError:
        raise ValueError(f"unknown metric {name!r}") from None


def supports_hyperbolic(domain: DomainSpec) -> bool:
    return isinstance(domain, (HalfSpace, UnitBall, Sector))


_HYPERBOLIC_KINDS = frozenset(
    {MetricKind.RHO, MetricKind.TH_HALF_RHO, MetricKind.TH_QUARTER_RHO})


def _check_kind(kind: MetricKind, domain: DomainSpec) -> None:
    if kind in _HYPERBOLIC_KINDS and not supports_hyperbolic(domain):
        raise ValueError("hyperbolic distance needs a half-space, ball or sector domain")


def kernel_code(kind) -> int:
    """Kernel dispatch code for a metric kind (for grid/batch evaluators)."""
    return _CODE[metric_kind(kind)]


def check_kind_supported(kind, domain: DomainSpec) -> None:
    """Raise if the metric needs hyperbolic structure the domain lacks."""
    _check_kind(metric_kind(kind), domain)


def metric_value(kind, domain: DomainSpec, x: Point, y: Point) -> float:
    """One metric value for an interior pair."""
    kind = metric_kind(kind)
    _check_kind(kind, domain)
    for p in (x, y):
        if not _D.contains(domain, p):
            raise OutsideDomainError(f"point {tuple(p)} is not inside the domain")
    k, dim, theta, parity, pieces = _D._pack(domain)
    xa = _D.as_point_array(domain, x)
    ya = _D.as_point_array(domain, y)
    return float(_K.metric_many(_CODE[kind], 0.0, k, dim, theta, parity, pieces, xa, ya)[0])


def metric_pairs(kind, domain: DomainSpec, X, Y) -> np.ndarray:
    """Vectorised metric values for row-aligned interior point arrays.

    No membership check per row; callers keep samples inside the domain.
    """
    kind = metric_kind(kind)
    _check_kind(kind, domain)
    k, dim, theta, parity, pieces = _D._pack(domain)
    return _K.metric_many(_CODE[kind], 0.0, k, dim, theta, parity, pieces,
                          _D.as_points_array(domain, X), _D.as_points_array(domain, Y))


def t_metric(domain: DomainSpec, x: Point, y: Point) -> float:
    return metric_value(MetricKind.T, domain, x, y)


def jstar_metric(domain: DomainSpec, x: Point, y: Point) -> float:
    return metric_value(MetricKind.JSTAR, domain, x, y)


def pointpair_metric(domain: DomainSpec, x: Point, y: Point) -> float:
    return metric_value(MetricKind.POINTPAIR, domain, x, y)


def sratio_metric(domain: DomainSpec, x: Point, y: Point) -> float:
    return metric_value(MetricKind.SRATIO, domain, x, y)


def hyperbolic(domain: DomainSpec, x: Point, y: Point) -> float:
    return metric_value(MetricKind.RHO, domain, x, y)


def th_half_rho(domain: DomainSpec, x: Point, y: Point) -> float:
    return metric_value(MetricKind.TH_HALF_RHO, domain, x, y)


# ---------------------------------------------------------------------------
# Generalized constructors


def generalized_t(distance_oracle: Callable, boundary_gap_oracle: Callable, x, y) -> float:
    """t-style ratio eta(x,y) / (eta(x,y) + gap(x) + gap(y)).

    distance_oracle is any metric oracle on the domain and the gap oracle its
    distance to the boundary.  With the Euclidean oracles this equals t_metric
    exactly.  Equal points map to 0 by definition.
    """
    if tuple(np.ravel(x)) == tuple(np.ravel(y)):
        return 0.0
    e = float(distance_oracle(x, y))
    gx = float(boundary_gap_oracle(x))
    gy = float(boundary_gap_oracle(y))
    if e < 0.0 or gx < 0.0 or gy < 0.0:
        raise ValueError("oracle returned a negative value")
    den = e + gx + gy
    if den <= 0.0:
        return 0.0
    return e / den


def phi_metric(c_oracle: Callable, distance_oracle: Callable, x, y) -> float:
    """eta(x,y) / (eta(x,y) + c(x,y)) with an offset function c.

    The construction yields a metric whenever c is symmetric, nonnegative and
    offset-compatible with eta: c(x,z) <= eta(z,y) + c(x,y) on all triples;
    use fuzz_offset_condition to probe that before trusting axiom results.
    Equal points map to 0 by definition; with c identically 0 this is the
    discrete metric.
    """
    if tuple(np.ravel(x)) == tuple(np.ravel(y)):
        return 0.0
    e = float(distance_oracle(x, y))
    c = float(c_oracle(x, y))
    if e < 0.0 or c < 0.0:
        raise ValueError("oracle returned a negative value")
    den = e + c
    if den <= 0.0:
        return 0.0
    return e / den


def _ball_value(code: int, c: float, x, y) -> float:
    dom = UnitBall(2)
    xa = np.asarray(x, dtype=np.float64).reshape(1, -1)
    ya = np.asarray(y, dtype=np.float64).reshape(1, -1)
    if xa.shape[1] != ya.shape[1]:
        raise ValueError("points must share a dimension")
    dim = xa.shape[1]
    if dim < 2:
        raise ValueError("points must have dimension >= 2")
    for p in (xa[0], ya[0]):
        if float(p @ p) >= 1.0:
            raise OutsideDomainError(f"point {tuple(p)} is not inside the unit ball")
    return float(_K.metric_many(code, c, _K.KIND_UNITBALL, dim, 0.0, 0, _D._EMPTY_PIECES, xa, ya)[0])


def psi_metric(c: float, x, y) -> float:
    """|x-y| / (|x-y| + c |x| |y|) on the unit ball, 0 < c <= 1."""
    if not 0.0 < c <= 1.0:
        raise ValueError("norm-product coefficient must lie in (0, 1]")
    return _ball_value(_K.M_PSI, c, x, y)


def upsilon_metric(c: float, domain: DomainSpec, x, y) -> float:
    """|x-y| / (|x-y| + c sqrt((1+d(x))(1+d(y)))), 0 < c <= sqrt(2).

    Sound only when the boundary gap d stays at most 1, which holds on the
    unit ball; other domains are rejected rather than silently produce a
    non-metric.
    """
    if not 0.0 < c <= SQRT2:
        raise ValueError("coefficient must lie in (0, sqrt(2)]")
    if not isinstance(domain, UnitBall):
        raise ValueError("boundary gap may exceed 1 on this domain; unit ball required")
    return _ball_value(_K.M_UPSILON, c, x, y)


def chi_metric(c: float, x, y) -> float:
    """|x-y| / (|x-y| + c sqrt((2-|x|)(2-|y|))) on the unit ball, 0 < c <= sqrt(2)."""
    if not 0.0 < c <= SQRT2:
        raise ValueError("coefficient must lie in (0, sqrt(2)]")
    return _ball_value(_K.M_CHI, c, x, y)


def fuzz_offset_condition(c_oracle: Callable, distance_oracle: Callable, domain: DomainSpec,
                          samples: int, seed: int, tol: float = 1e-12) -> int:
    """Count triples violating c(x,z) <= eta(z,y) + c(x,y) + tol."""
    rng = np.random.default_rng(seed)
    pts = sample_points(domain, 3 * samples, rng)
    X, Y, Z = pts[:samples], pts[samples:2 * samples], pts[2 * samples:]
    bad = 0
    for i in range(samples):
        lhs = float(c_oracle(X[i], Z[i]))
        rhs = float(distance_oracle(Z[i], Y[i])) + float(c_oracle(X[i], Y[i]))
        if lhs > rhs + tol:
            bad += 1
    return bad


# ---------------------------------------------------------------------------
# Axiom fuzzing


@dataclass(frozen=True)
class AxiomReport:
    metric: str
    domain: dict
    samples: int
    seed: int
    tolerance: float
    separation_violations: int
    symmetry_violations: int
    triangle_violations: int
    worst_triangle_margin: float
    worst_symmetry_gap: float

    @property
    def clean(self) -> bool:
        return (self.separation_violations == 0 and self.symmetry_violations == 0
                and self.triangle_violations == 0)

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "domain": self.domain,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "separation_violations": self.separation_violations,
            "symmetry_violations": self.symmetry_violations,
            "triangle_violations": self.triangle_violations,
            "worst_triangle_margin": self.worst_triangle_margin,
            "worst_symmetry_gap": self.worst_symmetry_gap,
        }


def axiom_fuzz(domain: DomainSpec, metric, samples: int, seed: int,
               tol: float = 1e-12) -> AxiomReport:
    """Fuzz positivity, symmetry and the triangle inequality on random triples.

    metric is a MetricKind (fast kernel batches) or a callable f(x, y)
    (evaluated pointwise, e.g. a generalized construction).  Violations are
    counted, never raised; pointpair in particular fails the triangle
    inequality on some domains and this harness is how that is recorded.
    worst_triangle_margin is the minimum slack d(x,z)+d(z,y)-d(x,y) over the
    sampled triples, so a negative value marks a violation.
    """
    rng = np.random.default_rng(seed)
    pts = sample_points(domain, 3 * samples, rng)
    X, Y, Z = pts[:samples], pts[samples:2 * samples], pts[2 * samples:]
    if callable(metric) and not isinstance(metric, MetricKind):
        name = getattr(metric, "__name__", "custom")
        dxy = np.array([metric(X[i], Y[i]) for i in range(samples)])
        dyx = np.array([metric(Y[i], X[i]) for i in range(samples)])
        dxz = np.array([metric(X[i], Z[i]) for i in range(samples)])
        dzy = np.array([metric(Z[i], Y[i]) for i in range(samples)])
    else:
        kind = metric_kind(metric)
        name = kind.value
        dxy = metric_pairs(kind, domain, X, Y)
        dyx = metric_pairs(kind, domain, Y, X)
        dxz = metric_pairs(kind, domain, X, Z)
        dzy = metric_pairs(kind, domain, Z, Y)
    distinct = np.any(X != Y, axis=1)
    separation = int(np.sum(distinct & (dxy <= 0.0)))
    sym_gap = np.abs(dxy - dyx)
    symmetry = int(np.sum(sym_gap > tol))
    tri_margin = dxz + dzy - dxy
    triangle = int(np.sum(tri_margin < -tol))
    return AxiomReport(
        metric=name,
        domain=_D.domain_to_json(domain),
        samples=samples,
        seed=seed,
        tolerance=tol,
        separation_violations=separation,
        symmetry_violations=symmetry,
        triangle_violations=triangle,
        worst_triangle_margin=float(tri_margin.min()) if samples else 0.0,
        worst_symmetry_gap=float(sym_gap.max()) if samples else 0.0,
    )

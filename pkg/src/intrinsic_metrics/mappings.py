"""Conformal example maps and their expansion behavior under the t-metric.

Five map families connect the stock domains: disk automorphisms, the Cayley
transform from the disk to the upper half-plane, power maps between sectors,
the radial stretch of the punctured disk and inversion of a sector in the
unit circle.  lipschitz_estimate samples metric ratios under a map and
compares the supremum with the claimed Lipschitz bound; dedicated checkers
fuzz the two-sided power-map and radial-map bounds and the inversion
invariance of the boundary-path ratio metric.

conjecture_search probes whether disk automorphisms ever expand t by more
than 1+|a|.  That question is open; the harness reports its findings and
never treats a large ratio as a failure.

Complex arithmetic runs on pairs of doubles via numpy's complex dtype; the
principal argument lies in (-pi, pi], which is the right branch because
power-map source sectors never open wider than pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from intrinsic_metrics import _dispatch
from intrinsic_metrics import domains as _D
from intrinsic_metrics.bounds import (
    DEFAULT_MARGIN_TOL,
    BoundReport,
    build_report,
)
from intrinsic_metrics.domains import (
    DomainSpec,
    HalfSpace,
    OutsideDomainError,
    Point,
    PuncturedDisk,
    Sector,
    UnitBall,
    sample_points,
)
from intrinsic_metrics.metrics import MetricKind, metric_kind, metric_pairs

RATIO_TOL = 1e-9

_B2 = UnitBall(2)
_H2 = HalfSpace(2)
_PD = PuncturedDisk()


def _to_complex(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        return np.array([complex(X[0], X[1])])
    return X[:, 0] + 1j * X[:, 1]


def _from_complex(Z: np.ndarray) -> np.ndarray:
    return np.column_stack([Z.real, Z.imag])


# ---------------------------------------------------------------------------
# Map specifications


@dataclass(frozen=True)
class MobiusDisk:
    """Disk automorphism z -> (z - a) / (1 - conj(a) z), |a| < 1."""

    a: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        if abs(self.a) >= 1.0:
            raise ValueError("automorphism parameter must satisfy |a| < 1")

    @property
    def source(self) -> DomainSpec:
        return _B2

    @property
    def target(self) -> DomainSpec:
        return _B2

    def image_many(self, Z: np.ndarray) -> np.ndarray:
        return (Z - self.a) / (1.0 - np.conj(self.a) * Z)

    def label(self) -> str:
        return f"mobius_disk(a={self.a.real:g}{self.a.imag:+g}j)"


@dataclass(frozen=True)
class Cayley:
    """z -> (1 - z) i / (1 + z), taking the unit disk onto the upper half-plane."""

    @property
    def source(self) -> DomainSpec:
        return _B2

    @property
    def target(self) -> DomainSpec:
        return _H2

    def image_many(self, Z: np.ndarray) -> np.ndarray:
        return (1.0 - Z) * 1j / (1.0 + Z)

    def label(self) -> str:
        return "cayley"


@dataclass(frozen=True)
class PowerMap:
    """z -> z^(beta/alpha) between sectors of angles alpha and beta in (0, pi]."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= math.pi and 0.0 < self.beta <= math.pi):
            raise ValueError("power map angles must lie in (0, pi]")

    @property
    def source(self) -> DomainSpec:
        return Sector(self.alpha)

    @property
    def target(self) -> DomainSpec:
        return Sector(self.beta)

    def image_many(self, Z: np.ndarray) -> np.ndarray:
        ex = self.beta / self.alpha
        r = np.abs(Z)
        ang = np.angle(Z) * ex
        return r ** ex * (np.cos(ang) + 1j * np.sin(ang))

    def label(self) -> str:
        return f"power_map(alpha={self.alpha:g}, beta={self.beta:g})"


@dataclass(frozen=True)
class RadialMap:
    """z -> |z|^(a-1) z on the punctured unit disk, 0 < a < 1.

    The image scales both coordinates by the same positive factor, so the
    argument of every point is preserved.
    """

    a: float

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ValueError("radial exponent must lie in (0, 1)")

    @property
    def source(self) -> DomainSpec:
        return _PD

    @property
    def target(self) -> DomainSpec:
        return _PD

    def image_many(self, Z: np.ndarray) -> np.ndarray:
        return np.abs(Z) ** (self.a - 1.0) * Z

    def label(self) -> str:
        return f"radial_map(a={self.a:g})"


@dataclass(frozen=True)
class SectorInversion:
    """z -> z / |z|^2 on a sector; an involution fixing the unit circle."""

    theta: float

    def __post_init__(self):
        if not 0.0 < self.theta < 2.0 * math.pi:
            raise ValueError("sector angle must lie in (0, 2 pi)")

    @property
    def source(self) -> DomainSpec:
        return Sector(self.theta)

    @property
    def target(self) -> DomainSpec:
        return Sector(self.theta)

    def image_many(self, Z: np.ndarray) -> np.ndarray:
        return Z / (Z.real * Z.real + Z.imag * Z.imag)

    def label(self) -> str:
        return f"sector_inversion(theta={self.theta:g})"


MapSpec = Union[MobiusDisk, Cayley, PowerMap, RadialMap, SectorInversion]


def apply(m: MapSpec, z: Point) -> Point:
    """Map one point, checking membership on both ends.

    The poles (-1 for the Cayley transform, the origin for the radial map
    and the inversion) are outside the source domains, so they fail the
    membership check; an image that rounds outside the target is rejected
    as well.
    """
    if not _D.contains(m.source, z):
        raise OutsideDomainError(
            f"point {tuple(z)} is not inside the source domain")
    w = m.image_many(_to_complex(z))[0]
    img = (float(w.real), float(w.imag))
    if not _D.contains(m.target, img):
        raise ValueError(f"image {img} fell outside the target domain")
    return img


def apply_many(m: MapSpec, X) -> np.ndarray:
    """Vectorized images; the caller keeps the rows inside the source."""
    return _from_complex(m.image_many(_to_complex(X)))


# ---------------------------------------------------------------------------
# Lipschitz estimation


@dataclass(frozen=True)
class RatioReport:
    """Sampled supremum of metric(f x, f y) / metric(x, y) under one map."""

    map: str
    metric: str
    sup_ratio: float
    bound_claimed: float
    bound_respected: bool
    witness: tuple
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "map": self.map,
            "metric": self.metric,
            "sup_ratio": self.sup_ratio,
            "bound_claimed": self.bound_claimed,
            "bound_respected": self.bound_respected,
            "witness": [list(part) for part in self.witness],
            "samples": self.samples,
            "seed": self.seed,
        }


def power_coefficient(alpha: float, beta: float) -> float:
    """beta sin(alpha/2) / (alpha sin(beta/2)); the sharp power-map factor."""
    return beta * math.sin(alpha / 2.0) / (alpha * math.sin(beta / 2.0))


def claimed_bound(m: MapSpec, kind: MetricKind) -> float:
    """The proven (or, for disk automorphisms with t, proven-general) bound
    on the metric expansion ratio under m."""
    if isinstance(m, (MobiusDisk, Cayley)):
        if kind is MetricKind.T:
            return 2.0
        if kind is MetricKind.RHO:
            return 1.0
    elif isinstance(m, PowerMap):
        if kind is MetricKind.T:
            if m.alpha <= m.beta:
                return max(power_coefficient(m.alpha, m.beta), 1.0)
            return 2.0
    elif isinstance(m, RadialMap):
        if kind is MetricKind.T:
            return 1.0 / (2.0 ** m.a - 1.0)
    elif isinstance(m, SectorInversion):
        if kind is MetricKind.T:
            if m.theta <= math.pi:
                return 1.0 + math.sin(m.theta / 2.0)
            return 2.0
        if kind is MetricKind.SRATIO:
            return 1.0
    raise ValueError(f"no claimed bound for {m.label()} under {kind.value}")


def _unit(angle: float) -> complex:
    return complex(math.cos(angle), math.sin(angle))


def extremal_pairs(m: MapSpec, kind: MetricKind) -> tuple[np.ndarray, np.ndarray]:
    """Hand-picked pairs along which the claimed bound is approached.

    Cayley: x = 0 against boundary-bound real points; the t-ratio is 1 + k.
    PowerMap: merging unit-modulus pairs symmetric about the bisector.
    RadialMap: merging pairs at radius 1/2, where the expansion peaks.
    SectorInversion: a point hugging the lower edge against a far point on
    the bisector (angle pi/2 for wide sectors); the images collapse next to
    the origin and the ratio climbs to the claimed constant.
    """
    xs: list[complex] = []
    ys: list[complex] = []
    if isinstance(m, Cayley):
        for k in (0.9, 0.99, 0.999):
            xs.append(0.0 + 0.0j)
            ys.append(complex((1.0 - k) / (1.0 + k), 0.0))
    elif isinstance(m, MobiusDisk):
        direction = m.a / abs(m.a) if abs(m.a) > 0 else 1.0 + 0.0j
        for c in (0.1, 0.5, 0.9, 0.99):
            xs.append(c * direction)
            ys.append(-c * direction)
        xs.append(complex(m.a))
        ys.append(0.0 + 0.0j)
    elif isinstance(m, PowerMap):
        half = m.alpha / 2.0
        for k in (1e-2, 1e-4, 1e-6):
            mu = k * half
            xs.append(_unit(half - mu))
            ys.append(_unit(half + mu))
    elif isinstance(m, RadialMap):
        for k in (1e-2, 1e-4, 1e-6):
            xs.append(0.5 * _unit(k))
            ys.append(0.5 * _unit(-k))
        xs.append(0.1 + 0.0j)
        ys.append(0.1 * _unit(0.3))
    elif isinstance(m, SectorInversion) and kind is MetricKind.T:
        far_angle = m.theta / 2.0 if m.theta <= math.pi else math.pi / 2.0
        for h in (1e-2, 1e-3, 1e-4, 1e-5, 1e-6):
            xs.append(_unit(h))
            ys.append((1.0 / h) * _unit(far_angle))
    if not xs:
        return np.empty((0, 2)), np.empty((0, 2))
    return _from_complex(np.array(xs)), _from_complex(np.array(ys))


def _equal_radius_pairs(n: int, rng) -> tuple[np.ndarray, np.ndarray]:
    """Pairs r e^(+-ik) with 0 < r < 1 and 0 < k < pi/2 (equal radii)."""
    r = rng.uniform(0.0, 1.0, n)
    r[r <= 0.0] = 0.5
    k = rng.uniform(0.0, math.pi / 2.0, n)
    X = np.column_stack([r * np.cos(k), r * np.sin(k)])
    Y = np.column_stack([r * np.cos(k), -r * np.sin(k)])
    return X, Y


def _draw_pairs(m: MapSpec, n: int, rng,
                sampler: Optional[Callable]) -> tuple[np.ndarray, np.ndarray]:
    if sampler is not None:
        pts = np.asarray(sampler(m.source, 2 * n, rng), dtype=np.float64)
        return np.ascontiguousarray(pts[:n]), np.ascontiguousarray(pts[n:])
    if isinstance(m, RadialMap):
        # The two-sided radial bound is proven for equal-radius pairs only.
        return _equal_radius_pairs(n, rng)
    pts = sample_points(m.source, 2 * n, rng)
    return np.ascontiguousarray(pts[:n]), np.ascontiguousarray(pts[n:])


def _ratio_arrays(m: MapSpec, kind: MetricKind, X: np.ndarray,
                  Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-pair source values and image values of the metric."""
    n = X.shape[0]
    src_parts = _dispatch.map_chunks(
        lambda lo, hi: metric_pairs(kind, m.source, X[lo:hi], Y[lo:hi]), n)
    img_parts = _dispatch.map_chunks(
        lambda lo, hi: metric_pairs(kind, m.target,
                                    apply_many(m, X[lo:hi]),
                                    apply_many(m, Y[lo:hi])), n)
    return _dispatch.concat_chunks(src_parts), _dispatch.concat_chunks(img_parts)


def lipschitz_estimate(m: MapSpec, metric, n: int, seed: int,
                       sampler: Optional[Callable] = None) -> RatioReport:
    """Sampled sup of metric(f x, f y)/metric(x, y), with extremal pairs mixed in.

    Random pairs come from the source-domain sampler; the hand-coded
    extremal families are appended so the supremum actually approaches the
    claimed constant instead of hoping uniform sampling finds the corner.
    """
    if n < 1:
        raise ValueError("need at least one sample pair")
    kind = metric_kind(metric)
    bound = claimed_bound(m, kind)
    rng = np.random.default_rng(seed)
    X, Y = _draw_pairs(m, n, rng, sampler)
    EX, EY = extremal_pairs(m, kind)
    if EX.size:
        X = np.vstack([X, EX])
        Y = np.vstack([Y, EY])
    src, img = _ratio_arrays(m, kind, X, Y)
    valid = src > 0.0
    ratios = np.full(X.shape[0], -math.inf)
    ratios[valid] = img[valid] / src[valid]
    best = int(np.argmax(ratios))
    sup = float(ratios[best])
    return RatioReport(
        map=m.label(),
        metric=kind.value,
        sup_ratio=sup,
        bound_claimed=bound,
        bound_respected=sup <= bound + RATIO_TOL,
        witness=(tuple(X[best]), tuple(Y[best])),
        samples=int(X.shape[0]),
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Dedicated two-sided checks


def power_map_bounds_check(alpha: float, beta: float, n: int, seed: int) -> BoundReport:
    """Fuzz both one-sided t-comparisons under the power map.

    With C = beta sin(alpha/2) / (alpha sin(beta/2)): for alpha <= beta the
    image t lies in [t/2, C t]; for alpha >= beta it lies in [C t, 2 t].
    Margins are the distance to the nearer side, ratios are image/source.
    """
    m = PowerMap(alpha, beta)
    C = power_coefficient(alpha, beta)
    lower = C if alpha >= beta else 0.5
    upper = C if alpha <= beta else 2.0
    rng = np.random.default_rng(seed)
    X, Y = _draw_pairs(m, n, rng, None)
    EX, EY = extremal_pairs(m, MetricKind.T)
    X = np.vstack([X, EX])
    Y = np.vstack([Y, EY])
    src, img = _ratio_arrays(m, MetricKind.T, X, Y)
    margins = np.minimum(img - lower * src, upper * src - img)
    ratios = np.full(X.shape[0], math.nan)
    valid = src > 0.0
    ratios[valid] = img[valid] / src[valid]
    return build_report(m.label(), X, Y, margins, ratios, seed)


def radial_map_check(a: float, n: int, seed: int) -> BoundReport:
    """Fuzz 1 <= t(f x, f y)/t(x, y) <= 1/(2^a - 1) on equal-radius pairs."""
    m = RadialMap(a)
    bound = 1.0 / (2.0 ** a - 1.0)
    rng = np.random.default_rng(seed)
    X, Y = _equal_radius_pairs(n, rng)
    EX, EY = extremal_pairs(m, MetricKind.T)
    X = np.vstack([X, EX])
    Y = np.vstack([Y, EY])
    src, img = _ratio_arrays(m, MetricKind.T, X, Y)
    margins = np.minimum(img - src, bound * src - img)
    ratios = np.full(X.shape[0], math.nan)
    valid = src > 0.0
    ratios[valid] = img[valid] / src[valid]
    return build_report(m.label(), X, Y, margins, ratios, seed)


def sector_inversion_s_invariance(theta: float, n: int, seed: int) -> BoundReport:
    """Check that inversion leaves the boundary-path ratio metric unchanged.

    Margins are -|s(x, y) - s(x*, y*)|, so the default -1e-9 tolerance
    bounds the allowed deviation; ratios are image value over source value.
    """
    m = SectorInversion(theta)
    rng = np.random.default_rng(seed)
    X, Y = _draw_pairs(m, n, rng, None)
    src, img = _ratio_arrays(m, MetricKind.SRATIO, X, Y)
    margins = -np.abs(img - src)
    ratios = np.full(X.shape[0], math.nan)
    valid = src > 0.0
    ratios[valid] = img[valid] / src[valid]
    return build_report(f"sector_inversion_s(theta={theta:g})", X, Y,
                        margins, ratios, seed)


# ---------------------------------------------------------------------------
# Disk automorphism expansion search


def _conjecture_ratios(A: np.ndarray, Zx: np.ndarray, Zy: np.ndarray) -> np.ndarray:
    """Normalized expansion t(T_a x, T_a y) / ((1 + |a|) t(x, y)).

    Subtracting two computed images cancels catastrophically for merged
    near-boundary pairs, so the image quantities come from the exact disk
    automorphism identities instead:

      |T x - T y|  = |x - y| (1 - |a|^2) / (|1 - conj(a) x| |1 - conj(a) y|)
      1 - |T z|^2  = (1 - |a|^2) (1 - |z|^2) / |1 - conj(a) z|^2

    Every factor is a well-conditioned product, keeping the ratio accurate
    to a few units in 1e-9 even at radii within 1e-7 of the boundary.
    Pairs with zero separation give NaN.
    """
    u = np.abs(Zx - Zy)
    ax = np.abs(Zx)
    ay = np.abs(Zy)
    aa = np.abs(A)
    dx = 1.0 - ax
    dy = 1.0 - ay
    one_minus_a2 = (1.0 - aa) * (1.0 + aa)
    Px = np.abs(1.0 - np.conj(A) * Zx)
    Py = np.abs(1.0 - np.conj(A) * Zy)
    u_img = u * one_minus_a2 / (Px * Py)
    qx = np.abs(Zx - A) / Px
    qy = np.abs(Zy - A) / Py
    dx_img = one_minus_a2 * dx * (1.0 + ax) / (Px * Px * (1.0 + qx))
    dy_img = one_minus_a2 * dy * (1.0 + ay) / (Py * Py * (1.0 + qy))
    with np.errstate(invalid="ignore", divide="ignore"):
        t_img = u_img / (u_img + dx_img + dy_img)
        t_src = u / (u + dx + dy)
        out = t_img / ((1.0 + aa) * t_src)
    out[u <= 0.0] = np.nan
    return out


def _disk_uniform(rng, n: int) -> np.ndarray:
    r = np.sqrt(rng.uniform(0.0, 1.0, n))
    ang = rng.uniform(0.0, 2.0 * math.pi, n)
    return r * (np.cos(ang) + 1j * np.sin(ang))


def _disk_boundary_biased(rng, n: int) -> np.ndarray:
    r = 1.0 - 10.0 ** rng.uniform(-7.0, -0.3, n)
    ang = rng.uniform(0.0, 2.0 * math.pi, n)
    return r * (np.cos(ang) + 1j * np.sin(ang))


def conjecture_search(n: int, seed: int,
                      strategy: str = "boundary-biased") -> RatioReport:
    """Search for disk-automorphism pairs expanding t by more than 1 + |a|.

    Draws (a, x, y) triples, computes t(T_a x, T_a y) / ((1 + |a|) t(x, y))
    and reports the supremum of that normalized ratio.  A value above 1
    would contradict the conjectured bound; the report flags it and nothing
    more, because whether the bound holds is an open question.  The
    boundary-biased strategy pushes |a|, |x|, |y| toward 1 and also merges
    half of the pairs, which is where the ratio gets largest.
    """
    if n < 1:
        raise ValueError("need at least one sample triple")
    if strategy not in ("uniform", "boundary-biased"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = np.random.default_rng(seed)
    best_val = -math.inf
    best_witness = ((0.0, 0.0), (0.0, 0.0), (0.0, 0.0))
    chunk = 1 << 17
    done = 0
    while done < n:
        m = min(chunk, n - done)
        if strategy == "uniform":
            A = _disk_uniform(rng, m)
            Zx = _disk_uniform(rng, m)
            Zy = _disk_uniform(rng, m)
        else:
            A = _disk_boundary_biased(rng, m)
            Zx = _disk_boundary_biased(rng, m)
            Zy = _disk_boundary_biased(rng, m)
            # Merge half of the pairs: y = x + small step, kept inside.
            half = m // 2
            if half:
                step = (10.0 ** rng.uniform(-8.0, -0.5, half)
                        * (1.0 - np.abs(Zx[:half])))
                ang = rng.uniform(0.0, 2.0 * math.pi, half)
                cand = Zx[:half] + step * (np.cos(ang) + 1j * np.sin(ang))
                inside = np.abs(cand) < 1.0
                Zy[:half][inside] = cand[inside]
        vals = _conjecture_ratios(A, Zx, Zy)
        valid = np.isfinite(vals)
        if valid.any():
            masked = np.where(valid, vals, -math.inf)
            idx = int(np.argmax(masked))
            if float(masked[idx]) > best_val:
                best_val = float(masked[idx])
                best_witness = (
                    (float(Zx[idx].real), float(Zx[idx].imag)),
                    (float(Zy[idx].real), float(Zy[idx].imag)),
                    (float(A[idx].real), float(A[idx].imag)),
                )
        done += m
    return RatioReport(
        map="mobius_disk_family",
        metric="t",
        sup_ratio=best_val,
        bound_claimed=1.0,
        bound_respected=best_val <= 1.0 + RATIO_TOL,
        witness=best_witness,
        samples=n,
        seed=seed,
    )

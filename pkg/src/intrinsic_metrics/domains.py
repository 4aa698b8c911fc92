"""Domain specifications and boundary geometry.

A domain is an open proper subset of R^n described by one of the dataclasses
below.  Boundary points never count as inside.  The numeric work (membership,
boundary distance, Heron-sum infima) happens in the kernel module; this module
validates inputs, packs domains into the kernel layout and provides the
slower, geometry-flavoured helpers (boundary sampling, bisectors, JSON I/O).
"""

from __future__ import annotations

import functools
import json
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from intrinsic_metrics import _kernels as _K

Point = Sequence[float]
Box = tuple[float, float, float, float]  # xmin, ymin, xmax, ymax


class OutsideDomainError(ValueError):
    """A point that must lie inside the domain does not."""


@dataclass(frozen=True)
class HalfSpace:
    """Upper half-space {x in R^dim : x_dim > 0}."""

    dim: int = 2

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("half-space dimension must be >= 2")


@dataclass(frozen=True)
class UnitBall:
    """Open unit ball {|x| < 1} in R^dim."""

    dim: int = 2

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("unit-ball dimension must be >= 2")


@dataclass(frozen=True)
class Sector:
    """Planar sector {z != 0 : 0 < arg z < theta} for theta in (0, 2*pi)."""

    theta: float

    def __post_init__(self):
        if not 0.0 < self.theta < 2.0 * math.pi:
            raise ValueError("sector angle must lie in (0, 2*pi)")


@dataclass(frozen=True)
class Polygon:
    """Interior of a simple polygon with counter-clockwise vertices."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        v = self.vertices
        if len(v) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", tuple((float(a), float(b)) for a, b in v))
        v = self.vertices
        n = len(v)
        for k in range(n):
            if v[k] == v[(k + 1) % n]:
                raise ValueError("polygon has a zero-length edge")
        area2 = sum(v[k][0] * v[(k + 1) % n][1] - v[(k + 1) % n][0] * v[k][1] for k in range(n))
        if area2 <= 0.0:
            raise ValueError("polygon vertices must be counter-clockwise")
        if _self_intersects(v):
            raise ValueError("polygon must be simple (no self-intersection)")


@dataclass(frozen=True)
class BoundarySet:
    """Planar domain given by explicit boundary pieces (segments and rays).

    Membership uses crossing parity of a fixed tilted upward test ray:
    inside_parity 0 means points with an even crossing count are inside
    (the region containing the far-up end of the test ray), 1 means odd.
    """

    segments: tuple[tuple[tuple[float, float], tuple[float, float]], ...]
    rays: tuple[tuple[tuple[float, float], tuple[float, float]], ...]
    inside_parity: int = 0

    def __post_init__(self):
        if not self.segments and not self.rays:
            raise ValueError("boundary set needs at least one piece")
        if self.inside_parity not in (0, 1):
            raise ValueError("inside_parity must be 0 or 1")
        segs = []
        for (a, b) in self.segments:
            a = (float(a[0]), float(a[1]))
            b = (float(b[0]), float(b[1]))
            if a == b:
                raise ValueError("boundary segment has zero length")
            segs.append((a, b))
        rays = []
        for (o, d) in self.rays:
            nrm = math.hypot(d[0], d[1])
            if nrm <= 0.0:
                raise ValueError("boundary ray has zero direction")
            rays.append(((float(o[0]), float(o[1])), (float(d[0]) / nrm, float(d[1]) / nrm)))
        object.__setattr__(self, "segments", tuple(segs))
        object.__setattr__(self, "rays", tuple(rays))


@dataclass(frozen=True)
class PuncturedDisk:
    """Open unit disk with the origin removed."""


DomainSpec = Union[HalfSpace, UnitBall, Sector, Polygon, BoundarySet, PuncturedDisk]


def _self_intersects(v: tuple[tuple[float, float], ...]) -> bool:
    n = len(v)
    edges = [(v[k], v[(k + 1) % n]) for k in range(n)]

    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share a vertex by construction
            p1, p2 = edges[i]
            q1, q2 = edges[j]
            d1 = orient(p1, p2, q1)
            d2 = orient(p1, p2, q2)
            d3 = orient(q1, q2, p1)
            d4 = orient(q1, q2, p2)
            if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
                return True
            if d1 == 0 and d2 == 0:  # collinear overlap check
                lo = min(p1[0], p2[0]), min(p1[1], p2[1])
                hi = max(p1[0], p2[0]), max(p1[1], p2[1])
                for q in (q1, q2):
                    if lo[0] <= q[0] <= hi[0] and lo[1] <= q[1] <= hi[1]:
                        return True
    return False


def dimension(domain: DomainSpec) -> int:
    if isinstance(domain, (HalfSpace, UnitBall)):
        return domain.dim
    return 2


_EMPTY_PIECES = np.zeros((0, 5), dtype=np.float64)


@functools.lru_cache(maxsize=256)
def _pack(domain: DomainSpec):
    """Kernel layout: (kind, dim, theta, parity, pieces)."""
    if isinstance(domain, HalfSpace):
        return _K.KIND_HALFSPACE, domain.dim, 0.0, 0, _EMPTY_PIECES
    if isinstance(domain, UnitBall):
        return _K.KIND_UNITBALL, domain.dim, 0.0, 0, _EMPTY_PIECES
    if isinstance(domain, Sector):
        return _K.KIND_SECTOR, 2, float(domain.theta), 0, _EMPTY_PIECES
    if isinstance(domain, PuncturedDisk):
        return _K.KIND_PUNCTURED, 2, 0.0, 0, _EMPTY_PIECES
    if isinstance(domain, Polygon):
        v = domain.vertices
        n = len(v)
        pieces = np.empty((n, 5), dtype=np.float64)
        for k in range(n):
            a, b = v[k], v[(k + 1) % n]
            pieces[k] = (0.0, a[0], a[1], b[0], b[1])
        return _K.KIND_POLYGON, 2, 0.0, 0, pieces
    if isinstance(domain, BoundarySet):
        rows = [(0.0, a[0], a[1], b[0], b[1]) for (a, b) in domain.segments]
        rows += [(1.0, o[0], o[1], d[0], d[1]) for (o, d) in domain.rays]
        pieces = np.array(rows, dtype=np.float64).reshape(len(rows), 5)
        return _K.KIND_BOUNDARYSET, 2, 0.0, domain.inside_parity, pieces
    raise TypeError(f"not a domain: {domain!r}")


def as_point_array(domain: DomainSpec, x: Point) -> np.ndarray:
    """One point as a (1, dim) float64 row, with dimension validation."""
    arr = np.asarray(x, dtype=np.float64).reshape(-1)
    if arr.shape[0] != dimension(domain):
        raise ValueError(f"point has dimension {arr.shape[0]}, domain needs {dimension(domain)}")
    return arr.reshape(1, -1)


def as_points_array(domain: DomainSpec, X) -> np.ndarray:
    arr = np.ascontiguousarray(X, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != dimension(domain):
        raise ValueError(f"expected an (m, {dimension(domain)}) point array")
    return arr


def contains(domain: DomainSpec, x: Point) -> bool:
    kind, dim, theta, parity, pieces = _pack(domain)
    return bool(_K.contains_many(kind, dim, theta, parity, pieces, as_point_array(domain, x))[0])


def contains_many(domain: DomainSpec, X) -> np.ndarray:
    kind, dim, theta, parity, pieces = _pack(domain)
    return _K.contains_many(kind, dim, theta, parity, pieces, as_points_array(domain, X)).astype(bool)


def boundary_distance(domain: DomainSpec, x: Point) -> float:
    """Euclidean distance from an interior point to the domain boundary."""
    if not contains(domain, x):
        raise OutsideDomainError(f"point {tuple(x)} is not inside the domain")
    kind, dim, theta, parity, pieces = _pack(domain)
    return float(_K.bdist_many(kind, dim, theta, parity, pieces, as_point_array(domain, x))[0])


def boundary_distance_many(domain: DomainSpec, X) -> np.ndarray:
    kind, dim, theta, parity, pieces = _pack(domain)
    return _K.bdist_many(kind, dim, theta, parity, pieces, as_points_array(domain, X))


def heron_infimum(domain: DomainSpec, x: Point, y: Point) -> float:
    """inf over boundary points z of |x-z| + |z-y| for interior x, y.

    Closed form everywhere except the unit ball and the circle part of the
    punctured disk, where a multistart golden-section search on the boundary
    circle is used.  For balls in dimension above two the search runs in the
    plane spanned by x and y; restricting to that plane is exact because any
    off-plane critical point can only occur for antiparallel x, y, where
    rotating the minimiser into the plane preserves the two-leg sum.
    """
    for p in (x, y):
        if not contains(domain, p):
            raise OutsideDomainError(f"point {tuple(p)} is not inside the domain")
    kind, dim, theta, parity, pieces = _pack(domain)
    if isinstance(domain, UnitBall) and dim > 2:
        return _heron_ball_highdim(domain, np.asarray(x, float), np.asarray(y, float))
    xa = as_point_array(domain, x)
    ya = as_point_array(domain, y)
    return float(_K.heron_many(kind, dim, theta, parity, pieces, xa, ya)[0])


def heron_infimum_many(domain: DomainSpec, X, Y) -> np.ndarray:
    kind, dim, theta, parity, pieces = _pack(domain)
    if isinstance(domain, UnitBall) and dim > 2:
        X = as_points_array(domain, X)
        Y = as_points_array(domain, Y)
        return np.array([_heron_ball_highdim(domain, X[i], Y[i]) for i in range(X.shape[0])])
    return _K.heron_many(kind, dim, theta, parity, pieces,
                         as_points_array(domain, X), as_points_array(domain, Y))


def _heron_ball_highdim(domain: UnitBall, x: np.ndarray, y: np.ndarray) -> float:
    nx = float(np.linalg.norm(x))
    ny = float(np.linalg.norm(y))
    if nx > 1e-15:
        e1 = x / nx
    elif ny > 1e-15:
        e1 = y / ny
    else:
        e1 = np.zeros(domain.dim)
        e1[0] = 1.0
    w = y - (y @ e1) * e1
    nw = float(np.linalg.norm(w))
    if nw > 1e-12:
        e2 = w / nw
    else:
        k = int(np.argmin(np.abs(e1)))
        axis = np.zeros(domain.dim)
        axis[k] = 1.0
        e2 = axis - (axis @ e1) * e1
        e2 /= np.linalg.norm(e2)
    h = _K.ball_heron_plane(float(x @ e1), float(x @ e2), float(y @ e1), float(y @ e2))
    u = float(np.linalg.norm(x - y))
    return max(h, u, (1.0 - nx) + (1.0 - ny))


def nearest_boundary_point(domain: DomainSpec, x: Point) -> tuple[float, ...]:
    """A boundary point of minimal distance to the interior point x."""
    if not contains(domain, x):
        raise OutsideDomainError(f"point {tuple(x)} is not inside the domain")
    p = np.asarray(x, dtype=np.float64)
    if isinstance(domain, HalfSpace):
        q = p.copy()
        q[-1] = 0.0
        return tuple(q)
    if isinstance(domain, UnitBall):
        n = float(np.linalg.norm(p))
        if n == 0.0:
            q = np.zeros(domain.dim)
            q[0] = 1.0
            return tuple(q)
        return tuple(p / n)
    if isinstance(domain, PuncturedDisk):
        n = float(np.linalg.norm(p))
        if n <= 1.0 - n:
            return (0.0, 0.0)
        return tuple(p / n)
    if isinstance(domain, Sector):
        cands = []
        for ang in (0.0, domain.theta):
            u = np.array([math.cos(ang), math.sin(ang)])
            t = max(0.0, float(p @ u))
            cands.append(t * u)
        return tuple(min(cands, key=lambda c: float(np.linalg.norm(p - c))))
    kind, dim, theta, parity, pieces = _pack(domain)
    best = None
    best_d = math.inf
    for row in np.asarray(pieces):
        if row[0] == 0.0:
            a = row[1:3]
            v = row[3:5] - a
            l2 = float(v @ v)
            t = 0.0 if l2 <= 0 else min(1.0, max(0.0, float((p - a) @ v) / l2))
            c = a + t * v
        else:
            o = row[1:3]
            u = row[3:5]
            t = max(0.0, float((p - o) @ u))
            c = o + t * u
        d = float(np.linalg.norm(p - c))
        if d < best_d:
            best_d = d
            best = c
    return tuple(best)


# ---------------------------------------------------------------------------
# Boundary sampling


def _clip_segment_to_box(a, b, box: Box):
    """Liang-Barsky clip; returns clipped endpoints or None."""
    xmin, ymin, xmax, ymax = box
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, a[0] - xmin), (dx, xmax - a[0]), (-dy, a[1] - ymin), (dy, ymax - a[1])):
        if p == 0.0:
            if q < 0.0:
                return None
            continue
        r = q / p
        if p < 0.0:
            if r > t1:
                return None
            t0 = max(t0, r)
        else:
            if r < t0:
                return None
            t1 = min(t1, r)
    if t0 > t1:
        return None
    p0 = (a[0] + t0 * dx, a[1] + t0 * dy)
    p1 = (a[0] + t1 * dx, a[1] + t1 * dy)
    if p0 == p1:
        return None
    return p0, p1


def _clip_ray_to_box(o, d, box: Box):
    """Clip the ray o + t*d (t >= 0) to the box; same slab method."""
    xmin, ymin, xmax, ymax = box
    t0, t1 = 0.0, math.inf
    for p, q in ((-d[0], o[0] - xmin), (d[0], xmax - o[0]), (-d[1], o[1] - ymin), (d[1], ymax - o[1])):
        if p == 0.0:
            if q < 0.0:
                return None
            continue
        r = q / p
        if p < 0.0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
    if not math.isfinite(t1) or t0 > t1:
        return None
    p0 = (o[0] + t0 * d[0], o[1] + t0 * d[1])
    p1 = (o[0] + t1 * d[0], o[1] + t1 * d[1])
    if p0 == p1:
        return None
    return p0, p1


def _circle_arcs_in_box(box: Box, scan: int = 4096):
    """Angular intervals of the unit circle lying inside the box."""
    xmin, ymin, xmax, ymax = box
    if xmin <= -1.0 and ymin <= -1.0 and xmax >= 1.0 and ymax >= 1.0:
        return [(0.0, 2.0 * math.pi)]
    step = 2.0 * math.pi / scan
    inside = [
        xmin <= math.cos(k * step) <= xmax and ymin <= math.sin(k * step) <= ymax
        for k in range(scan)
    ]
    if not any(inside):
        return []
    arcs = []
    # rotate so the scan starts at an outside sample, then collect runs
    try:
        start = inside.index(False)
    except ValueError:
        return [(0.0, 2.0 * math.pi)]
    run_start = None
    for off in range(1, scan + 1):
        k = (start + off) % scan
        if inside[k] and run_start is None:
            run_start = k
        elif not inside[k] and run_start is not None:
            end = (start + off - 1) % scan
            a0 = run_start * step
            a1 = end * step
            if a1 < a0:
                a1 += 2.0 * math.pi
            arcs.append((a0, a1))
            run_start = None
    return arcs


def boundary_sample(domain: DomainSpec, count: int, window: Box) -> list[tuple[float, float]]:
    """About `count` points on the boundary, equispaced by arc length in the window.

    Points lie exactly on the boundary pieces.  Unbounded pieces are clipped
    to the window first; a window that misses the boundary yields [].
    """
    if count <= 0:
        return []
    if dimension(domain) != 2:
        raise ValueError("boundary sampling is planar only")
    segs: list[tuple[tuple, tuple]] = []
    arcs: list[tuple[float, float]] = []
    if isinstance(domain, HalfSpace):
        if window[1] <= 0.0 <= window[3]:
            seg = _clip_segment_to_box((window[0], 0.0), (window[2], 0.0), window)
            if seg:
                segs.append(seg)
    elif isinstance(domain, (UnitBall, PuncturedDisk)):
        arcs = _circle_arcs_in_box(window)
    elif isinstance(domain, Sector):
        for ang in (0.0, domain.theta):
            clipped = _clip_ray_to_box((0.0, 0.0), (math.cos(ang), math.sin(ang)), window)
            if clipped:
                segs.append(clipped)
    else:
        kind, dim, theta, parity, pieces = _pack(domain)
        for row in np.asarray(pieces):
            if row[0] == 0.0:
                clipped = _clip_segment_to_box(tuple(row[1:3]), tuple(row[3:5]), window)
            else:
                clipped = _clip_ray_to_box(tuple(row[1:3]), tuple(row[3:5]), window)
            if clipped:
                segs.append(clipped)
    lengths = [math.dist(a, b) for a, b in segs] + [a1 - a0 for a0, a1 in arcs]
    total = sum(lengths)
    if total <= 0.0:
        return []
    out = []
    step = total / count
    piece_starts = np.concatenate([[0.0], np.cumsum(lengths)])
    pieces_all: list = segs + arcs
    for j in range(count):
        s = j * step
        idx = int(np.searchsorted(piece_starts, s, side="right") - 1)
        idx = min(idx, len(pieces_all) - 1)
        off = s - piece_starts[idx]
        if idx < len(segs):
            a, b = segs[idx]
            ll = lengths[idx]
            f = 0.0 if ll <= 0 else off / ll
            out.append((a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])))
        else:
            a0, a1 = arcs[idx - len(segs)]
            ang = a0 + off
            out.append((math.cos(ang), math.sin(ang)))
    return out


def angle_bisectors(domain: Polygon) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Interior angle bisector (vertex, unit direction) for every vertex.

    Convexity is decided by the edge cross product (counter-clockwise
    outline): reflex vertices get the reversed sum direction so the bisector
    always points into the domain.  A straight or spike vertex is an error.
    """
    if not isinstance(domain, Polygon):
        raise ValueError("angle bisectors need a polygon domain")
    v = domain.vertices
    n = len(v)
    out = []
    for k in range(n):
        a = np.asarray(v[(k - 1) % n])
        p = np.asarray(v[k])
        b = np.asarray(v[(k + 1) % n])
        da = a - p
        db = b - p
        da = da / np.linalg.norm(da)
        db = db / np.linalg.norm(db)
        s = da + db
        ns = float(np.linalg.norm(s))
        cross = float((p - a)[0] * (b - p)[1] - (p - a)[1] * (b - p)[0])
        if ns < 1e-12 or cross == 0.0:
            raise ValueError(f"degenerate (straight) vertex at index {k}")
        d = s / ns
        if cross < 0.0:  # reflex corner: interior lies opposite the edge sum
            d = -d
        out.append(((float(p[0]), float(p[1])), (float(d[0]), float(d[1]))))
    return out


# ---------------------------------------------------------------------------
# Stock domains and sampling boxes


def pentagram() -> Polygon:
    """Five-pointed star with outer vertices on the unit circle.

    The inner radius is the chord-intersection radius of the star, computed
    at build time rather than hard-coded.
    """
    outer = [(math.cos(math.radians(90 + 72 * k)), math.sin(math.radians(90 + 72 * k))) for k in range(5)]

    def intersect(p, q, r, s):
        d1 = (q[0] - p[0], q[1] - p[1])
        d2 = (s[0] - r[0], s[1] - r[1])
        den = d1[0] * d2[1] - d1[1] * d2[0]
        t = ((r[0] - p[0]) * d2[1] - (r[1] - p[1]) * d2[0]) / den
        return (p[0] + t * d1[0], p[1] + t * d1[1])

    # chords skip one vertex; adjacent chords meet at the inner vertices
    inner_pt = intersect(outer[0], outer[2], outer[4], outer[1])
    r_inner = math.hypot(*inner_pt)
    verts = []
    for k in range(5):
        verts.append(outer[k])
        ang = math.radians(90 + 36 + 72 * k)
        verts.append((r_inner * math.cos(ang), r_inner * math.sin(ang)))
    return Polygon(tuple(verts))


def half_plane_with_strip() -> BoundarySet:
    """Upper half-plane joined to the open strip {|x| < 1, -3 < y <= 0}.

    The slot {|x| < 1, y = 0} is interior, so the boundary consists of two
    horizontal rays, the two strip sides and the strip bottom.
    """
    return BoundarySet(
        segments=(((-1.0, -3.0), (-1.0, 0.0)), ((1.0, -3.0), (1.0, 0.0)), ((-1.0, -3.0), (1.0, -3.0))),
        rays=(((1.0, 0.0), (1.0, 0.0)), ((-1.0, 0.0), (-1.0, 0.0))),
        inside_parity=0,
    )


_PRESETS: dict[str, Callable[[], DomainSpec]] = {
    "halfplane": lambda: HalfSpace(2),
    "unitball": lambda: UnitBall(2),
    "pentagram": pentagram,
    "hstrip": half_plane_with_strip,
    "punctured": lambda: PuncturedDisk(),
}


def preset(name: str) -> DomainSpec:
    """Named stock domain; sectors are spelled sector:<theta-in-radians>."""
    if name.startswith("sector:"):
        return Sector(float(name.split(":", 1)[1]))
    try:
        return _PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown domain preset {name!r}") from None


def bounding_box(domain: DomainSpec, pad: float = 0.05) -> Box | None:
    """Inflated bounding box for bounded planar domains, else None."""
    if isinstance(domain, (UnitBall, PuncturedDisk)) and dimension(domain) == 2:
        lo, hi = -1.0 - pad, 1.0 + pad
        return (lo, lo, hi, hi)
    if isinstance(domain, Polygon):
        xs = [p[0] for p in domain.vertices]
        ys = [p[1] for p in domain.vertices]
        w = max(max(xs) - min(xs), max(ys) - min(ys))
        m = pad * w
        return (min(xs) - m, min(ys) - m, max(xs) + m, max(ys) + m)
    return None


def sampling_box(domain: DomainSpec) -> Box:
    """Box used by the uniform rejection sampler (planar domains)."""
    if isinstance(domain, HalfSpace):
        return (-3.0, 0.0, 3.0, 3.0)
    if isinstance(domain, (UnitBall, PuncturedDisk)):
        return (-1.0, -1.0, 1.0, 1.0)
    if isinstance(domain, Polygon):
        box = bounding_box(domain, pad=0.0)
        return box
    if isinstance(domain, BoundarySet):
        return (-3.0, -3.0, 3.0, 3.0)
    raise ValueError(f"no sampling box for {domain!r}")


def sample_points(domain: DomainSpec, count: int, rng) -> np.ndarray:
    """Deterministic interior samples: uniform on box-intersect-domain, except
    sectors, which use log-uniform radius in [1e-2, 1e2] and uniform angle."""
    rng = np.random.default_rng(rng) if isinstance(rng, int) else rng
    dim = dimension(domain)
    if isinstance(domain, Sector):
        r = 10.0 ** rng.uniform(-2.0, 2.0, count)
        ang = rng.uniform(0.0, domain.theta, count)
        return np.c_[r * np.cos(ang), r * np.sin(ang)]
    if isinstance(domain, (HalfSpace, UnitBall)) and dim > 2:
        out = np.empty((0, dim))
        while out.shape[0] < count:
            cand = rng.uniform(-1.0, 1.0, (2 * count + 16, dim))
            if isinstance(domain, HalfSpace):
                cand[:, -1] = np.abs(cand[:, -1]) * 3.0
                cand[:, :-1] *= 3.0
                keep = cand[:, -1] > 0.0
            else:
                keep = (cand * cand).sum(axis=1) < 1.0
            out = np.vstack([out, cand[keep]])
        return np.ascontiguousarray(out[:count])
    box = sampling_box(domain)
    out = np.empty((0, 2))
    empty_rounds = 0
    while out.shape[0] < count:
        cand = np.c_[
            rng.uniform(box[0], box[2], 2 * count + 16),
            rng.uniform(box[1], box[3], 2 * count + 16),
        ]
        keep = contains_many(domain, cand)
        if not keep.any():
            empty_rounds += 1
            if empty_rounds >= 64:
                raise ValueError("sampler cannot place points inside the domain")
            continue
        empty_rounds = 0
        out = np.vstack([out, cand[keep]])
    return np.ascontiguousarray(out[:count])


# ---------------------------------------------------------------------------
# JSON interface


def domain_to_json(domain: DomainSpec) -> dict:
    if isinstance(domain, HalfSpace):
        return {"kind": "halfspace", "dimension": domain.dim}
    if isinstance(domain, UnitBall):
        return {"kind": "unitball", "dimension": domain.dim}
    if isinstance(domain, Sector):
        return {"kind": "sector", "theta": domain.theta}
    if isinstance(domain, Polygon):
        return {"kind": "polygon", "vertices": [list(p) for p in domain.vertices]}
    if isinstance(domain, BoundarySet):
        return {
            "kind": "boundaryset",
            "segments": [[list(a), list(b)] for a, b in domain.segments],
            "rays": [[list(o), list(d)] for o, d in domain.rays],
            "inside_parity": domain.inside_parity,
        }
    if isinstance(domain, PuncturedDisk):
        return {"kind": "punctured_disk"}
    raise TypeError(f"not a domain: {domain!r}")


def domain_from_json(data: dict) -> DomainSpec:
    kind = data.get("kind")
    if kind == "halfspace":
        return HalfSpace(int(data.get("dimension", 2)))
    if kind == "unitball":
        return UnitBall(int(data.get("dimension", 2)))
    if kind == "sector":
        return Sector(float(data["theta"]))
    if kind == "polygon":
        return Polygon(tuple(tuple(p) for p in data["vertices"]))
    if kind == "boundaryset":
        return BoundarySet(
            segments=tuple((tuple(a), tuple(b)) for a, b in data.get("segments", [])),
            rays=tuple((tuple(o), tuple(d)) for o, d in data.get("rays", [])),
            inside_parity=int(data.get("inside_parity", 0)),
        )
    if kind == "punctured_disk":
        return PuncturedDisk()
    raise ValueError(f"unknown domain kind {kind!r}")


def write_atomic(path: str, data: str) -> None:
    """Write text via a temp file and rename, so readers never see partials."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def save_domain(domain: DomainSpec, path: str) -> None:
    write_atomic(path, json.dumps(domain_to_json(domain), indent=2) + "\n")


def load_domain(path: str) -> DomainSpec:
    with open(path) as fh:
        return domain_from_json(json.load(fh))

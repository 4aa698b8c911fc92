"""Metric balls on a grid: scalar fields, contours, SVG output, shape checks.

A ball here is a sub-level set {y : d(center, y) < r} of one of the package
metrics.  Everything in this module works from a sampled scalar field, so the
results are exact up to grid resolution and are bitwise reproducible for a
fixed domain, metric, center, bounding box and resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as _K
from ._dispatch import map_chunks
from .domains import (
    Box,
    BoundarySet,
    DomainSpec,
    HalfSpace,
    OutsideDomainError,
    Polygon,
    PuncturedDisk,
    Sector,
    UnitBall,
    _clip_ray_to_box,
    _clip_segment_to_box,
    _pack,
    bounding_box,
    boundary_distance,
    boundary_distance_many,
    boundary_sample,
    contains,
    contains_many,
    dimension,
    nearest_boundary_point,
)
from .metrics import (
    MetricKind,
    check_kind_supported,
    kernel_code,
    metric_kind,
    metric_pairs,
)

__all__ = [
    "ScalarField",
    "Contour",
    "BoundaryTouch",
    "StarlikeReport",
    "grid_field",
    "extract_contours",
    "contours_to_json",
    "field_to_csv",
    "render_svg",
    "boundary_reach",
    "touches_boundary",
    "starlike_check",
    "corner_points",
]


# ---------------------------------------------------------------------------
# scalar fields


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Metric-to-center values sampled on a rectangular grid.

    ``values`` has shape (ny, nx) with ``values[iy, ix]`` taken at
    ``(xs[ix], ys[iy])``; nodes outside the domain hold ``+inf``.
    """

    domain: DomainSpec
    metric: MetricKind
    center: tuple[float, float]
    bbox: Box
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray

    @property
    def resolution(self) -> tuple[int, int]:
        return (self.xs.shape[0], self.ys.shape[0])

    @property
    def cell(self) -> tuple[float, float]:
        dx = (self.bbox[2] - self.bbox[0]) / max(1, self.xs.shape[0] - 1)
        dy = (self.bbox[3] - self.bbox[1]) / max(1, self.ys.shape[0] - 1)
        return (dx, dy)

    @property
    def cell_diagonal(self) -> float:
        dx, dy = self.cell
        return math.hypot(dx, dy)


def _resolve_bbox(domain: DomainSpec, bbox: Box | None) -> Box:
    if bbox is not None:
        xmin, ymin, xmax, ymax = (float(v) for v in bbox)
        if not (xmin < xmax and ymin < ymax):
            raise ValueError("bbox must satisfy xmin < xmax and ymin < ymax")
        return (xmin, ymin, xmax, ymax)
    box = bounding_box(domain)
    if box is None:
        raise ValueError("domain is unbounded; an explicit bbox is required")
    return box


def _resolve_resolution(resolution) -> tuple[int, int]:
    if isinstance(resolution, (int, np.integer)):
        nx = ny = int(resolution)
    else:
        nx, ny = (int(v) for v in resolution)
    if nx < 2 or ny < 2:
        raise ValueError("grid resolution must be at least 2 nodes per axis")
    return nx, ny


def grid_field(domain: DomainSpec, metric, center, bbox: Box | None = None,
               resolution=512) -> ScalarField:
    """Sample the metric distance from ``center`` on a regular grid.

    ``resolution`` is either a node count shared by both axes or an
    ``(nx, ny)`` pair.  Without an explicit ``bbox`` the padded bounding box
    of the domain is used; unbounded domains then raise ``ValueError``.
    """
    kind = metric_kind(metric)
    if dimension(domain) != 2:
        raise ValueError("grid fields are planar; use a 2-dimensional domain")
    check_kind_supported(kind, domain)
    cx, cy = (float(center[0]), float(center[1]))
    if not contains(domain, (cx, cy)):
        raise OutsideDomainError(f"center {(cx, cy)} is not inside the domain")
    box = _resolve_bbox(domain, bbox)
    nx, ny = _resolve_resolution(resolution)
    xs = np.linspace(box[0], box[2], nx)
    ys = np.linspace(box[1], box[3], ny)
    code = kernel_code(kind)
    dkind, dim, theta, parity, pieces = _pack(domain)

    def rows(lo: int, hi: int) -> np.ndarray:
        return _K.field_eval(code, 0.0, dkind, dim, theta, parity, pieces,
                             cx, cy, xs, np.ascontiguousarray(ys[lo:hi]))

    parts = map_chunks(rows, ny, chunk=64)
    values = parts[0] if len(parts) == 1 else np.vstack(parts)
    return ScalarField(domain=domain, metric=kind, center=(cx, cy), bbox=box,
                       xs=xs, ys=ys, values=values)


def field_to_csv(field: ScalarField) -> str:
    """Serialize a field as ``x,y,value`` rows (row-major, ``inf`` outside)."""
    xs, ys, v = field.xs, field.ys, field.values
    lines = ["x,y,value"]
    for iy in range(ys.shape[0]):
        y = repr(float(ys[iy]))
        row = v[iy]
        for ix in range(xs.shape[0]):
            val = row[ix]
            txt = "inf" if not math.isfinite(val) else repr(float(val))
            lines.append(f"{float(xs[ix])!r},{y},{txt}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# contour extraction (marching squares)


@dataclass(frozen=True, eq=False)
class Contour:
    """Level set of a scalar field as chained polylines.

    Each polyline is an (n, 2) float array; closed loops repeat their first
    point at the end.
    """

    level: float
    polylines: tuple[np.ndarray, ...]


# Undirected crossing pairs per marching-squares case.  Corner bits:
# 1 = bottom-left, 2 = bottom-right, 4 = top-right, 8 = top-left above level.
# Edges: B(ottom), R(ight), T(op), L(eft).  Cases 5 and 10 are saddles and
# are disambiguated by the cell-center average.
_CASE_EDGES = {
    1: (("B", "L"),),
    2: (("B", "R"),),
    3: (("L", "R"),),
    4: (("R", "T"),),
    6: (("B", "T"),),
    7: (("L", "T"),),
    8: (("L", "T"),),
    9: (("B", "T"),),
    11: (("R", "T"),),
    12: (("L", "R"),),
    13: (("B", "R"),),
    14: (("B", "L"),),
}


def _edge_point(edge: str, level: float, x0: float, x1: float, y0: float,
                y1: float, v00: float, v10: float, v01: float, v11: float):
    """Crossing point on one cell edge, in a canonical endpoint order.

    The operand order is fixed per edge so that the two cells sharing an edge
    compute bitwise-identical coordinates, which makes exact-tuple chaining
    reliable.
    """
    if edge == "B":
        t = (level - v00) / (v10 - v00)
        return (x0 + t * (x1 - x0), y0)
    if edge == "T":
        t = (level - v01) / (v11 - v01)
        return (x0 + t * (x1 - x0), y1)
    if edge == "L":
        t = (level - v00) / (v01 - v00)
        return (x0, y0 + t * (y1 - y0))
    t = (level - v10) / (v11 - v10)
    return (x1, y0 + t * (y1 - y0))


def _chain_segments(segments):
    """Join shared-endpoint segments into polylines.

    Open chains are walked first, starting from endpoints of degree one in
    first-seen order; remaining segments form closed loops.  Everything is
    keyed on exact coordinate tuples, so the output order is deterministic.
    """
    adjacency: dict[tuple[float, float], list] = {}
    for idx, (a, b) in enumerate(segments):
        adjacency.setdefault(a, []).append((b, idx))
        adjacency.setdefault(b, []).append((a, idx))
    used = [False] * len(segments)

    def walk(start, first_point, first_idx):
        used[first_idx] = True
        points = [start, first_point]
        current = first_point
        while True:
            step = None
            for neighbor, idx in adjacency[current]:
                if not used[idx]:
                    step = (neighbor, idx)
                    break
            if step is None:
                return points
            used[step[1]] = True
            points.append(step[0])
            current = step[0]

    polylines = []
    for point, links in adjacency.items():
        if len(links) == 1:
            neighbor, idx = links[0]
            if not used[idx]:
                polylines.append(walk(point, neighbor, idx))
    for idx, (a, b) in enumerate(segments):
        if not used[idx]:
            polylines.append(walk(a, b, idx))
    return tuple(np.array(p, dtype=np.float64) for p in polylines)


def _march_level(field: ScalarField, level: float) -> tuple[np.ndarray, ...]:
    xs, ys, v = field.xs, field.ys, field.values
    above = v > level
    finite = np.isfinite(v)
    ok = finite[:-1, :-1] & finite[:-1, 1:] & finite[1:, 1:] & finite[1:, :-1]
    case = (above[:-1, :-1].astype(np.uint8)
            + 2 * above[:-1, 1:].astype(np.uint8)
            + 4 * above[1:, 1:].astype(np.uint8)
            + 8 * above[1:, :-1].astype(np.uint8))
    active = ok & (case != 0) & (case != 15)
    iys, ixs = np.nonzero(active)
    segments = []
    for iy, ix in zip(iys.tolist(), ixs.tolist()):
        v00 = v[iy, ix]
        v10 = v[iy, ix + 1]
        v01 = v[iy + 1, ix]
        v11 = v[iy + 1, ix + 1]
        x0 = xs[ix]
        x1 = xs[ix + 1]
        y0 = ys[iy]
        y1 = ys[iy + 1]
        c = int(case[iy, ix])
        if c == 5 or c == 10:
            center_above = (v00 + v10 + v01 + v11) / 4.0 > level
            if c == 5:
                pairs = (("B", "R"), ("T", "L")) if center_above else (("L", "B"), ("R", "T"))
            else:
                pairs = (("L", "B"), ("R", "T")) if center_above else (("B", "R"), ("T", "L"))
        else:
            pairs = _CASE_EDGES[c]
        for ea, eb in pairs:
            pa = _edge_point(ea, level, x0, x1, y0, y1, v00, v10, v01, v11)
            pb = _edge_point(eb, level, x0, x1, y0, y1, v00, v10, v01, v11)
            if pa != pb:
                segments.append((pa, pb))
    return _chain_segments(segments)


def extract_contours(field: ScalarField, levels) -> list[Contour]:
    """Level sets of the field for levels in (0, 1).

    An empty level set yields a contour with no polylines; that is a valid
    result, not an error.
    """
    out = []
    for level in levels:
        lv = float(level)
        if not 0.0 < lv < 1.0:
            raise ValueError(f"contour level {lv} must lie strictly in (0, 1)")
        out.append(Contour(level=lv, polylines=_march_level(field, lv)))
    return out


def contours_to_json(contours) -> list[dict]:
    return [
        {
            "level": c.level,
            "polylines": [[[float(x), float(y)] for x, y in poly] for poly in c.polylines],
        }
        for c in contours
    ]


# ---------------------------------------------------------------------------
# SVG rendering

_PALETTE = (
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
    "#a6761d", "#666666", "#1f78b4", "#b2182b", "#4daf4a", "#984ea3",
)


def _fmt(v: float) -> str:
    return format(float(v), ".6g")


def _boundary_shapes(domain: DomainSpec, box: Box):
    """Domain boundary as polyline/circle primitives clipped to the box."""
    shapes = []
    if isinstance(domain, HalfSpace):
        if box[1] <= 0.0 <= box[3]:
            shapes.append(("path", [(box[0], 0.0), (box[2], 0.0)], False))
    elif isinstance(domain, UnitBall):
        shapes.append(("circle", (0.0, 0.0), 1.0))
    elif isinstance(domain, PuncturedDisk):
        shapes.append(("circle", (0.0, 0.0), 1.0))
        shapes.append(("dot", (0.0, 0.0), 0.0))
    elif isinstance(domain, Sector):
        for ang in (0.0, domain.theta):
            clip = _clip_ray_to_box((0.0, 0.0), (math.cos(ang), math.sin(ang)), box)
            if clip is not None:
                shapes.append(("path", [clip[0], clip[1]], False))
    elif isinstance(domain, Polygon):
        shapes.append(("path", list(domain.vertices), True))
    elif isinstance(domain, BoundarySet):
        for a, b in domain.segments:
            clip = _clip_segment_to_box(a, b, box)
            if clip is not None:
                shapes.append(("path", [clip[0], clip[1]], False))
        for o, d in domain.rays:
            clip = _clip_ray_to_box(o, d, box)
            if clip is not None:
                shapes.append(("path", [clip[0], clip[1]], False))
    return shapes


def render_svg(contours, domain: DomainSpec, bbox: Box | None = None,
               width: int = 640, palette=None) -> str:
    """Deterministic SVG drawing of contours over the domain boundary.

    One group per level (ascending, ids ``level-<value>``) plus a
    ``domain-boundary`` group.  Identical inputs produce identical bytes.
    """
    if dimension(domain) != 2:
        raise ValueError("svg rendering is planar; use a 2-dimensional domain")
    colors = tuple(palette) if palette else _PALETTE
    box = bbox
    if box is None:
        box = bounding_box(domain)
    if box is None:
        pts = [p for c in contours for poly in c.polylines for p in poly]
        if pts:
            arr = np.array(pts)
            span = max(arr[:, 0].ptp(), arr[:, 1].ptp(), 1e-9)
            pad = 0.05 * span
            box = (arr[:, 0].min() - pad, arr[:, 1].min() - pad,
                   arr[:, 0].max() + pad, arr[:, 1].max() + pad)
        else:
            box = (-1.0, -1.0, 1.0, 1.0)
    xmin, ymin, xmax, ymax = box
    margin = 10.0
    scale = (width - 2.0 * margin) / (xmax - xmin)
    height = (ymax - ymin) * scale + 2.0 * margin

    def to_px(p):
        return (margin + (p[0] - xmin) * scale, margin + (ymax - p[1]) * scale)

    def path_data(points, closed):
        px = [to_px(p) for p in points]
        head = f"M {_fmt(px[0][0])} {_fmt(px[0][1])}"
        if closed and len(px) > 1 and px[0] == px[-1]:
            px = px[:-1]
        body = " ".join(f"L {_fmt(x)} {_fmt(y)}" for x, y in px[1:])
        tail = " Z" if closed else ""
        return f"{head} {body}{tail}" if body else f"{head}{tail}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        '<g id="domain-boundary" fill="none" stroke="#000000" stroke-width="2">',
    ]
    for shape in _boundary_shapes(domain, box):
        if shape[0] == "path":
            closed = shape[2]
            lines.append(f'<path d="{path_data(shape[1], closed)}"/>')
        elif shape[0] == "circle":
            cx, cy = to_px(shape[1])
            lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                         f'r="{_fmt(shape[2] * scale)}"/>')
        else:  # puncture marker
            cx, cy = to_px(shape[1])
            lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="2" '
                         'fill="#000000" stroke="none"/>')
    lines.append("</g>")
    for i, contour in enumerate(sorted(contours, key=lambda c: c.level)):
        color = colors[i % len(colors)]
        lines.append(f'<g id="level-{contour.level:g}" fill="none" '
                     f'stroke="{color}" stroke-width="1.5">')
        for poly in contour.polylines:
            pts = [(float(x), float(y)) for x, y in poly]
            closed = len(pts) > 2 and pts[0] == pts[-1]
            lines.append(f'<path d="{path_data(pts, closed)}"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# boundary reach and touching


def boundary_reach(domain: DomainSpec, metric, center, boundary_count: int = 32) -> float:
    """Infimum of boundary limits of the metric from ``center``.

    For each candidate boundary point the metric is evaluated at two interior
    points approaching it radially and extrapolated to the boundary; the
    smallest limit over the nearest boundary point plus an arc-length sample
    is returned.  The hyperbolic distance diverges at the boundary and is
    rejected.
    """
    kind = metric_kind(metric)
    if kind is MetricKind.RHO:
        raise ValueError("hyperbolic distance grows without bound at the boundary")
    check_kind_supported(kind, domain)
    if dimension(domain) != 2:
        raise ValueError("boundary reach is implemented for planar domains")
    cx, cy = (float(center[0]), float(center[1]))
    d0 = boundary_distance(domain, (cx, cy))  # raises if center is outside
    half = 8.0 * max(d0, 1.0)
    window = (cx - half, cy - half, cx + half, cy + half)
    targets = [nearest_boundary_point(domain, (cx, cy))]
    targets += boundary_sample(domain, boundary_count, window)
    best = math.inf
    for z in targets:
        ux = cx - z[0]
        uy = cy - z[1]
        u = math.hypot(ux, uy)
        if u <= 0.0:
            continue
        ux /= u
        uy /= u
        # The extrapolation assumes the error shrinks tenfold between the two
        # sample offsets.  Most metrics approach their limit linearly in the
        # offset; tanh(rho/4) approaches it like its square root, so there the
        # offsets are chosen a factor 100 apart instead of 10.
        if kind is MetricKind.TH_QUARTER_RHO:
            eps = min(d0, u) * 1e-6
            shrink = 0.01
        else:
            eps = min(d0, u) * 1e-5
            shrink = 0.1
        y1 = (z[0] + eps * ux, z[1] + eps * uy)
        y2 = (z[0] + shrink * eps * ux, z[1] + shrink * eps * uy)
        if not (contains(domain, y1) and contains(domain, y2)):
            continue
        pair = np.array([y1, y2])
        vals = metric_pairs(kind, domain, np.array([[cx, cy], [cx, cy]]), pair)
        limit = (10.0 * vals[1] - vals[0]) / 9.0
        if limit < best:
            best = limit
    if not math.isfinite(best):
        raise ValueError("no admissible boundary approach point was found")
    return best


@dataclass(frozen=True)
class BoundaryTouch:
    """Outcome of a ball-touches-boundary query."""

    touches: bool
    reach: float
    gap: float
    r: float
    cell_diagonal: float

    @property
    def verdict(self) -> str:
        return "touches" if self.touches else "separated"


def touches_boundary(domain: DomainSpec, metric, center, r: float,
                     tol: float = 1e-9, bbox: Box | None = None,
                     resolution=512) -> BoundaryTouch:
    """Decide whether the closed ball of radius ``r`` reaches the boundary.

    The verdict compares the boundary reach of the metric against ``r``; the
    reported ``gap`` is the smallest Euclidean boundary distance over grid
    nodes whose value does not exceed ``r`` (``inf`` when no node qualifies).
    """
    r = float(r)
    if not 0.0 < r < 1.0:
        raise ValueError("ball radius must lie strictly in (0, 1)")
    reach = boundary_reach(domain, metric, center)
    field = grid_field(domain, metric, center, bbox=bbox, resolution=resolution)
    mask = field.values <= r
    if np.any(mask):
        iys, ixs = np.nonzero(mask)
        nodes = np.column_stack((field.xs[ixs], field.ys[iys]))
        gap = float(np.min(boundary_distance_many(domain, nodes)))
    else:
        gap = math.inf
    return BoundaryTouch(touches=bool(reach <= r + tol), reach=float(reach),
                         gap=gap, r=r, cell_diagonal=field.cell_diagonal)


# ---------------------------------------------------------------------------
# starlikeness


@dataclass(frozen=True)
class StarlikeReport:
    """Outcome of a sampled starlikeness check of a metric ball."""

    starlike: bool
    witness: tuple[float, float] | None
    center: tuple[float, float]
    metric: MetricKind
    r: float
    directions: int
    steps: int
    seed: int


def _ray_cap(domain: DomainSpec, center, d0: float) -> float:
    box = bounding_box(domain, pad=0.0)
    if box is None:
        return 32.0 * max(1.0, d0)
    corners = ((box[0], box[1]), (box[0], box[3]), (box[2], box[1]), (box[2], box[3]))
    return max(math.hypot(c[0] - center[0], c[1] - center[1]) for c in corners)


def starlike_check(domain: DomainSpec, metric, center, r: float,
                   n_dirs: int = 1024, seed: int = 0, steps: int = 1024,
                   max_radius: float | None = None) -> StarlikeReport:
    """Probe whether the ball is starlike with respect to its center.

    Rays with jittered angles are marched outward; a ball point that appears
    after a point off the ball on the same ray is a witness that the segment
    from the center leaves the ball.  A clean scan cannot prove starlikeness,
    it only reports that no witness was found at this sampling density.
    """
    kind = metric_kind(metric)
    check_kind_supported(kind, domain)
    if dimension(domain) != 2:
        raise ValueError("the starlike check is implemented for planar domains")
    r = float(r)
    if r <= 0.0 or (kind is not MetricKind.RHO and r >= 1.0):
        raise ValueError("ball radius is outside the admissible range")
    cx, cy = (float(center[0]), float(center[1]))
    d0 = boundary_distance(domain, (cx, cy))  # raises if center is outside
    cap = float(max_radius) if max_radius is not None else _ray_cap(domain, (cx, cy), d0)
    rng = np.random.default_rng(seed)
    jitter = rng.uniform(0.0, 1.0, n_dirs)
    angles = (np.arange(n_dirs) + jitter) * (2.0 * math.pi / n_dirs)
    radii = np.linspace(cap / steps, cap, steps)
    chunk = max(1, (1 << 18) // steps)
    for lo in range(0, n_dirs, chunk):
        ang = angles[lo:lo + chunk]
        m = ang.shape[0]
        dirs = np.column_stack((np.cos(ang), np.sin(ang)))
        pts = (dirs[:, None, :] * radii[None, :, None]).reshape(m * steps, 2)
        pts = pts + np.array([cx, cy])
        inside = contains_many(domain, pts)
        vals = np.full(m * steps, math.inf)
        if np.any(inside):
            sel = pts[inside]
            centers = np.broadcast_to(np.array([cx, cy]), sel.shape)
            vals[inside] = metric_pairs(kind, domain, np.ascontiguousarray(centers), sel)
        in_ball = (vals < r).reshape(m, steps)
        off_ray = ~in_ball
        seen_gap = np.cumsum(off_ray, axis=1) - off_ray.astype(np.int64) > 0
        hits = in_ball & seen_gap
        if np.any(hits):
            flat = int(np.argmax(hits.reshape(-1)))
            witness = tuple(float(v) for v in pts[flat])
            return StarlikeReport(starlike=False, witness=witness,
                                  center=(cx, cy), metric=kind, r=r,
                                  directions=n_dirs, steps=steps, seed=seed)
    return StarlikeReport(starlike=True, witness=None, center=(cx, cy),
                          metric=kind, r=r, directions=n_dirs, steps=steps,
                          seed=seed)


# ---------------------------------------------------------------------------
# corner detection


def _resample(poly: np.ndarray, step: float, closed: bool) -> np.ndarray:
    pts = poly
    if closed and pts.shape[0] > 1 and np.all(pts[0] == pts[-1]):
        pass  # closure point already present
    elif closed:
        pts = np.vstack((pts, pts[:1]))
    deltas = np.diff(pts, axis=0)
    seglen = np.hypot(deltas[:, 0], deltas[:, 1])
    cum = np.concatenate(([0.0], np.cumsum(seglen)))
    total = cum[-1]
    if total <= step:
        return pts
    count = int(total / step)
    targets = np.linspace(0.0, count * step, count + 1)
    xs = np.interp(targets, cum, pts[:, 0])
    ys = np.interp(targets, cum, pts[:, 1])
    return np.column_stack((xs, ys))


def _turning_angles(pts: np.ndarray, closed: bool):
    """Indices and absolute turning angles (degrees) at interior vertices."""
    if closed:
        ring = pts[:-1] if np.all(pts[0] == pts[-1]) else pts
        prev = np.roll(ring, 1, axis=0)
        nxt = np.roll(ring, -1, axis=0)
        a = ring - prev
        b = nxt - ring
        base = ring
    else:
        a = pts[1:-1] - pts[:-2]
        b = pts[2:] - pts[1:-1]
        base = pts[1:-1]
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]
    ang = np.degrees(np.abs(np.arctan2(cross, dot)))
    return base, ang


def corner_points(contour: Contour, grid_pitch: float,
                  angle_threshold: float = 25.0) -> np.ndarray:
    """Sharp turns of a contour, resistant to grid-scale wiggles.

    Each polyline is resampled by arc length at four grid pitches so that
    marching-squares stair-stepping averages out, then vertices whose turning
    angle exceeds ``angle_threshold`` degrees are collected and nearby
    candidates are merged, keeping the sharpest point of each cluster.
    Returns an (n, 2) array.
    """
    step = 4.0 * float(grid_pitch)
    if step <= 0.0:
        raise ValueError("grid pitch must be positive")
    corners = []
    for poly in contour.polylines:
        if poly.shape[0] < 3:
            continue
        closed = bool(np.all(poly[0] == poly[-1]))
        pts = _resample(poly, step, closed)
        if pts.shape[0] < 3:
            continue
        base, ang = _turning_angles(pts, closed)
        flagged = [(tuple(base[i]), float(ang[i]))
                   for i in np.nonzero(ang > angle_threshold)[0]]
        if not flagged:
            continue
        clusters: list[list] = []
        for point, angle in flagged:
            if clusters and math.hypot(point[0] - clusters[-1][-1][0][0],
                                       point[1] - clusters[-1][-1][0][1]) <= 1.5 * step:
                clusters[-1].append((point, angle))
            else:
                clusters.append([(point, angle)])
        if closed and len(clusters) > 1:
            first = clusters[0][0][0]
            last = clusters[-1][-1][0]
            if math.hypot(first[0] - last[0], first[1] - last[1]) <= 1.5 * step:
                clusters[0] = clusters.pop() + clusters[0]
        for cluster in clusters:
            best = max(cluster, key=lambda item: item[1])
            corners.append(best[0])
    if not corners:
        return np.zeros((0, 2))
    return np.array(corners, dtype=np.float64)

"""Scalar numeric kernels shared by every public module.

Written in Cython "pure Python" mode: the same source runs interpreted or
compiled (setup.py cythonizes it with -O3 -ffp-contract=off).  Both backends
produce bit-identical doubles because the arithmetic goes through libm either
way and FMA contraction is disabled.  Check which one is active via BACKEND.

Domains are passed in a packed form (kind, dim, theta, parity, pieces):

  kind    0 half-space {x_n > 0}   1 unit ball   2 sector of angle theta
          3 simple polygon (CCW)   4 boundary-set   5 punctured unit disk
  pieces  float64[m, 5] rows (ptype, a, b, c, d); ptype 0 is the segment
          (a,b)-(c,d), ptype 1 the ray from (a,b) with unit direction (c,d).
  parity  boundary-set only: 0 means an even number of upward crossings is
          inside, 1 means odd.

Metric codes: 0 t, 1 jstar, 2 pointpair, 3 sratio, 4 rho, 5 th(rho/2),
6 th(rho/4), 7 psi(c), 8 upsilon(c), 9 chi(c).
"""

import cython
import numpy as np

from cython.cimports.libc.math import (
    asinh,
    atan2,
    cos,
    fabs,
    log1p,
    pow,
    sin,
    sqrt,
    tanh,
)

BACKEND = "compiled" if cython.compiled else "python"

INF = float("inf")
TWO_PI = 6.283185307179586
PI = 3.141592653589793

KIND_HALFSPACE = 0
KIND_UNITBALL = 1
KIND_SECTOR = 2
KIND_POLYGON = 3
KIND_BOUNDARYSET = 4
KIND_PUNCTURED = 5

M_T = 0
M_JSTAR = 1
M_POINTPAIR = 2
M_SRATIO = 3
M_RHO = 4
M_TH_HALF_RHO = 5
M_TH_QUARTER_RHO = 6
M_PSI = 7
M_UPSILON = 8
M_CHI = 9

# Coarse ring size and bracket tolerance for the unit-circle Heron search.
N_COARSE = 64
GOLDEN_TOL = 1e-12
GR = 0.6180339887498949  # (sqrt(5) - 1) / 2
DPHI = TWO_PI / N_COARSE

# Fixed tilted upward direction for boundary-set crossing parity.  The tilt
# keeps the test ray away from horizontal and vertical boundary pieces.
RAY_TILT = 0.039071168239541166
RAY_WX = sin(RAY_TILT)
RAY_WY = cos(RAY_TILT)


@cython.cfunc
@cython.exceptval(check=False)
def _dmin(a: cython.double, b: cython.double) -> cython.double:
    return a if a < b else b


@cython.cfunc
@cython.exceptval(check=False)
def _dmax(a: cython.double, b: cython.double) -> cython.double:
    return a if a > b else b


@cython.cfunc
@cython.exceptval(check=False)
def _clamp(t: cython.double, lo: cython.double, hi: cython.double) -> cython.double:
    if t < lo:
        return lo
    if t > hi:
        return hi
    return t


@cython.cfunc
@cython.exceptval(check=False)
def _dist_rows(
    X: cython.double[:, :], i: cython.Py_ssize_t, Y: cython.double[:, :], k: cython.Py_ssize_t, dim: cython.int
) -> cython.double:
    acc: cython.double = 0.0
    d: cython.double
    j: cython.int
    for j in range(dim):
        d = X[i, j] - Y[k, j]
        acc += d * d
    return sqrt(acc)


@cython.cfunc
@cython.exceptval(check=False)
def _norm_row(X: cython.double[:, :], i: cython.Py_ssize_t, dim: cython.int) -> cython.double:
    acc: cython.double = 0.0
    j: cython.int
    for j in range(dim):
        acc += X[i, j] * X[i, j]
    return sqrt(acc)


@cython.cfunc
@cython.exceptval(check=False)
def _seg_dist(
    ax: cython.double, ay: cython.double, bx: cython.double, by: cython.double, px: cython.double, py: cython.double
) -> cython.double:
    vx: cython.double = bx - ax
    vy: cython.double = by - ay
    l2: cython.double = vx * vx + vy * vy
    wx: cython.double = px - ax
    wy: cython.double = py - ay
    t: cython.double
    dx: cython.double
    dy: cython.double
    if l2 <= 0.0:
        return sqrt(wx * wx + wy * wy)
    t = _clamp((wx * vx + wy * vy) / l2, 0.0, 1.0)
    dx = wx - t * vx
    dy = wy - t * vy
    return sqrt(dx * dx + dy * dy)


@cython.cfunc
@cython.exceptval(check=False)
def _ray_dist(
    ox: cython.double, oy: cython.double, ux: cython.double, uy: cython.double, px: cython.double, py: cython.double
) -> cython.double:
    wx: cython.double = px - ox
    wy: cython.double = py - oy
    t: cython.double = wx * ux + wy * uy
    dx: cython.double
    dy: cython.double
    if t <= 0.0:
        return sqrt(wx * wx + wy * wy)
    dx = wx - t * ux
    dy = wy - t * uy
    return sqrt(dx * dx + dy * dy)


@cython.cfunc
@cython.exceptval(check=False)
def _two_leg(
    zx: cython.double, zy: cython.double, px: cython.double, py: cython.double, qx: cython.double, qy: cython.double
) -> cython.double:
    ax: cython.double = px - zx
    ay: cython.double = py - zy
    bx: cython.double = qx - zx
    by: cython.double = qy - zy
    return sqrt(ax * ax + ay * ay) + sqrt(bx * bx + by * by)


@cython.cfunc
@cython.exceptval(check=False)
def _seg_heron(
    ax: cython.double,
    ay: cython.double,
    bx: cython.double,
    by: cython.double,
    px: cython.double,
    py: cython.double,
    qx: cython.double,
    qy: cython.double,
) -> cython.double:
    """min over z in segment [a,b] of |p-z| + |z-q|.

    Exact by convexity: the unconstrained line minimum comes from reflecting
    p across the line (or from the direct crossing when p, q straddle it);
    clamping its parameter to the segment plus the two endpoint values covers
    every case, including collinear degeneracies.
    """
    vx: cython.double = bx - ax
    vy: cython.double = by - ay
    ll: cython.double = sqrt(vx * vx + vy * vy)
    best: cython.double
    ux: cython.double
    uy: cython.double
    nx: cython.double
    ny: cython.double
    sp: cython.double
    sq: cython.double
    tp: cython.double
    tq: cython.double
    ts: cython.double
    den: cython.double
    if ll <= 0.0:
        return _two_leg(ax, ay, px, py, qx, qy)
    ux = vx / ll
    uy = vy / ll
    nx = -uy
    ny = ux
    sp = (px - ax) * nx + (py - ay) * ny
    sq = (qx - ax) * nx + (qy - ay) * ny
    tp = (px - ax) * ux + (py - ay) * uy
    tq = (qx - ax) * ux + (qy - ay) * uy
    best = _dmin(_two_leg(ax, ay, px, py, qx, qy), _two_leg(bx, by, px, py, qx, qy))
    if sp * sq < 0.0:
        ts = tp + (tq - tp) * (sp / (sp - sq))
        ts = _clamp(ts, 0.0, ll)
        best = _dmin(best, _two_leg(ax + ts * ux, ay + ts * uy, px, py, qx, qy))
    else:
        den = sp + sq
        if fabs(den) > 0.0:
            ts = tp + (tq - tp) * (sp / den)
            ts = _clamp(ts, 0.0, ll)
            best = _dmin(best, _two_leg(ax + ts * ux, ay + ts * uy, px, py, qx, qy))
        else:
            # p and q both on the carrier line: restrict to the parameter span.
            ts = _clamp(tp, 0.0, ll)
            best = _dmin(best, _two_leg(ax + ts * ux, ay + ts * uy, px, py, qx, qy))
            ts = _clamp(tq, 0.0, ll)
            best = _dmin(best, _two_leg(ax + ts * ux, ay + ts * uy, px, py, qx, qy))
    return best


@cython.cfunc
@cython.exceptval(check=False)
def _ray_heron(
    ox: cython.double,
    oy: cython.double,
    ux: cython.double,
    uy: cython.double,
    px: cython.double,
    py: cython.double,
    qx: cython.double,
    qy: cython.double,
) -> cython.double:
    """min over z on the ray o + t*u (t >= 0) of |p-z| + |z-q|."""
    nx: cython.double = -uy
    ny: cython.double = ux
    sp: cython.double = (px - ox) * nx + (py - oy) * ny
    sq: cython.double = (qx - ox) * nx + (qy - oy) * ny
    tp: cython.double = (px - ox) * ux + (py - oy) * uy
    tq: cython.double = (qx - ox) * ux + (qy - oy) * uy
    best: cython.double = _two_leg(ox, oy, px, py, qx, qy)
    ts: cython.double
    den: cython.double
    if sp * sq < 0.0:
        ts = tp + (tq - tp) * (sp / (sp - sq))
        ts = _dmax(ts, 0.0)
        best = _dmin(best, _two_leg(ox + ts * ux, oy + ts * uy, px, py, qx, qy))
    else:
        den = sp + sq
        if fabs(den) > 0.0:
            ts = tp + (tq - tp) * (sp / den)
            ts = _dmax(ts, 0.0)
            best = _dmin(best, _two_leg(ox + ts * ux, oy + ts * uy, px, py, qx, qy))
        else:
            ts = _dmax(tp, 0.0)
            best = _dmin(best, _two_leg(ox + ts * ux, oy + ts * uy, px, py, qx, qy))
            ts = _dmax(tq, 0.0)
            best = _dmin(best, _two_leg(ox + ts * ux, oy + ts * uy, px, py, qx, qy))
    return best


@cython.cfunc
@cython.exceptval(check=False)
def _circ_two_leg(
    phi: cython.double, px: cython.double, py: cython.double, qx: cython.double, qy: cython.double
) -> cython.double:
    return _two_leg(cos(phi), sin(phi), px, py, qx, qy)


@cython.cfunc
@cython.exceptval(check=False)
def _golden_circle(
    a: cython.double, b: cython.double, px: cython.double, py: cython.double, qx: cython.double, qy: cython.double
) -> cython.double:
    x1: cython.double = b - GR * (b - a)
    x2: cython.double = a + GR * (b - a)
    f1: cython.double = _circ_two_leg(x1, px, py, qx, qy)
    f2: cython.double = _circ_two_leg(x2, px, py, qx, qy)
    fm: cython.double
    it: cython.int = 0
    while (b - a) > GOLDEN_TOL and it < 90:
        if f1 <= f2:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - GR * (b - a)
            f1 = _circ_two_leg(x1, px, py, qx, qy)
        else:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + GR * (b - a)
            f2 = _circ_two_leg(x2, px, py, qx, qy)
        it += 1
    fm = _circ_two_leg(0.5 * (a + b), px, py, qx, qy)
    if f1 < fm:
        fm = f1
    if f2 < fm:
        fm = f2
    return fm


@cython.cfunc
@cython.exceptval(check=False)
def _ball_heron_plane(
    px: cython.double, py: cython.double, qx: cython.double, qy: cython.double, scratch: cython.double[:]
) -> cython.double:
    """min over z on the unit circle of |p-z| + |z-q| for in-plane p, q.

    Coarse 64-point ring scan, then a golden-section refinement around every
    circular local minimum.  The bracket tolerance 1e-12 puts the value error
    near machine precision (quadratic minimum).
    """
    i: cython.int
    ip: cython.int
    iq: cython.int
    phi: cython.double
    best: cython.double = INF
    r: cython.double
    for i in range(N_COARSE):
        scratch[i] = _circ_two_leg(DPHI * i, px, py, qx, qy)
    for i in range(N_COARSE):
        ip = (i + N_COARSE - 1) % N_COARSE
        iq = (i + 1) % N_COARSE
        if scratch[i] <= scratch[ip] and scratch[i] <= scratch[iq]:
            phi = DPHI * i
            r = _golden_circle(phi - DPHI, phi + DPHI, px, py, qx, qy)
            if r < best:
                best = r
    return best


@cython.cfunc
@cython.exceptval(check=False)
def _pnpoly(pieces: cython.double[:, :], px: cython.double, py: cython.double) -> cython.int:
    """Even-odd crossing test against polygon edges stored as segment rows."""
    inside: cython.int = 0
    m: cython.Py_ssize_t = pieces.shape[0]
    r: cython.Py_ssize_t
    x1: cython.double
    y1: cython.double
    x2: cython.double
    y2: cython.double
    for r in range(m):
        x1 = pieces[r, 1]
        y1 = pieces[r, 2]
        x2 = pieces[r, 3]
        y2 = pieces[r, 4]
        if (y1 > py) != (y2 > py):
            if px < (x2 - x1) * (py - y1) / (y2 - y1) + x1:
                inside = 1 - inside
    return inside


@cython.cfunc
@cython.exceptval(check=False)
def _crossings_up(pieces: cython.double[:, :], px: cython.double, py: cython.double) -> cython.int:
    """Crossings of the tilted upward test ray with all boundary pieces.

    Segments are half-open in their parameter (s in [0,1)) and rays closed at
    their origin, so a shared junction point is counted exactly once.
    """
    count: cython.int = 0
    m: cython.Py_ssize_t = pieces.shape[0]
    r: cython.Py_ssize_t
    ax: cython.double
    ay: cython.double
    dx: cython.double
    dy: cython.double
    det: cython.double
    t: cython.double
    s: cython.double
    rx: cython.double
    ry: cython.double
    for r in range(m):
        ax = pieces[r, 1]
        ay = pieces[r, 2]
        if pieces[r, 0] == 0.0:
            dx = pieces[r, 3] - ax
            dy = pieces[r, 4] - ay
        else:
            dx = pieces[r, 3]
            dy = pieces[r, 4]
        det = RAY_WX * dy - RAY_WY * dx
        if fabs(det) < 1e-300:
            continue
        rx = ax - px
        ry = ay - py
        t = (rx * dy - ry * dx) / det
        s = (rx * RAY_WY - ry * RAY_WX) / det
        if t <= 0.0:
            continue
        if pieces[r, 0] == 0.0:
            if 0.0 <= s < 1.0:
                count += 1
        else:
            if s >= 0.0:
                count += 1
    return count


@cython.cfunc
@cython.exceptval(check=False)
def _arg_pos(x: cython.double, y: cython.double) -> cython.double:
    a: cython.double = atan2(y, x)
    if a < 0.0:
        a += TWO_PI
    return a


@cython.cfunc
@cython.exceptval(check=False)
def _bdist(
    kind: cython.int,
    dim: cython.int,
    theta: cython.double,
    pieces: cython.double[:, :],
    X: cython.double[:, :],
    i: cython.Py_ssize_t,
) -> cython.double:
    px: cython.double
    py: cython.double
    d: cython.double
    dr: cython.double
    r: cython.Py_ssize_t
    m: cython.Py_ssize_t
    nrm: cython.double
    if kind == KIND_HALFSPACE:
        return X[i, dim - 1]
    if kind == KIND_UNITBALL:
        return 1.0 - _norm_row(X, i, dim)
    px = X[i, 0]
    py = X[i, 1]
    if kind == KIND_SECTOR:
        d = _ray_dist(0.0, 0.0, 1.0, 0.0, px, py)
        dr = _ray_dist(0.0, 0.0, cos(theta), sin(theta), px, py)
        return _dmin(d, dr)
    if kind == KIND_PUNCTURED:
        nrm = sqrt(px * px + py * py)
        return _dmin(nrm, 1.0 - nrm)
    d = INF
    m = pieces.shape[0]
    for r in range(m):
        if pieces[r, 0] == 0.0:
            dr = _seg_dist(pieces[r, 1], pieces[r, 2], pieces[r, 3], pieces[r, 4], px, py)
        else:
            dr = _ray_dist(pieces[r, 1], pieces[r, 2], pieces[r, 3], pieces[r, 4], px, py)
        if dr < d:
            d = dr
    return d


@cython.cfunc
@cython.exceptval(check=False)
def _contains(
    kind: cython.int,
    dim: cython.int,
    theta: cython.double,
    parity: cython.int,
    pieces: cython.double[:, :],
    X: cython.double[:, :],
    i: cython.Py_ssize_t,
) -> cython.int:
    a: cython.double
    n2: cython.double
    j: cython.int
    even: cython.int
    if kind == KIND_HALFSPACE:
        return 1 if X[i, dim - 1] > 0.0 else 0
    if kind == KIND_UNITBALL:
        n2 = 0.0
        for j in range(dim):
            n2 += X[i, j] * X[i, j]
        return 1 if n2 < 1.0 else 0
    if kind == KIND_SECTOR:
        n2 = X[i, 0] * X[i, 0] + X[i, 1] * X[i, 1]
        if n2 <= 0.0:
            return 0
        a = _arg_pos(X[i, 0], X[i, 1])
        return 1 if (a > 0.0 and a < theta) else 0
    if kind == KIND_PUNCTURED:
        n2 = X[i, 0] * X[i, 0] + X[i, 1] * X[i, 1]
        return 1 if (n2 > 0.0 and n2 < 1.0) else 0
    if kind == KIND_POLYGON:
        if _pnpoly(pieces, X[i, 0], X[i, 1]) == 0:
            return 0
        return 1 if _bdist(kind, dim, theta, pieces, X, i) > 0.0 else 0
    even = 1 if _crossings_up(pieces, X[i, 0], X[i, 1]) % 2 == 0 else 0
    if (even == 1) != (parity == 0):
        return 0
    return 1 if _bdist(kind, dim, theta, pieces, X, i) > 0.0 else 0


@cython.cfunc
@cython.exceptval(check=False)
def _row_lex_le(
    X: cython.double[:, :], i: cython.Py_ssize_t, Y: cython.double[:, :], k: cython.Py_ssize_t, dim: cython.int
) -> cython.int:
    j: cython.int
    for j in range(dim):
        if X[i, j] < Y[k, j]:
            return 1
        if X[i, j] > Y[k, j]:
            return 0
    return 1


@cython.cfunc
@cython.exceptval(check=False)
def _heron(
    kind: cython.int,
    dim: cython.int,
    theta: cython.double,
    pieces: cython.double[:, :],
    X: cython.double[:, :],
    xi: cython.Py_ssize_t,
    Y: cython.double[:, :],
    yi: cython.Py_ssize_t,
    scratch: cython.double[:],
) -> cython.double:
    """inf over boundary z of |x-z| + |z-y|, floored by its exact lower bounds.

    The pair is put in lexicographic order first so the result is bitwise
    symmetric in (x, y).
    """
    A: cython.double[:, :]
    B: cython.double[:, :]
    ai: cython.Py_ssize_t
    bi: cython.Py_ssize_t
    if _row_lex_le(X, xi, Y, yi, dim) == 1:
        A = X
        ai = xi
        B = Y
        bi = yi
    else:
        A = Y
        ai = yi
        B = X
        bi = xi
    acc: cython.double = 0.0
    d: cython.double
    j: cython.int
    h: cython.double
    hr: cython.double
    u: cython.double
    floor2: cython.double
    r: cython.Py_ssize_t
    m: cython.Py_ssize_t
    if kind == KIND_HALFSPACE:
        for j in range(dim - 1):
            d = A[ai, j] - B[bi, j]
            acc += d * d
        d = A[ai, dim - 1] + B[bi, dim - 1]
        h = sqrt(acc + d * d)
    elif kind == KIND_UNITBALL:
        h = _ball_heron_plane(A[ai, 0], A[ai, 1], B[bi, 0], B[bi, 1], scratch)
    elif kind == KIND_SECTOR:
        h = _ray_heron(0.0, 0.0, 1.0, 0.0, A[ai, 0], A[ai, 1], B[bi, 0], B[bi, 1])
        hr = _ray_heron(0.0, 0.0, cos(theta), sin(theta), A[ai, 0], A[ai, 1], B[bi, 0], B[bi, 1])
        h = _dmin(h, hr)
    elif kind == KIND_PUNCTURED:
        h = _ball_heron_plane(A[ai, 0], A[ai, 1], B[bi, 0], B[bi, 1], scratch)
        hr = _norm_row(A, ai, 2) + _norm_row(B, bi, 2)
        h = _dmin(h, hr)
    else:
        h = INF
        m = pieces.shape[0]
        for r in range(m):
            if pieces[r, 0] == 0.0:
                hr = _seg_heron(
                    pieces[r, 1], pieces[r, 2], pieces[r, 3], pieces[r, 4],
                    A[ai, 0], A[ai, 1], B[bi, 0], B[bi, 1],
                )
            else:
                hr = _ray_heron(
                    pieces[r, 1], pieces[r, 2], pieces[r, 3], pieces[r, 4],
                    A[ai, 0], A[ai, 1], B[bi, 0], B[bi, 1],
                )
            if hr < h:
                h = hr
    u = _dist_rows(A, ai, B, bi, dim)
    floor2 = _bdist(kind, dim, theta, pieces, A, ai) + _bdist(kind, dim, theta, pieces, B, bi)
    h = _dmax(h, u)
    return _dmax(h, floor2)


@cython.cfunc
@cython.exceptval(check=False)
def _rho(
    kind: cython.int,
    dim: cython.int,
    theta: cython.double,
    pieces: cython.double[:, :],
    X: cython.double[:, :],
    xi: cython.Py_ssize_t,
    Y: cython.double[:, :],
    yi: cython.Py_ssize_t,
) -> cython.double:
    u: cython.double
    e: cython.double
    prod: cython.double
    q: cython.double
    nx2: cython.double
    ny2: cython.double
    j: cython.int
    ex: cython.double
    rx: cython.double
    axp: cython.double
    ry: cython.double
    ayp: cython.double
    gxx: cython.double
    gxy: cython.double
    gyx: cython.double
    gyy: cython.double
    dxx: cython.double
    dyy: cython.double
    if kind == KIND_HALFSPACE:
        u = _dist_rows(X, xi, Y, yi, dim)
        prod = X[xi, dim - 1] * Y[yi, dim - 1]
        if prod <= 0.0:
            return INF
        e = (u * u) / (2.0 * prod)
        if e < 0.0:
            e = 0.0
        # acosh(1 + e) written as 2 asinh(sqrt(e / 2)): identical in exact
        # arithmetic, but keeps full precision when e is tiny.
        return 2.0 * asinh(sqrt(0.5 * e))
    if kind == KIND_UNITBALL:
        u = _dist_rows(X, xi, Y, yi, dim)
        nx2 = 0.0
        ny2 = 0.0
        for j in range(dim):
            nx2 += X[xi, j] * X[xi, j]
            ny2 += Y[yi, j] * Y[yi, j]
        prod = (1.0 - nx2) * (1.0 - ny2)
        if prod <= 0.0:
            return INF
        q = u / sqrt(prod)
        return 2.0 * asinh(q)
    # Sector: hyperbolic distance of the power-map images in the half-plane.
    ex = PI / theta
    rx = pow(sqrt(X[xi, 0] * X[xi, 0] + X[xi, 1] * X[xi, 1]), ex)
    axp = _arg_pos(X[xi, 0], X[xi, 1]) * ex
    ry = pow(sqrt(Y[yi, 0] * Y[yi, 0] + Y[yi, 1] * Y[yi, 1]), ex)
    ayp = _arg_pos(Y[yi, 0], Y[yi, 1]) * ex
    gxx = rx * cos(axp)
    gxy = rx * sin(axp)
    gyx = ry * cos(ayp)
    gyy = ry * sin(ayp)
    dxx = gxx - gyx
    dyy = gxy - gyy
    prod = gxy * gyy
    if prod <= 0.0:
        return INF
    e = (dxx * dxx + dyy * dyy) / (2.0 * prod)
    if e < 0.0:
        e = 0.0
    return 2.0 * asinh(sqrt(0.5 * e))


@cython.cfunc
@cython.exceptval(check=False)
def _metric(
    code: cython.int,
    cpar: cython.double,
    kind: cython.int,
    dim: cython.int,
    theta: cython.double,
    pieces: cython.double[:, :],
    X: cython.double[:, :],
    xi: cython.Py_ssize_t,
    Y: cython.double[:, :],
    yi: cython.Py_ssize_t,
    scratch: cython.double[:],
    dx_pre: cython.double,
) -> cython.double:
    """Evaluate one metric for the row pair.  dx_pre < 0 means "compute d(x)"."""
    u: cython.double
    dx: cython.double
    dy: cython.double
    den: cython.double
    h: cython.double
    nx: cython.double
    ny: cython.double
    prod: cython.double
    ex: cython.double
    rx: cython.double
    axp: cython.double
    ry: cython.double
    ayp: cython.double
    gxx: cython.double
    gxy: cython.double
    gyx: cython.double
    gyy: cython.double
    du2: cython.double
    dd2: cython.double
    d0: cython.double
    d1: cython.double
    j: cython.int
    if code == M_SRATIO:
        u = _dist_rows(X, xi, Y, yi, dim)
        if u <= 0.0:
            return 0.0
        h = _heron(kind, dim, theta, pieces, X, xi, Y, yi, scratch)
        return u / h
    if code == M_RHO:
        return _rho(kind, dim, theta, pieces, X, xi, Y, yi)
    if code == M_TH_QUARTER_RHO:
        return tanh(0.25 * _rho(kind, dim, theta, pieces, X, xi, Y, yi))
    if code == M_TH_HALF_RHO:
        u = _dist_rows(X, xi, Y, yi, dim)
        if kind == KIND_HALFSPACE:
            if dim == 2:
                d0 = X[xi, 0] - Y[yi, 0]
                d1 = X[xi, 1] + Y[yi, 1]
                den = sqrt(d0 * d0 + d1 * d1)
            else:
                den = sqrt(u * u + 4.0 * (X[xi, dim - 1] * Y[yi, dim - 1]))
            if den <= 0.0:
                return 0.0
            return u / den
        if kind == KIND_UNITBALL:
            nx = 0.0
            ny = 0.0
            for j in range(dim):
                nx += X[xi, j] * X[xi, j]
                ny += Y[yi, j] * Y[yi, j]
            prod = (1.0 - nx) * (1.0 - ny)
            if prod < 0.0:
                prod = 0.0
            den = sqrt(u * u + prod)
            if den <= 0.0:
                return 0.0
            return u / den
        # Sector: closed half-plane form applied to the power-map images.
        ex = PI / theta
        rx = pow(sqrt(X[xi, 0] * X[xi, 0] + X[xi, 1] * X[xi, 1]), ex)
        axp = _arg_pos(X[xi, 0], X[xi, 1]) * ex
        ry = pow(sqrt(Y[yi, 0] * Y[yi, 0] + Y[yi, 1] * Y[yi, 1]), ex)
        ayp = _arg_pos(Y[yi, 0], Y[yi, 1]) * ex
        gxx = rx * cos(axp)
        gxy = rx * sin(axp)
        gyx = ry * cos(ayp)
        gyy = ry * sin(ayp)
        d0 = gxx - gyx
        du2 = d0 * d0 + (gxy - gyy) * (gxy - gyy)
        dd2 = d0 * d0 + (gxy + gyy) * (gxy + gyy)
        if dd2 <= 0.0:
            return 0.0
        return sqrt(du2) / sqrt(dd2)
    if code == M_PSI:
        u = _dist_rows(X, xi, Y, yi, dim)
        nx = _norm_row(X, xi, dim)
        ny = _norm_row(Y, yi, dim)
        den = u + cpar * (nx * ny)
        if den <= 0.0:
            return 0.0
        return u / den
    if code == M_CHI:
        u = _dist_rows(X, xi, Y, yi, dim)
        nx = _norm_row(X, xi, dim)
        ny = _norm_row(Y, yi, dim)
        den = u + cpar * sqrt((2.0 - nx) * (2.0 - ny))
        return u / den
    # Remaining codes need boundary distances.
    u = _dist_rows(X, xi, Y, yi, dim)
    if dx_pre >= 0.0:
        dx = dx_pre
    else:
        dx = _bdist(kind, dim, theta, pieces, X, xi)
    dy = _bdist(kind, dim, theta, pieces, Y, yi)
    if code == M_T:
        den = u + (dx + dy)
        if den <= 0.0:
            return 0.0
        return u / den
    if code == M_JSTAR:
        den = u + 2.0 * _dmin(dx, dy)
        if den <= 0.0:
            return 0.0
        return u / den
    if code == M_POINTPAIR:
        den = sqrt(u * u + 4.0 * (dx * dy))
        if den <= 0.0:
            return 0.0
        return u / den
    # M_UPSILON
    den = u + cpar * sqrt((1.0 + dx) * (1.0 + dy))
    return u / den


def contains_many(kind: cython.int, dim: cython.int, theta: cython.double, parity: cython.int,
                  pieces: cython.double[:, :], X: cython.double[:, :]):
    out = np.empty(X.shape[0], dtype=np.uint8)
    ov: cython.uchar[:] = out
    i: cython.Py_ssize_t
    for i in range(X.shape[0]):
        ov[i] = _contains(kind, dim, theta, parity, pieces, X, i)
    return out


def bdist_many(kind: cython.int, dim: cython.int, theta: cython.double, parity: cython.int,
               pieces: cython.double[:, :], X: cython.double[:, :]):
    out = np.empty(X.shape[0], dtype=np.float64)
    ov: cython.double[:] = out
    i: cython.Py_ssize_t
    for i in range(X.shape[0]):
        ov[i] = _bdist(kind, dim, theta, pieces, X, i)
    return out


def heron_many(kind: cython.int, dim: cython.int, theta: cython.double, parity: cython.int,
               pieces: cython.double[:, :], X: cython.double[:, :], Y: cython.double[:, :]):
    out = np.empty(X.shape[0], dtype=np.float64)
    scratch = np.empty(N_COARSE, dtype=np.float64)
    ov: cython.double[:] = out
    sv: cython.double[:] = scratch
    i: cython.Py_ssize_t
    for i in range(X.shape[0]):
        ov[i] = _heron(kind, dim, theta, pieces, X, i, Y, i, sv)
    return out


def metric_many(code: cython.int, cpar: cython.double,
                kind: cython.int, dim: cython.int, theta: cython.double, parity: cython.int,
                pieces: cython.double[:, :], X: cython.double[:, :], Y: cython.double[:, :]):
    out = np.empty(X.shape[0], dtype=np.float64)
    scratch = np.empty(N_COARSE, dtype=np.float64)
    ov: cython.double[:] = out
    sv: cython.double[:] = scratch
    i: cython.Py_ssize_t
    for i in range(X.shape[0]):
        ov[i] = _metric(code, cpar, kind, dim, theta, pieces, X, i, Y, i, sv, -1.0)
    return out


def field_eval(code: cython.int, cpar: cython.double,
               kind: cython.int, dim: cython.int, theta: cython.double, parity: cython.int,
               pieces: cython.double[:, :], cx: cython.double, cy: cython.double,
               xs: cython.double[:], ys: cython.double[:]):
    """Metric-to-center values on a grid; +inf marks nodes outside the domain."""
    nx: cython.Py_ssize_t = xs.shape[0]
    ny: cython.Py_ssize_t = ys.shape[0]
    out = np.empty((ny, nx), dtype=np.float64)
    ov: cython.double[:, :] = out
    scratch = np.empty(N_COARSE, dtype=np.float64)
    sv: cython.double[:] = scratch
    cbuf = np.empty((1, 2), dtype=np.float64)
    cb: cython.double[:, :] = cbuf
    nbuf = np.empty((1, 2), dtype=np.float64)
    nb: cython.double[:, :] = nbuf
    ix: cython.Py_ssize_t
    iy: cython.Py_ssize_t
    dc: cython.double
    cb[0, 0] = cx
    cb[0, 1] = cy
    dc = _bdist(kind, 2, theta, pieces, cb, 0)
    for iy in range(ny):
        for ix in range(nx):
            nb[0, 0] = xs[ix]
            nb[0, 1] = ys[iy]
            if _contains(kind, 2, theta, parity, pieces, nb, 0) == 1:
                ov[iy, ix] = _metric(code, cpar, kind, 2, theta, pieces, cb, 0, nb, 0, sv, dc)
            else:
                ov[iy, ix] = INF
    return out


def ball_heron_plane(px: cython.double, py: cython.double, qx: cython.double, qy: cython.double) -> cython.double:
    """Unit-circle Heron minimum for points given in planar coordinates."""
    scratch = np.empty(N_COARSE, dtype=np.float64)
    sv: cython.double[:] = scratch
    return _ball_heron_plane(px, py, qx, qy, sv)

"""Compiled and interpreted kernels must agree bit for bit.

The numeric core is one source file run either as a compiled extension or as
plain Python.  Every public kernel is exercised on the same inputs through
both routes and compared with exact equality, so a compiler flag or math
reordering regression shows up as a hard failure, not a tolerance drift.
"""

import importlib.util
import math
import pathlib

import numpy as np
import pytest

from intrinsic_metrics import _kernels as K_active
from intrinsic_metrics import domains as D

SRC = pathlib.Path(D.__file__).with_name("_kernels.py")


def _load_interpreted():
    spec = importlib.util.spec_from_file_location("ik_kernels_interpreted", SRC)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


K_pure = _load_interpreted()

pytestmark = pytest.mark.skipif(
    K_active.BACKEND != "compiled",
    reason="compiled backend unavailable; nothing to compare against")


def test_backend_labels():
    assert K_active.BACKEND == "compiled"
    assert K_pure.BACKEND == "python"


def _domain_layouts():
    for dom in (D.HalfSpace(), D.UnitBall(), D.Sector(math.pi / 3.0),
                D.Sector(4.5), D.pentagram(), D.PuncturedDisk(),
                D.half_plane_with_strip()):
        yield dom, D._pack(dom)


def test_contains_and_bdist_bitwise():
    rng = np.random.default_rng(12)
    for dom, (kind, dim, theta, parity, pieces) in _domain_layouts():
        pts = D.sample_points(dom, 300, rng)
        near = pts * 1.001  # push a few outside to hit both branches
        for arr in (pts, near):
            ca = K_active.contains_many(kind, dim, theta, parity, pieces, arr)
            cp = K_pure.contains_many(kind, dim, theta, parity, pieces, arr)
            assert np.array_equal(ca, cp)
            inside = np.ascontiguousarray(arr[ca.astype(bool)])
            if inside.shape[0]:
                ba = K_active.bdist_many(kind, dim, theta, parity, pieces, inside)
                bp = K_pure.bdist_many(kind, dim, theta, parity, pieces, inside)
                assert np.array_equal(ba, bp)


def test_heron_bitwise():
    # The unit-ball case needs a wide sample: the circle search hits the
    # sin/cos pair whose compiled form once diverged (sincos fusion) on
    # roughly one pair in five hundred.
    rng = np.random.default_rng(13)
    for dom, (kind, dim, theta, parity, pieces) in _domain_layouts():
        if dim != 2:
            continue
        pts = D.sample_points(dom, 2400, rng)
        X = np.ascontiguousarray(pts[:1200])
        Y = np.ascontiguousarray(pts[1200:])
        ha = K_active.heron_many(kind, dim, theta, parity, pieces, X, Y)
        hp = K_pure.heron_many(kind, dim, theta, parity, pieces, X, Y)
        assert np.array_equal(ha, hp)


def test_metric_many_bitwise_all_codes():
    rng = np.random.default_rng(14)
    hyper = {K_active.KIND_HALFSPACE, K_active.KIND_UNITBALL, K_active.KIND_SECTOR}
    codes = [K_active.M_T, K_active.M_JSTAR, K_active.M_POINTPAIR,
             K_active.M_SRATIO, K_active.M_RHO, K_active.M_TH_HALF_RHO,
             K_active.M_TH_QUARTER_RHO]
    for dom, (kind, dim, theta, parity, pieces) in _domain_layouts():
        pts = D.sample_points(dom, 200, rng)
        X = np.ascontiguousarray(pts[:100])
        Y = np.ascontiguousarray(pts[100:])
        for code in codes:
            if code in (K_active.M_RHO, K_active.M_TH_HALF_RHO,
                        K_active.M_TH_QUARTER_RHO) and kind not in hyper:
                continue
            va = K_active.metric_many(code, 0.0, kind, dim, theta, parity, pieces, X, Y)
            vp = K_pure.metric_many(code, 0.0, kind, dim, theta, parity, pieces, X, Y)
            assert np.array_equal(va, vp), (dom, code)


def test_coefficient_metrics_bitwise():
    rng = np.random.default_rng(15)
    pts = D.sample_points(D.UnitBall(), 200, rng)
    X = np.ascontiguousarray(pts[:100])
    Y = np.ascontiguousarray(pts[100:])
    empty = D._EMPTY_PIECES
    for code, c in ((K_active.M_PSI, 1.0), (K_active.M_PSI, 0.5),
                    (K_active.M_UPSILON, 1.0), (K_active.M_UPSILON, math.sqrt(2.0)),
                    (K_active.M_CHI, 1.0), (K_active.M_CHI, 0.25)):
        va = K_active.metric_many(code, c, K_active.KIND_UNITBALL, 2, 0.0, 0, empty, X, Y)
        vp = K_pure.metric_many(code, c, K_pure.KIND_UNITBALL, 2, 0.0, 0, empty, X, Y)
        assert np.array_equal(va, vp)


def test_field_eval_bitwise():
    for dom, (kind, dim, theta, parity, pieces) in _domain_layouts():
        if dim != 2:
            continue
        if kind == K_active.KIND_HALFSPACE:
            box, center = (-2.0, 0.0, 2.0, 2.0), (0.0, 1.0)
        elif kind == K_active.KIND_SECTOR:
            box, center = (-2.0, -2.0, 2.0, 2.0), (math.cos(theta / 2), math.sin(theta / 2))
        elif kind == K_active.KIND_BOUNDARYSET:
            box, center = (-3.0, -3.0, 3.0, 3.0), (0.0, -2.0)
        else:
            box, center = (-1.1, -1.1, 1.1, 1.1), (0.3, 0.0)
        xs = np.linspace(box[0], box[2], 41)
        ys = np.linspace(box[1], box[3], 37)
        fa = K_active.field_eval(K_active.M_T, 0.0, kind, dim, theta, parity,
                                 pieces, center[0], center[1], xs, ys)
        fp = K_pure.field_eval(K_pure.M_T, 0.0, kind, dim, theta, parity,
                               pieces, center[0], center[1], xs, ys)
        assert np.array_equal(fa, fp)


def test_ball_heron_plane_bitwise():
    rng = np.random.default_rng(16)
    for _ in range(50):
        px, py, qx, qy = rng.uniform(-0.7, 0.7, 4)
        a = K_active.ball_heron_plane(px, py, qx, qy)
        b = K_pure.ball_heron_plane(px, py, qx, qy)
        assert a == b

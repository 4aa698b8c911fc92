"""Grid fields, contour extraction, rendering and ball geometry probes."""

import json
import math

import numpy as np
import pytest

from intrinsic_metrics import (
    Contour,
    HalfSpace,
    MetricKind,
    OutsideDomainError,
    PuncturedDisk,
    ScalarField,
    UnitBall,
    boundary_reach,
    contours_to_json,
    corner_points,
    extract_contours,
    field_to_csv,
    grid_field,
    pentagram,
    preset,
    render_svg,
    starlike_check,
    touches_boundary,
)

HSTRIP_T_WITNESS = 3.0 / (3.0 + math.sqrt(2.0))


def _ball_t_field(resolution=64, bbox=(-1.1, -1.1, 1.1, 1.1)):
    return grid_field(UnitBall(2), "t", (0.0, 0.0), bbox=bbox,
                      resolution=resolution)


def _synthetic_field(values, xs=None, ys=None):
    values = np.asarray(values, dtype=np.float64)
    ny, nx = values.shape
    xs = np.arange(nx, dtype=np.float64) if xs is None else np.asarray(xs, float)
    ys = np.arange(ny, dtype=np.float64) if ys is None else np.asarray(ys, float)
    return ScalarField(domain=UnitBall(2), metric=MetricKind.T,
                       center=(0.0, 0.0),
                       bbox=(float(xs[0]), float(ys[0]), float(xs[-1]), float(ys[-1])),
                       xs=xs, ys=ys, values=values)


# ---------------------------------------------------------------------------
# grid fields


def test_disk_center_field_is_half_the_radius():
    # From the disk center, t(0, z) = |z| / (|z| + 1 + (1 - |z|)) = |z| / 2.
    field = _ball_t_field(resolution=41)
    X, Y = np.meshgrid(field.xs, field.ys)
    radius = np.hypot(X, Y)
    inside = radius < 1.0
    assert np.max(np.abs(field.values[inside] - radius[inside] / 2.0)) < 1e-12
    assert np.all(np.isinf(field.values[~inside]))


def test_grid_field_shapes_and_cells():
    field = grid_field(UnitBall(2), "t", (0.0, 0.0), bbox=(-1.0, -0.5, 1.0, 0.5),
                       resolution=(21, 11))
    assert field.resolution == (21, 11)
    assert field.values.shape == (11, 21)
    assert field.cell == pytest.approx((0.1, 0.1))
    assert field.cell_diagonal == pytest.approx(math.hypot(0.1, 0.1))


def test_grid_field_validation():
    with pytest.raises(OutsideDomainError):
        grid_field(UnitBall(2), "t", (2.0, 0.0))
    with pytest.raises(ValueError):
        grid_field(HalfSpace(2), "t", (0.0, 1.0))  # unbounded, no bbox
    with pytest.raises(ValueError):
        grid_field(UnitBall(2), "t", (0.0, 0.0), resolution=1)
    with pytest.raises(ValueError):
        grid_field(UnitBall(3), "t", (0.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        grid_field(pentagram(), "rho", (0.0, 0.0))
    with pytest.raises(ValueError):
        grid_field(UnitBall(2), "t", (0.0, 0.0), bbox=(1.0, 0.0, -1.0, 2.0))


def test_halfspace_field_with_explicit_bbox():
    field = grid_field(HalfSpace(2), "t", (0.0, 1.0), bbox=(-2.0, 0.0, 2.0, 2.0),
                       resolution=33)
    finite = np.isfinite(field.values)
    assert finite.sum() > 0
    # nodes on the boundary line y = 0 are outside the open half-plane
    assert np.all(np.isinf(field.values[0]))


def test_field_to_csv_roundtrip():
    field = grid_field(UnitBall(2), "t", (0.0, 0.0), bbox=(-1.1, -1.1, 1.1, 1.1),
                       resolution=8)
    text = field_to_csv(field)
    lines = text.strip().split("\n")
    assert lines[0] == "x,y,value"
    assert len(lines) == 1 + 8 * 8
    assert any(line.endswith(",inf") for line in lines[1:])
    x, y, val = lines[1].split(",")
    assert float(x) == field.xs[0]
    assert float(y) == field.ys[0]


# ---------------------------------------------------------------------------
# marching squares on synthetic grids


def _single_cell(v00, v10, v01, v11):
    return _synthetic_field([[v00, v10], [v01, v11]])


def test_single_corner_case_cuts_bottom_left():
    field = _single_cell(1.0, 0.0, 0.0, 0.0)
    (contour,) = extract_contours(field, [0.5])
    (poly,) = contour.polylines
    assert sorted(map(tuple, poly)) == [(0.0, 0.5), (0.5, 0.0)]


def test_opposite_edges_case_is_vertical_band():
    # left corners above, right corners below: one left-to-right horizontal cut
    field = _single_cell(1.0, 0.0, 1.0, 0.0)
    (contour,) = extract_contours(field, [0.5])
    (poly,) = contour.polylines
    assert sorted(map(tuple, poly)) == [(0.5, 0.0), (0.5, 1.0)]


def test_all_sixteen_cases_produce_expected_segment_counts():
    expected_segments = {0: 0, 1: 1, 2: 1, 3: 1, 4: 1, 5: 2, 6: 1, 7: 1,
                         8: 1, 9: 1, 10: 2, 11: 1, 12: 1, 13: 1, 14: 1, 15: 0}
    for case in range(16):
        v00 = 1.0 if case & 1 else 0.0
        v10 = 1.0 if case & 2 else 0.0
        v11 = 1.0 if case & 4 else 0.0
        v01 = 1.0 if case & 8 else 0.0
        field = _single_cell(v00, v10, v01, v11)
        (contour,) = extract_contours(field, [0.5])
        count = sum(max(0, p.shape[0] - 1) for p in contour.polylines)
        assert count == expected_segments[case], f"case {case}"


def test_saddle_disambiguation_by_center_average():
    # diagonal corners high; center average above the level joins them one way
    field = _single_cell(0.9, 0.0, 0.0, 0.9)
    (contour,) = extract_contours(field, [0.4])  # average 0.45 > 0.4
    assert len(contour.polylines) == 2
    (contour,) = extract_contours(field, [0.5])  # average 0.45 < 0.5
    assert len(contour.polylines) == 2


def test_bullseye_chains_into_closed_loop():
    values = np.ones((3, 3))
    values[1, 1] = 0.0
    field = _synthetic_field(values)
    (contour,) = extract_contours(field, [0.5])
    (poly,) = contour.polylines
    assert poly.shape == (5, 2)
    assert np.all(poly[0] == poly[-1])


def test_cells_with_infinite_corner_are_skipped():
    values = np.array([[0.0, 1.0], [np.inf, 1.0]])
    field = _synthetic_field(values)
    (contour,) = extract_contours(field, [0.5])
    assert contour.polylines == ()


def test_contour_level_validation():
    field = _ball_t_field(resolution=16)
    for bad in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            extract_contours(field, [bad])


def test_unreachable_level_gives_empty_contour():
    # the disk-center t-field never exceeds 1/2
    field = _ball_t_field(resolution=64)
    (contour,) = extract_contours(field, [0.9])
    assert contour.polylines == ()


def test_disk_contour_is_a_circle():
    field = _ball_t_field(resolution=256)
    (contour,) = extract_contours(field, [0.25])
    assert len(contour.polylines) == 1
    poly = contour.polylines[0]
    assert np.all(poly[0] == poly[-1])
    radius = np.hypot(poly[:, 0], poly[:, 1])
    assert np.max(np.abs(radius - 0.5)) < field.cell_diagonal


def test_sublevel_sets_are_nested():
    field = _ball_t_field(resolution=128)
    inner, outer = extract_contours(field, [0.1, 0.2])
    inner_max = max(np.hypot(p[:, 0], p[:, 1]).max() for p in inner.polylines)
    outer_min = min(np.hypot(p[:, 0], p[:, 1]).min() for p in outer.polylines)
    assert inner_max < outer_min


def test_contours_to_json_shape():
    field = _ball_t_field(resolution=64)
    payload = contours_to_json(extract_contours(field, [0.1, 0.2]))
    assert [entry["level"] for entry in payload] == [0.1, 0.2]
    for entry in payload:
        assert set(entry) == {"level", "polylines"}
        for poly in entry["polylines"]:
            assert all(len(pt) == 2 for pt in poly)
    json.dumps(payload)  # must be serializable as-is


# ---------------------------------------------------------------------------
# SVG rendering


def test_svg_structure_and_group_order():
    field = _ball_t_field(resolution=64)
    contours = extract_contours(field, [0.3, 0.1, 0.2])
    svg = render_svg(contours, UnitBall(2))
    assert svg.startswith('<?xml version="1.0"')
    assert svg.endswith("</svg>\n")
    assert 'id="domain-boundary"' in svg
    assert "<circle" in svg
    positions = [svg.index(f'id="level-{lv:g}"') for lv in (0.1, 0.2, 0.3)]
    assert positions == sorted(positions)


def test_svg_is_deterministic():
    field = _ball_t_field(resolution=64)
    contours = extract_contours(field, [0.1, 0.25, 0.4])
    first = render_svg(contours, UnitBall(2))
    second = render_svg(contours, UnitBall(2))
    assert first == second


def test_svg_rejects_higher_dimensions():
    with pytest.raises(ValueError):
        render_svg([], UnitBall(3))


def test_svg_without_contours_or_box_uses_fallback_window():
    svg = render_svg([], HalfSpace(2))
    assert "<path" in svg  # the boundary line clipped to the fallback box


def test_svg_punctured_disk_marks_the_puncture():
    svg = render_svg([], PuncturedDisk())
    assert svg.count("<circle") == 2
    assert 'fill="#000000"' in svg


def test_svg_palette_override():
    field = _ball_t_field(resolution=32)
    contours = extract_contours(field, [0.2])
    svg = render_svg(contours, UnitBall(2), palette=("#123456",))
    assert 'stroke="#123456"' in svg


def test_svg_empty_level_keeps_its_group():
    field = _ball_t_field(resolution=32)
    contours = extract_contours(field, [0.9])
    svg = render_svg(contours, UnitBall(2))
    assert 'id="level-0.9"' in svg


# ---------------------------------------------------------------------------
# boundary reach and the touch verdict


def test_boundary_reach_values_on_the_disk():
    center = (0.0, 0.0)
    assert boundary_reach(UnitBall(2), "t", center) == pytest.approx(0.5, abs=1e-9)
    for name in ("jstar", "pointpair", "sratio", "th_half_rho"):
        assert boundary_reach(UnitBall(2), name, center) == pytest.approx(
            1.0, abs=1e-8), name
    assert boundary_reach(UnitBall(2), "th_quarter_rho", center) == pytest.approx(
        1.0, abs=1e-5)


def test_boundary_reach_on_the_half_plane():
    assert boundary_reach(HalfSpace(2), "t", (0.0, 1.0)) == pytest.approx(
        0.5, abs=1e-9)


def test_boundary_reach_rejects_hyperbolic():
    with pytest.raises(ValueError):
        boundary_reach(UnitBall(2), "rho", (0.0, 0.0))


def test_boundary_reach_rejects_outside_center():
    with pytest.raises(OutsideDomainError):
        boundary_reach(UnitBall(2), "t", (3.0, 0.0))


def test_touch_verdict_dichotomy_on_the_disk():
    sep = touches_boundary(UnitBall(2), "t", (0.0, 0.0), 0.45, resolution=128)
    assert not sep.touches and sep.verdict == "separated"
    assert sep.gap > 2.0 * sep.cell_diagonal
    hit = touches_boundary(UnitBall(2), "t", (0.0, 0.0), 0.55, resolution=128)
    assert hit.touches and hit.verdict == "touches"
    assert hit.gap <= 2.0 * hit.cell_diagonal
    assert hit.reach == pytest.approx(0.5, abs=1e-9)


def test_touch_radius_validation():
    for bad in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            touches_boundary(UnitBall(2), "t", (0.0, 0.0), bad, resolution=32)


# ---------------------------------------------------------------------------
# starlikeness


def test_disk_center_ball_is_starlike():
    rep = starlike_check(UnitBall(2), "t", (0.0, 0.0), 0.25, n_dirs=64,
                         steps=128)
    assert rep.starlike and rep.witness is None
    assert rep.directions == 64 and rep.steps == 128


def test_strip_complement_ball_is_not_starlike():
    dom = preset("hstrip")
    r = HSTRIP_T_WITNESS + 5e-3
    rep = starlike_check(dom, "t", (0.0, -2.0), r, n_dirs=1024, steps=1024)
    assert not rep.starlike
    assert rep.witness is not None
    wx, wy = rep.witness
    assert wy > 0.0  # the ball reappears beyond the excluded strip


def test_starlike_check_is_deterministic():
    dom = preset("hstrip")
    r = HSTRIP_T_WITNESS + 5e-3
    a = starlike_check(dom, "t", (0.0, -2.0), r, n_dirs=256, steps=512, seed=3)
    b = starlike_check(dom, "t", (0.0, -2.0), r, n_dirs=256, steps=512, seed=3)
    assert a == b


def test_starlike_radius_validation():
    with pytest.raises(ValueError):
        starlike_check(UnitBall(2), "t", (0.0, 0.0), 1.2, n_dirs=8, steps=8)
    with pytest.raises(ValueError):
        starlike_check(UnitBall(2), "t", (0.0, 0.0), 0.0, n_dirs=8, steps=8)


def test_hyperbolic_ball_allows_large_radius():
    rep = starlike_check(UnitBall(2), "rho", (0.0, 0.0), 2.0, n_dirs=16,
                         steps=64)
    assert rep.starlike


def test_starlike_max_radius_override():
    rep = starlike_check(UnitBall(2), "t", (0.0, 0.0), 0.25, n_dirs=16,
                         steps=32, max_radius=0.75)
    assert rep.starlike


# ---------------------------------------------------------------------------
# corner detection


def _square_loop(side=1.0, spacing=0.02):
    edge = np.arange(0.0, side, spacing)
    bottom = np.column_stack([edge, np.zeros_like(edge)])
    right = np.column_stack([np.full_like(edge, side), edge])
    top = np.column_stack([side - edge, np.full_like(edge, side)])
    left = np.column_stack([np.zeros_like(edge), side - edge])
    pts = np.vstack([bottom, right, top, left, [[0.0, 0.0]]])
    return pts


def test_square_contour_has_four_corners():
    poly = _square_loop()
    contour = Contour(level=0.5, polylines=(poly,))
    corners = corner_points(contour, grid_pitch=0.02)
    assert corners.shape[0] == 4
    vertices = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    for v in vertices:
        assert np.min(np.hypot(*(corners - v).T)) < 0.15


def test_straight_polyline_has_no_corners():
    pts = np.column_stack([np.linspace(0.0, 1.0, 40), np.zeros(40)])
    contour = Contour(level=0.5, polylines=(pts,))
    assert corner_points(contour, grid_pitch=0.01).shape == (0, 2)


def test_open_bend_gives_one_corner():
    a = np.column_stack([np.linspace(0.0, 1.0, 50), np.zeros(50)])
    b = np.column_stack([np.ones(50), np.linspace(0.0, 1.0, 50)])
    contour = Contour(level=0.5, polylines=(np.vstack([a, b[1:]]),))
    corners = corner_points(contour, grid_pitch=0.02)
    assert corners.shape[0] == 1
    assert np.hypot(corners[0, 0] - 1.0, corners[0, 1]) < 0.15


def test_circle_contour_has_no_corners():
    field = _ball_t_field(resolution=256)
    (contour,) = extract_contours(field, [0.25])
    corners = corner_points(contour, grid_pitch=field.cell[0],
                            angle_threshold=30.0)
    assert corners.shape[0] == 0


def test_corner_points_validation():
    contour = Contour(level=0.5, polylines=())
    with pytest.raises(ValueError):
        corner_points(contour, grid_pitch=0.0)
    assert corner_points(contour, grid_pitch=0.1).shape == (0, 2)

import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regtri.analysis import (
    CSV_COLUMNS,
    area_conservation,
    edge_length_stats,
    face_angles,
    face_areas,
    loglog_slope,
    max_length_series,
    min_angle_series,
    stats_to_csv,
    stats_to_json,
)
from regtri.euclidean import hexagonal_patch
from regtri.hyperbolic import HyperbolicParams, RadiusSchedule, generate_hyperbolic
from regtri.kernel import hyp_distance, triangle_area
from regtri.mesh import EdgeType, Geometry, build_mesh, hexagonal_fan


def test_hexagonal_fan_lengths():
    stats = edge_length_stats(hexagonal_fan())
    for s in stats:
        for d in s.edges.values():
            assert d["min"] == pytest.approx(1.0) and d["max"] == pytest.approx(1.0)
    assert sum(d["count"] for s in stats for d in s.edges.values()) == 12


def test_equilateral_angles():
    ang = [a for _, a in min_angle_series(hexagonal_patch(3))]
    np.testing.assert_allclose(ang, math.pi / 3, rtol=1e-12)


def test_counts_match_generator(hyp10):
    stats = edge_length_stats(hyp10)
    for s in stats[1:]:
        assert s.edges["type1"]["count"] == 6 * s.layer
    assert stats[0].edges["type0"]["count"] == 6


def test_type1_bound_linear_form(hyp10):
    # len < (pi/3n) sinh r_n holds for every Type1 edge
    s = RadiusSchedule.default()
    for n, mx in max_length_series(hyp10, EdgeType.TYPE1):
        assert mx < math.pi / (3 * n) * math.sinh(s.radius(n))


def test_slope_exact_power_laws():
    f = loglog_slope([(n, 1 / n) for n in range(1, 200)], 1, 199)
    assert f.exponent == pytest.approx(-1.0, abs=1e-12)
    assert f.r2 == pytest.approx(1.0)
    f = loglog_slope([(n, 3.7 * n**-1.2) for n in range(10, 1000)], 10, 999)
    assert f.exponent == pytest.approx(-1.2, abs=1e-9)
    assert math.exp(f.intercept) == pytest.approx(3.7, rel=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.floats(-3, 3), st.floats(0.1, 10))
def test_slope_recovers_synthetic(p, c):
    f = loglog_slope([(n, c * n**p) for n in range(5, 500)], 5, 499)
    assert f.exponent == pytest.approx(p, abs=1e-9)
    assert 0.0 <= f.r2 <= 1.0


@pytest.mark.parametrize("lo, hi", [(10, 5), (0, 5), (5, 5)])
def test_slope_bad_range(lo, hi):
    with pytest.raises(ValueError):
        loglog_slope([(n, 1 / n) for n in range(1, 20)], lo, hi)


def test_slope_nonpositive():
    with pytest.raises(ValueError):
        loglog_slope([(1, 1.0), (2, 0.0), (3, 1.0)], 1, 3)


def test_area_single_triangle():
    pts = [(0.0, 0.0), (0.5, 0.0), (0.1, 0.4)]
    m = build_mesh(Geometry.HYPERBOLIC, pts, [(0, 1), (1, 2), (2, 0)])
    res = area_conservation(m)
    assert res["sum_of_triangles"] == pytest.approx(res["gauss_bonnet_total"], abs=1e-14)
    assert res["sum_of_triangles"] == pytest.approx(triangle_area(*pts), rel=1e-12)


def test_area_hexagon_two_triangulations():
    # one-layer hexagon: centre fan vs a fan from one corner
    m = generate_hyperbolic(HyperbolicParams(RadiusSchedule.default(), 1))
    res = area_conservation(m)
    assert res["sum_of_triangles"] == pytest.approx(res["gauss_bonnet_total"], abs=1e-12)
    h = m.positions[1:]
    alt = sum(triangle_area(h[0], h[i], h[i + 1]) for i in range(1, 5))
    assert res["sum_of_triangles"] == pytest.approx(alt, abs=1e-10)


def test_area_50_layers():
    m = generate_hyperbolic(HyperbolicParams(RadiusSchedule.default(), 50))
    res = area_conservation(m)
    assert abs(res["sum_of_triangles"] - res["gauss_bonnet_total"]) < 1e-8


def test_min_angle_positive_and_decreasing(hyp200):
    series = min_angle_series(hyp200)
    ang = np.array([a for _, a in series])
    assert np.all(ang > 0)
    assert np.all(np.diff(ang[4:]) <= 0)


def test_face_angles_match_kernel(hyp10):
    f = hyp10.faces[:50]
    got = face_angles(hyp10)[:50]
    from regtri.kernel import triangle_angles

    p = hyp10.positions
    want = np.column_stack(triangle_angles(p[f[:, 0]], p[f[:, 1]], p[f[:, 2]]))
    np.testing.assert_allclose(got, want, rtol=1e-12)
    assert np.all(face_areas(hyp10) > 0)


def test_csv_and_json(hyp10):
    stats = edge_length_stats(hyp10)
    fit = loglog_slope(max_length_series(hyp10, EdgeType.TYPE1), 2, 10)
    text = stats_to_csv(stats, fit)
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[-1][0] == "fit"
    body = rows[1:-1]
    assert len(body) == sum(len(s.edges) for s in stats)
    for r in body:
        assert float(r[4]) >= float(r[3]) > 0
    doc = json.loads(stats_to_json(stats, fit))
    assert len(doc["rows"]) == len(body)
    assert doc["fit"]["exponent"] == fit.exponent


def test_distance_consistency(hyp10):
    from regtri.analysis import edge_lengths

    e = hyp10.edges[:100]
    np.testing.assert_array_equal(
        edge_lengths(hyp10)[:100], hyp_distance(hyp10.positions[e[:, 0]], hyp10.positions[e[:, 1]])
    )


def test_type1_linear_bound_500_layers(hyp500):
    # the length itself (not its sinh) stays under (pi/3n) sinh r_n on every layer
    s = RadiusSchedule.default()
    for n, mx in max_length_series(hyp500, EdgeType.TYPE1):
        assert mx < math.pi / (3 * n) * math.sinh(s.radius(n))


def test_type1_sinh_form_fails_from_layer_3(hyp500):
    # sinh(len) ~ 2 sinh r sin(t/2) sqrt(1 + sinh^2 r sin^2(t/2)) exceeds t sinh r once sinh^2 r > 1/3
    s = RadiusSchedule.default()
    series = dict(max_length_series(hyp500, EdgeType.TYPE1))
    holds = [math.sinh(series[n]) < math.pi / (3 * n) * math.sinh(s.radius(n)) for n in range(1, 501)]
    assert holds[:2] == [True, True]
    assert not any(holds[2:])


@pytest.mark.slow
def test_min_angle_crossing_layer_regression():
    m = generate_hyperbolic(HyperbolicParams(RadiusSchedule.default(), 600))
    series = min_angle_series(m)
    first = next(n for n, a in series if a < 0.05)
    assert first == 560
    assert dict(series)[559] == pytest.approx(0.0500224, abs=1e-7)
    assert dict(series)[499] == pytest.approx(0.05266177242573159, rel=1e-9)

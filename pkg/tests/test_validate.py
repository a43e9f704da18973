import numpy as np
import pytest

import oracles
from regtri.euclidean import hexagonal_patch
from regtri.hyperbolic import HyperbolicParams, RadiusSchedule, generate_hyperbolic
from regtri.mesh import Geometry, build_mesh, hexagonal_fan, torus_fixture, with_extra_edges
from regtri.sphere import generate_sphere
from regtri.validate import (
    NotADiskError,
    NotClosedError,
    boundary_cycle,
    check_regular,
    closed_surface_identity,
    disk_identity,
    euler_report,
    feasibility,
    noncrossing_check,
)


def test_check_regular_exempts_boundary(hyp10):
    r = check_regular(hyp10, 6)
    assert r.passed
    assert r.summary["boundary_degrees"] == {3: 6, 4: 54}


def test_check_regular_reports_interior_violation():
    r = check_regular(hexagonal_patch(2), 5)
    assert not r.passed
    assert [ids for ids, _ in r.violations] == [(i,) for i in range(7)]


@pytest.mark.parametrize("k", [3, 4, 5])
def test_sphere_regular(k):
    m = generate_sphere(k)
    assert check_regular(m, k).passed
    assert closed_surface_identity(m).summary == {"lhs": 12, "rhs": 12}


def test_closed_identity_torus():
    assert closed_surface_identity(torus_fixture()).summary == {"lhs": 0, "rhs": 0}
    with pytest.raises(NotClosedError):
        closed_surface_identity(hexagonal_fan())


def test_disk_identity_fixtures():
    r = disk_identity(hexagonal_fan())
    assert r.passed and r.summary["lhs"] == 0 and r.summary["rhs"] == 0
    patch = hexagonal_patch(2)
    assert patch.n_vertices == 19
    assert disk_identity(patch).passed


def test_disk_identity_rejects_non_disks():
    with pytest.raises(NotADiskError):
        disk_identity(torus_fixture())
    # two triangles meeting at a single vertex: chi = 1 but the boundary pinches
    pos = [(0, 0), (1, 0), (1, 1), (-1, 0), (-1, -1)]
    bowtie = build_mesh(Geometry.EUCLIDEAN, pos, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    with pytest.raises(NotADiskError):
        boundary_cycle(bowtie)


def test_boundary_cycle_order(hyp10):
    cyc = boundary_cycle(hyp10)
    assert len(cyc) == 60
    assert set(cyc) == set(hyp10.boundary.tolist())


def test_euler_report():
    assert euler_report(generate_sphere(5)).summary == {"V": 12, "E": 30, "F": 20, "chi": 2}
    assert euler_report(hexagonal_fan()).passed
    assert not euler_report(hexagonal_fan(), expected=2).passed


@pytest.mark.parametrize("layers", [1, 2, 3])
def test_noncrossing_matches_brute_force(layers):
    m = generate_hyperbolic(HyperbolicParams(RadiusSchedule.default(), layers))
    assert oracles.brute_force_crossings(m.positions.tolist(), m.edges.tolist()) == []
    assert noncrossing_check(m).passed


def test_injected_crossing_detected(hyp10):
    # chord between two layer-2 vertices on opposite sides of a layer-1 vertex
    bad = with_extra_edges(hyp10, [(7, 9)])
    r = noncrossing_check(bad)
    assert not r.passed
    pairs = [set(v[1]["edges"][0]) | set(v[1]["edges"][1]) for v in r.violations]
    assert any({7, 9} <= p for p in pairs)
    small = generate_hyperbolic(HyperbolicParams(RadiusSchedule.default(), 2))
    small_bad = with_extra_edges(small, [(7, 9)])
    brute = oracles.brute_force_crossings(small_bad.positions.tolist(), small_bad.edges.tolist())
    got = [ids for ids, _ in noncrossing_check(small_bad).violations]
    assert sorted(got) == brute


def test_overlap_and_touch_detected():
    pos = [(0, 0), (2, 0), (1, 0), (3, 0), (1, 1), (1, -1)]
    m = build_mesh(Geometry.EUCLIDEAN, pos, [(0, 1), (2, 3), (4, 5)])
    rels = sorted(v[1]["relation"] for v in noncrossing_check(m).violations)
    assert rels == ["overlap", "proper-crossing", "touch"]


def test_noncrossing_rejects_non_planar():
    with pytest.raises(ValueError):
        noncrossing_check(generate_sphere(4))


@pytest.mark.parametrize("cell", [None, 0.01, 0.5, 5.0])
def test_noncrossing_independent_of_cell_size(hyp10, cell):
    bad = with_extra_edges(hyp10, [(7, 9)])
    assert len(noncrossing_check(bad, cell_size=cell).violations) == len(noncrossing_check(bad).violations)


@pytest.mark.parametrize(
    "k, g, expected",
    [
        (3, 0, (4, 6, 4)),
        (4, 0, (6, 12, 8)),
        (5, 0, (12, 30, 20)),
        (7, 2, (12, 42, 28)),
        (8, 3, (12, 48, 32)),
        (12, 2, (2, 12, 8)),
    ],
)
def test_feasibility_counts(k, g, expected):
    f = feasibility(k, g)
    assert f["feasible"]
    assert (f["V"], f["E"], f["F"]) == expected


@pytest.mark.parametrize("k, g", [(7, 1), (5, 1), (7, 0), (3, 2), (11, 2)])
def test_infeasible(k, g):
    assert not feasibility(k, g)["feasible"]


@pytest.mark.parametrize("k, g, simple", [(5, 0, True), (7, 2, True), (10, 3, False), (12, 2, False)])
def test_feasibility_simple_flag(k, g, simple):
    f = feasibility(k, g)
    assert f["feasible"] and f["simple"] is simple


def test_feasibility_torus():
    assert feasibility(6, 1)["feasible"]
    assert feasibility(6, 1)["V"] is None
    assert not feasibility(6, 0)["feasible"]


@pytest.mark.parametrize("k", range(3, 16))
@pytest.mark.parametrize("g", range(0, 12))
def test_feasible_triples_satisfy_identities(k, g):
    f = feasibility(k, g)
    if f["feasible"] and f["V"] is not None:
        v, e, fc = f["V"], f["E"], f["F"]
        assert k * v == 2 * e == 3 * fc
        assert v - e + fc == 2 - 2 * g
        assert fc + (4 - k) * v == 8 * (1 - g)


def test_report_json_round_trip(hyp10):
    import json

    d = json.loads(check_regular(hyp10, 6).to_json())
    assert d["check"] == "degree" and d["passed"] is True

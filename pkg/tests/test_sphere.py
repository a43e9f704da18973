import math

import numpy as np
import pytest

from regtri.analysis import edge_lengths, face_angles, face_areas
from regtri.mesh import euler_characteristic, vertex_degrees
from regtri.sphere import generate_sphere, spherical_edge_length
from regtri.validate import closed_surface_identity, feasibility


@pytest.mark.parametrize(
    "k, counts, arc",
    [
        (3, (4, 6, 4), math.acos(-1 / 3)),  # 1.9106332362490186
        (4, (6, 12, 8), math.pi / 2),
        (5, (12, 30, 20), math.acos(1 / math.sqrt(5))),  # 1.1071487177940904
    ],
)
def test_platonic(k, counts, arc):
    m = generate_sphere(k)
    assert (m.n_vertices, m.n_edges, m.n_faces) == counts
    assert euler_characteristic(m) == 2
    assert set(vertex_degrees(m).tolist()) == {k}
    np.testing.assert_allclose(edge_lengths(m), arc, rtol=0, atol=1e-12)
    f = feasibility(k, 0)
    assert (f["V"], f["E"], f["F"]) == counts
    assert closed_surface_identity(m).passed


def test_frozen_arcs():
    assert generate_sphere(3).params["solid"] == "tetrahedron"
    assert edge_lengths(generate_sphere(3))[0] == pytest.approx(1.9106332362490186, rel=1e-14)
    assert edge_lengths(generate_sphere(5))[0] == pytest.approx(1.1071487177940904, rel=1e-14)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_vertices_on_unit_sphere_and_outward_faces(k):
    m = generate_sphere(k)
    np.testing.assert_allclose(np.linalg.norm(m.positions, axis=1), 1.0, rtol=1e-15)
    a, b, c = (m.positions[m.faces[:, i]] for i in range(3))
    assert np.all(np.einsum("ij,ij->i", np.cross(b - a, c - a), a + b + c) > 0)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_total_area_is_4pi(k):
    m = generate_sphere(k)
    assert face_areas(m).sum() == pytest.approx(4 * math.pi, rel=1e-12)
    # every vertex is surrounded by k equal angles summing to 2 pi - defect
    ang = face_angles(m)
    np.testing.assert_allclose(ang, ang[0, 0], rtol=1e-12)


@pytest.mark.parametrize("k", [2, 6, 7])
def test_other_k_rejected(k):
    with pytest.raises(ValueError):
        generate_sphere(k)


def test_spherical_length_small_and_antipodal():
    e = 1e-9
    p = np.array([1.0, 0.0, 0.0])
    q = np.array([math.cos(e), math.sin(e), 0.0])
    assert spherical_edge_length(p, q) == pytest.approx(e, rel=1e-12)
    assert spherical_edge_length(p, -p) == pytest.approx(math.pi)

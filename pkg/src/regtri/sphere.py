"""k-regular triangulations of the unit sphere for k = 3, 4, 5.

These are the triangle-faced Platonic solids projected radially: tetrahedron,
octahedron and icosahedron. Vertices are stored as unit 3-vectors; edges are
the nearest-neighbour pairs.
"""

import numpy as np

from regtri.mesh import EdgeType, Geometry, build_mesh

SOLIDS = {3: "tetrahedron", 4: "octahedron", 5: "icosahedron"}


def _tetrahedron():
    return np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)


def _octahedron():
    return np.vstack([np.eye(3), -np.eye(3)])


def _icosahedron():
    phi = (1 + np.sqrt(5)) / 2
    out = []
    for a in (-1, 1):
        for b in (-phi, phi):
            out += [(0, a, b), (a, b, 0), (b, 0, a)]
    return np.array(out, dtype=float)


def spherical_edge_length(p, q):
    """Great-circle distance between unit vectors (atan2 form, accurate at all angles)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    cross = np.linalg.norm(np.cross(p, q), axis=-1)
    dot = np.sum(p * q, axis=-1)
    return np.arctan2(cross, dot)


def _outward_faces(pos, edges):
    """Triangles of mutually adjacent vertices, oriented with outward normals."""
    n = len(pos)
    adj = np.zeros((n, n), bool)
    adj[edges[:, 0], edges[:, 1]] = adj[edges[:, 1], edges[:, 0]] = True
    faces = []
    for i in range(n):
        for j in range(i + 1, n):
            if not adj[i, j]:
                continue
            for l in range(j + 1, n):
                if adj[i, l] and adj[j, l]:
                    a, b, c = pos[i], pos[j], pos[l]
                    if np.dot(np.cross(b - a, c - a), a + b + c) > 0:
                        faces.append((i, j, l))
                    else:
                        faces.append((i, l, j))
    return np.array(faces, dtype=np.int64)


def generate_sphere(k):
    """Platonic k-regular triangulation of the sphere (k in 3, 4, 5)."""
    if k not in SOLIDS:
        raise ValueError(f"spherical k-regular triangulations exist only for k in (3, 4, 5), got {k}")
    raw = {3: _tetrahedron, 4: _octahedron, 5: _icosahedron}[k]()
    pos = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    gram = pos @ pos.T
    np.fill_diagonal(gram, -np.inf)
    nearest = gram.max()
    i, j = np.nonzero(np.triu(np.isclose(gram, nearest, rtol=0, atol=1e-9), 1))
    edges = np.column_stack([i, j])
    n = len(pos)
    return build_mesh(
        Geometry.SPHERICAL,
        pos,
        edges,
        etypes=np.full(len(edges), EdgeType.GENERIC),
        layer=np.zeros(n, dtype=np.int64),
        index=np.arange(n),
        sector=np.zeros(n, dtype=np.int64),
        faces=_outward_faces(pos, edges),
        params={"k": k, "solid": SOLIDS[k]},
    )

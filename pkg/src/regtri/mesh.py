"""Geometry-tagged triangulation container.

A :class:`Mesh` is built from vertices and undirected edges. Faces are derived
from the rotation system (neighbours of each vertex sorted by the direction of
the outgoing geodesic) unless the caller supplies them, in which case they are
checked against the edge set. Everything is stored in numpy arrays so meshes
with a few million edges stay cheap to build and validate.
"""

import enum
from dataclasses import dataclass, field

import numpy as np


class Geometry(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    SPHERICAL = "spherical"
    HYPERBOLIC = "hyperbolic"
    # no coordinates; faces must be given explicitly (torus fixture)
    COMBINATORIAL = "combinatorial"

    @property
    def planar(self):
        return self in (Geometry.EUCLIDEAN, Geometry.HYPERBOLIC)


class EdgeType(enum.IntEnum):
    TYPE0 = 0  # along a sector ray
    TYPE1 = 1  # between consecutive vertices of one layer
    TYPE2 = 2  # between consecutive layers
    GENERIC = 3


class MeshError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    position: tuple
    layer: int = 0
    index: int = 0
    sector: int = -1


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    etype: EdgeType = EdgeType.GENERIC


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Mesh:
    geometry: Geometry
    positions: np.ndarray | None
    edges: np.ndarray
    etypes: np.ndarray
    faces: np.ndarray
    layer: np.ndarray
    index: np.ndarray
    sector: np.ndarray
    boundary_mask: np.ndarray
    params: dict = field(default_factory=dict)

    @property
    def n_vertices(self):
        return self.layer.shape[0]

    @property
    def n_edges(self):
        return self.edges.shape[0]

    @property
    def n_faces(self):
        return self.faces.shape[0]

    @property
    def boundary(self):
        """Sorted ids of boundary vertices."""
        return np.flatnonzero(self.boundary_mask)

    def vertex(self, i):
        pos = () if self.positions is None else tuple(float(x) for x in self.positions[i])
        return Vertex(int(i), pos, int(self.layer[i]), int(self.index[i]), int(self.sector[i]))

    def edge(self, j):
        u, v = self.edges[j]
        return Edge(int(u), int(v), EdgeType(int(self.etypes[j])))

    @property
    def vertices(self):
        return [self.vertex(i) for i in range(self.n_vertices)]

    def edge_layers(self):
        """Layer of each edge: the smaller layer of its endpoints."""
        return np.minimum(self.layer[self.edges[:, 0]], self.layer[self.edges[:, 1]])

    def face_layers(self):
        """Layer of the innermost vertex of each face."""
        return self.layer[self.faces].min(axis=1)

    def __repr__(self):
        return (
            f"Mesh({self.geometry.value}, V={self.n_vertices}, "
            f"E={self.n_edges}, F={self.n_faces})"
        )


def edge_keys(edges, n_vertices):
    """Order-independent int64 key for each undirected edge."""
    edges = np.asarray(edges, dtype=np.int64)
    lo = edges.min(axis=1)
    hi = edges.max(axis=1)
    return lo * n_vertices + hi


def _outgoing_angles(geometry, pos, src, dst):
    if geometry.planar:
        d = pos[dst] - pos[src]
        return np.arctan2(d[:, 1], d[:, 0])
    # spherical: direction of the great-circle arc in the tangent plane at src
    p = pos[src]
    q = pos[dst]
    t = q - np.einsum("ij,ij->i", p, q)[:, None] * p
    # tangent basis: e1 from the coordinate axis least aligned with p, e2 = p x e1
    ref = np.zeros_like(p)
    ref[np.arange(len(p)), np.argmin(np.abs(p), axis=1)] = 1.0
    e1 = ref - np.einsum("ij,ij->i", ref, p)[:, None] * p
    e1 /= np.linalg.norm(e1, axis=1)[:, None]
    e2 = np.cross(p, e1)
    return np.arctan2(np.einsum("ij,ij->i", t, e2), np.einsum("ij,ij->i", t, e1))


def _face_orientation(geometry, pos, faces):
    a, b, c = pos[faces[:, 0]], pos[faces[:, 1]], pos[faces[:, 2]]
    if geometry.planar:
        return (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
    return np.einsum("ij,ij->i", a, np.cross(b, c))


def rotation_faces(geometry, pos, edges):
    """Triangular faces traced from the angular rotation system.

    Half-edge u->v is followed by v->w where w is the neighbour of v that
    precedes u in counter-clockwise order; 3-cycles with positive orientation
    are the triangles.
    """
    geometry = Geometry(geometry)
    n_v = pos.shape[0]
    n_e = edges.shape[0]
    if n_e == 0:
        return np.empty((0, 3), dtype=np.int64)
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    ang = _outgoing_angles(geometry, pos, src, dst)
    order = np.lexsort((ang, src))
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    deg = np.bincount(src, minlength=n_v)
    start = np.concatenate([[0], np.cumsum(deg)[:-1]])

    h = np.arange(2 * n_e)
    twin = (h + n_e) % (2 * n_e)
    v = dst
    slot = start[v] + (rank[twin] - start[v] - 1) % deg[v]
    nxt = order[slot]

    n1 = nxt
    n2 = nxt[n1]
    tri = (nxt[n2] == h) & (h < n1) & (h < n2)
    hs = h[tri]
    faces = np.stack([src[hs], src[n1[hs]], src[n2[hs]]], axis=1)
    faces = faces[_face_orientation(geometry, pos, faces) > 0]
    # deterministic order: by smallest vertex, rotated to start there
    return _canonical_faces(faces)


def _canonical_faces(faces):
    faces = np.asarray(faces, dtype=np.int64).reshape(-1, 3)
    if faces.size == 0:
        return faces
    shift = np.argmin(faces, axis=1)
    idx = (shift[:, None] + np.arange(3)[None, :]) % 3
    faces = np.take_along_axis(faces, idx, axis=1)
    order = np.lexsort((faces[:, 2], faces[:, 1], faces[:, 0]))
    return faces[order]


def _face_edge_ids(faces, sorted_keys, key_order, n_vertices):
    """Edge id of each side (f[0]f[1], f[1]f[2], f[2]f[0]); -1 if absent."""
    sides = np.stack(
        [faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]], axis=1
    ).reshape(-1, 2)
    keys = edge_keys(sides, n_vertices)
    pos = np.searchsorted(sorted_keys, keys)
    pos = np.minimum(pos, sorted_keys.size - 1)
    found = sorted_keys[pos] == keys
    ids = np.where(found, key_order[pos], -1)
    return ids.reshape(-1, 3)


def build_mesh(
    geometry,
    vertices,
    edges,
    *,
    etypes=None,
    layer=None,
    index=None,
    sector=None,
    faces=None,
    params=None,
):
    """Assemble and check a mesh.

    ``vertices`` is either an (V, d) coordinate array or a list of
    :class:`Vertex`; ``edges`` an (E, 2) id array or a list of :class:`Edge`.
    Raises :class:`MeshError` on dangling endpoints, self loops, duplicate
    edges, or supplied faces that are not 3-cycles of the edge set.
    """
    geometry = Geometry(geometry)

    if geometry is Geometry.COMBINATORIAL and np.ndim(vertices) == 0:
        positions = None
        n_v = int(vertices)
    elif len(vertices) and isinstance(vertices[0], Vertex):
        vs = sorted(vertices, key=lambda v: v.id)
        if [v.id for v in vs] != list(range(len(vs))):
            raise MeshError("vertex ids must be dense 0..V-1")
        positions = np.array([v.position for v in vs], dtype=float) if vs[0].position else None
        layer = [v.layer for v in vs]
        index = [v.index for v in vs]
        sector = [v.sector for v in vs]
        n_v = len(vs)
    else:
        positions = np.asarray(vertices, dtype=float)
        if positions.size == 0:
            positions = positions.reshape(0, 2)
        elif positions.ndim != 2:
            positions = positions.reshape(len(positions), -1)
        n_v = positions.shape[0]
        if geometry is Geometry.COMBINATORIAL:
            positions = None

    if len(edges) and isinstance(edges[0], Edge):
        etypes = [int(e.etype) for e in edges]
        edges = [(e.u, e.v) for e in edges]
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    n_e = edges.shape[0]
    if etypes is None:
        etypes = np.full(n_e, EdgeType.GENERIC, dtype=np.int8)
    etypes = np.asarray(etypes, dtype=np.int8).reshape(n_e)

    if n_e and (edges.min() < 0 or edges.max() >= n_v):
        bad = np.flatnonzero((edges < 0).any(axis=1) | (edges >= n_v).any(axis=1))
        raise MeshError(f"dangling edge endpoint in edge {int(bad[0])}: {edges[bad[0]].tolist()}")
    loops = edges[:, 0] == edges[:, 1]
    if np.any(loops):
        raise MeshError(f"self-loop edge {int(np.flatnonzero(loops)[0])}")

    keys = edge_keys(edges, n_v)
    key_order = np.argsort(keys, kind="stable")
    sorted_keys = keys[key_order]
    dup = np.flatnonzero(sorted_keys[1:] == sorted_keys[:-1])
    if dup.size:
        e1, e2 = key_order[dup[0]], key_order[dup[0] + 1]
        raise MeshError(f"duplicate edge {edges[e1].tolist()} (edges {int(e1)} and {int(e2)})")

    if faces is None:
        if positions is None:
            raise MeshError("faces must be supplied for a mesh without coordinates")
        faces = rotation_faces(geometry, positions, edges)
    else:
        faces = _canonical_faces(faces)
        if faces.size and (faces.min() < 0 or faces.max() >= n_v):
            raise MeshError("face references a missing vertex")

    if n_e:
        side_ids = _face_edge_ids(faces, sorted_keys, key_order, n_v)
    else:
        side_ids = np.empty((faces.shape[0], 3), dtype=np.int64)
    if np.any(side_ids < 0):
        f = int(np.flatnonzero((side_ids < 0).any(axis=1))[0])
        raise MeshError(f"face {faces[f].tolist()} is not a 3-cycle of existing edges")

    # every directed side may belong to at most one face
    directed = np.stack([faces, np.roll(faces, -1, axis=1)], axis=2).reshape(-1, 2)
    dkeys = directed[:, 0] * n_v + directed[:, 1]
    if np.unique(dkeys).size != dkeys.size:
        raise MeshError("faces are inconsistently oriented or repeated")

    faces_per_edge = np.bincount(side_ids.ravel(), minlength=n_e)
    if np.any(faces_per_edge > 2):
        raise MeshError("an edge is shared by more than two faces")
    boundary_mask = np.zeros(n_v, dtype=bool)
    boundary_mask[edges[faces_per_edge == 1].ravel()] = True

    def meta(a, default):
        if a is None:
            return np.full(n_v, default, dtype=np.int64)
        return np.asarray(a, dtype=np.int64).reshape(n_v)

    return Mesh(
        geometry=geometry,
        positions=None if positions is None else _frozen(positions),
        edges=_frozen(edges),
        etypes=_frozen(etypes),
        faces=_frozen(faces),
        layer=_frozen(meta(layer, 0)),
        index=_frozen(meta(index, 0) if index is not None else np.arange(n_v)),
        sector=_frozen(meta(sector, -1)),
        boundary_mask=_frozen(boundary_mask),
        params=dict(params or {}),
    )


def with_extra_edges(m, extra, etype=EdgeType.GENERIC):
    """Copy of ``m`` with additional edges; faces are re-derived."""
    extra = np.asarray(extra, dtype=np.int64).reshape(-1, 2)
    return build_mesh(
        m.geometry,
        m.positions,
        np.concatenate([m.edges, extra]),
        etypes=np.concatenate([m.etypes, np.full(len(extra), etype, dtype=np.int8)]),
        layer=m.layer,
        index=m.index,
        sector=m.sector,
        params=m.params,
    )


def vertex_degrees(m):
    """Degree of every vertex, indexed by vertex id."""
    return np.bincount(m.edges.ravel(), minlength=m.n_vertices)


def euler_characteristic(m):
    return int(m.n_vertices - m.n_edges + m.n_faces)


# -- fixtures ---------------------------------------------------------------


def hexagonal_fan():
    """Centre plus six unit-distance neighbours: the star of the hexagonal lattice."""
    ang = np.arange(6) * np.pi / 3
    pos = np.vstack([[0.0, 0.0], np.column_stack([np.cos(ang), np.sin(ang)])])
    spokes = [(0, i) for i in range(1, 7)]
    ring = [(i, i % 6 + 1) for i in range(1, 7)]
    return build_mesh(
        Geometry.EUCLIDEAN,
        pos,
        spokes + ring,
        etypes=[EdgeType.TYPE2] * 6 + [EdgeType.TYPE1] * 6,
        layer=[0] + [1] * 6,
        index=[0] + list(range(6)),
        sector=[-1] + list(range(6)),
    )


def torus_fixture(p=3, q=3):
    """6-regular triangulation of the torus: quotient of the hexagonal lattice by a p x q grid.

    The default 3 x 3 quotient has V=9, E=27, F=18. Combinatorial only.
    """
    if p < 3 or q < 3:
        raise ValueError("p and q must be at least 3 to avoid multi-edges")

    def vid(i, j):
        return (i % p) * q + (j % q)

    edges, faces = [], []
    for i in range(p):
        for j in range(q):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            edges += [(a, b), (a, c), (a, d)]
            faces += [(a, b, d), (a, d, c)]
    return build_mesh(Geometry.COMBINATORIAL, p * q, edges, faces=faces)

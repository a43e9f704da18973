"""k-regular triangulations of the Euclidean plane on concentric circles (k >= 7).

Layer n is a circle of radius r_n carrying a_n equally spaced vertices, with
a_0 = 0, a_1 = k and a_{n+1} = (k - 4) a_n - a_{n-1}. Between two layers every
inner vertex fans out to a contiguous run of outer vertices; consecutive fans
share their end vertex. The fan sizes are fixed by degree counting: a vertex
with ``i`` inward edges needs k - 2 - i outward ones.
"""

import math
from dataclasses import dataclass

import numpy as np

from regtri.mesh import EdgeType, Geometry, build_mesh


class AssignmentError(ValueError):
    """Degree budgets of a layer band cannot be met."""


SCHEDULES = ("unit", "geometric")


@dataclass(frozen=True)
class EuclideanParams:
    k: int
    layers: int
    schedule: str = "unit"

    def __post_init__(self):
        if self.k <= 5:
            raise ValueError(
                f"k = {self.k}: no k-regular triangulation of the plane exists for k <= 5 "
                "(a large enough disk would violate the triangulated-disk degree identity)"
            )
        if self.layers < 1:
            raise ValueError("need at least one layer")
        if self.schedule not in SCHEDULES:
            raise ValueError(f"schedule must be one of {SCHEDULES}")

    def radius(self, n):
        return float(n) if self.schedule == "unit" else float(2**n)


def layer_count(k, n):
    """a_n by the integer recurrence (exact, arbitrary precision)."""
    if k < 7:
        raise ValueError("layer counts are defined for k >= 7")
    if n < 0:
        raise ValueError("n must be non-negative")
    a0, a1 = 0, k
    if n == 0:
        return 0
    for _ in range(n - 1):
        a0, a1 = a1, (k - 4) * a1 - a0
    return a1


def characteristic_root(k):
    """Larger root of x^2 - (k - 4) x + 1 = 0, i.e. exp(arccosh((k - 4) / 2))."""
    m = k - 4
    return (m + math.sqrt(m * m - 4)) / 2


def layer_count_closed_form(k, n):
    """k (alpha^n - beta^n) / (alpha - beta) with alpha, beta = 1/alpha the characteristic roots."""
    if k < 7:
        raise ValueError("layer counts are defined for k >= 7")
    al = characteristic_root(k)
    be = 1.0 / al
    return k * (al**n - be**n) / (al - be)


def _fans(a_prev, a_next, k, inward):
    """Fan start (unwrapped outer index) and size for every inner vertex."""
    inward = np.asarray(inward, dtype=np.int64)
    if inward.shape != (a_prev,):
        raise AssignmentError(f"need {a_prev} inward counts, got {inward.shape}")
    size = k - 2 - inward
    if np.any(size < 2):
        raise AssignmentError("an inner vertex would receive fewer than two outward edges")
    if int(size.sum()) != a_prev + a_next:
        raise AssignmentError(
            f"outward budget {int(size.sum())} != a_prev + a_next = {a_prev + a_next}"
        )
    gap = size - 1
    cum = np.cumsum(gap) - gap
    # centre each fan on its inner vertex, minimising the worst misalignment
    dev = np.arange(a_prev) * (a_next / a_prev) - cum - gap / 2
    shift = int(np.round((dev.max() + dev.min()) / 2))
    return cum + shift, size


def interlayer_assignment(a_prev, a_next, k, inward=None):
    """Inter-layer edges of one band as (inner index, outer index) pairs.

    ``inward`` holds the number of edges each inner vertex receives from the
    layer below (1 for every vertex of layer 1, the default). The result is
    sorted by inner index, then outward around the fan, so outer indices are
    cyclically non-decreasing.
    """
    if a_prev < 1 or a_next <= a_prev:
        raise AssignmentError(f"need a_next > a_prev >= 1, got {a_prev}, {a_next}")
    if a_prev == 1:
        return np.column_stack([np.zeros(a_next, dtype=np.int64), np.arange(a_next)])
    if inward is None:
        inward = np.ones(a_prev, dtype=np.int64)
    start, size = _fans(a_prev, a_next, k, inward)
    inner = np.repeat(np.arange(a_prev), size)
    offs = np.arange(inner.size) - np.repeat(np.cumsum(size) - size, size)
    outer = (start[inner] + offs) % a_next
    return np.column_stack([inner, outer])


def next_inward(a_prev, a_next, k, inward):
    """Inward counts of the outer layer: 2 where two fans meet, else 1."""
    if a_prev == 1:
        return np.ones(a_next, dtype=np.int64)
    start, _ = _fans(a_prev, a_next, k, inward)
    out = np.ones(a_next, dtype=np.int64)
    out[start % a_next] = 2
    return out


def _layer_points(radius, count):
    t = 2 * np.pi * np.arange(count) / count
    return np.column_stack([radius * np.cos(t), radius * np.sin(t)])


def generate_euclidean(p, max_vertices=5_000_000):
    """Materialise the mesh for ``p``; k = 6 gives the hexagonal lattice patch."""
    if p.k == 6:
        return hexagonal_patch(p.layers)
    counts = [layer_count(p.k, n) for n in range(p.layers + 1)]
    total = 1 + sum(counts)
    if total > max_vertices:
        raise ValueError(
            f"{total} vertices exceed max_vertices={max_vertices}; "
            "use euclidean_layer_summaries for large layer counts"
        )
    offsets = np.concatenate([[1], 1 + np.cumsum(counts[1:])])
    pos = [np.zeros((1, 2))]
    layer = [np.zeros(1, dtype=np.int64)]
    index = [np.zeros(1, dtype=np.int64)]
    edges, etypes = [], []
    inward = None
    for n in range(1, p.layers + 1):
        a = counts[n]
        off = offsets[n - 1]
        pos.append(_layer_points(p.radius(n), a))
        layer.append(np.full(a, n))
        index.append(np.arange(a))
        j = np.arange(a)
        edges.append(np.column_stack([off + j, off + (j + 1) % a]))
        etypes.append(np.full(a, EdgeType.TYPE1))
        # band from layer n-1 to n
        a_prev = counts[n - 1] if n > 1 else 1
        prev_off = offsets[n - 2] if n > 1 else 0
        pairs = interlayer_assignment(a_prev, a, p.k, inward)
        edges.append(np.column_stack([prev_off + pairs[:, 0], off + pairs[:, 1]]))
        etypes.append(np.full(len(pairs), EdgeType.TYPE2))
        inward = next_inward(a_prev, a, p.k, inward)
    return build_mesh(
        Geometry.EUCLIDEAN,
        np.concatenate(pos),
        np.concatenate(edges),
        etypes=np.concatenate(etypes),
        layer=np.concatenate(layer),
        index=np.concatenate(index),
        sector=np.zeros(total, dtype=np.int64),
        params={"k": p.k, "layers": p.layers, "schedule": p.schedule},
    )


@dataclass
class LayerSummary:
    """Degrees and edge lengths attached to one layer of a streamed construction.

    ``inter_*`` describe the band from this layer outward; ``degree_*`` are
    over this layer's vertices.
    """

    layer: int
    n_vertices: int
    degree_min: int
    degree_max: int
    circumferential: float
    inter_min: float
    inter_max: float
    # degree -> number of vertices on this layer (exact, whole layer)
    degree_counts: dict = None


def euclidean_layer_summaries(p, chunk=5_000_000):
    """Layer-by-layer degrees and edge lengths without materialising the mesh.

    The construction is invariant under rotation by 2 pi / k: every a_n is a
    multiple of k and the band assignment is periodic, so one sector of each
    band determines the rest. Memory stays proportional to a_n / k, which is
    what makes 20 layers at k = 7 (over 10^9 vertices) tractable.
    """
    k = p.k
    if k < 7:
        raise ValueError("streamed summaries need k >= 7")
    counts = [layer_count(k, n) for n in range(p.layers + 2)]
    per = [c // k for c in counts]
    out = []

    r1 = p.radius(1)
    out.append(LayerSummary(0, 1, k, k, float("nan"), r1, r1, {k: 1}))

    def histogram(total, deg):
        vals, cnt = np.unique(deg, return_counts=True)
        for v, c in zip(vals.tolist(), cnt.tolist()):
            total[v] = total.get(v, 0) + k * c

    inward = np.ones(per[1], dtype=np.int8)
    for n in range(1, p.layers + 1):
        a, b = counts[n], per[n]
        radius = p.radius(n)
        circ = 2 * radius * math.sin(math.pi / a)
        if n == p.layers:
            deg = 2 + inward
            hist = {}
            histogram(hist, deg)
            out.append(
                LayerSummary(n, a, int(deg.min()), int(deg.max()), circ, float("nan"), float("nan"), hist)
            )
            break
        b_next = per[n + 1]
        start, size = _fans(b, b_next, k, inward)
        deg_min, deg_max = k, 0
        lo_len, hi_len = math.inf, 0.0
        hist = {}
        r_out = p.radius(n + 1)
        a_next = counts[n + 1]
        for s in range(0, b, chunk):
            i = np.arange(s, min(b, s + chunk))
            d = 2 + inward[i].astype(np.int64) + size[i]
            deg_min = min(deg_min, int(d.min()))
            deg_max = max(deg_max, int(d.max()))
            histogram(hist, d)
            theta = 2 * np.pi * i / a
            first = start[i]
            last = first + size[i] - 1
            nearest = np.clip(np.round(theta * a_next / (2 * np.pi)), first, last)
            for j in (first, last, nearest):
                dphi = 2 * np.pi * j / a_next - theta
                ln = np.sqrt(radius**2 + r_out**2 - 2 * radius * r_out * np.cos(dphi))
                lo_len = min(lo_len, float(ln.min()))
                hi_len = max(hi_len, float(ln.max()))
        out.append(LayerSummary(n, a, deg_min, deg_max, circ, lo_len, hi_len, hist))
        nxt = np.ones(b_next, dtype=np.int8)
        nxt[start % b_next] = 2
        inward = nxt
    return out


def streamed_disk_identity(summaries):
    """(lhs, rhs) of the disk identity from streamed degree counts; the last layer is the boundary."""
    *inner, outer = summaries
    lhs = sum((6 - d) * c for s in inner for d, c in s.degree_counts.items())
    rhs = 6 + sum((d - 4) * c for d, c in outer.degree_counts.items())
    return lhs, rhs


def hexagonal_patch(layers):
    """Unit equilateral hexagonal lattice within combinatorial distance ``layers`` of the origin."""
    if layers < 1:
        raise ValueError("need at least one layer")
    # axial coordinates ring by ring: ring n has 6n vertices, side s, step t
    dirs = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    coords = [(0, 0)]
    layer, index, sector = [0], [0], [-1]
    for n in range(1, layers + 1):
        q, r = n, 0
        i = 0
        for s in range(6):
            dq, dr = dirs[(s + 2) % 6]
            for _ in range(n):
                coords.append((q, r))
                layer.append(n)
                index.append(i)
                sector.append(s)
                q, r = q + dq, r + dr
                i += 1
    ids = {c: i for i, c in enumerate(coords)}
    edges, etypes = [], []
    for (q, r), i in ids.items():
        for dq, dr in dirs[:3]:
            j = ids.get((q + dq, r + dr))
            if j is not None:
                edges.append((i, j))
                same = layer[i] == layer[j]
                etypes.append(EdgeType.TYPE1 if same else EdgeType.TYPE2)
    qr = np.array(coords, dtype=float)
    pos = np.column_stack([qr[:, 0] + 0.5 * qr[:, 1], (math.sqrt(3) / 2) * qr[:, 1]])
    return build_mesh(
        Geometry.EUCLIDEAN,
        pos,
        edges,
        etypes=etypes,
        layer=layer,
        index=index,
        sector=sector,
        params={"k": 6, "layers": layers, "schedule": "lattice"},
    )

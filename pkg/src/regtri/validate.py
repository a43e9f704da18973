"""Combinatorial and geometric checks on meshes.

Every check returns a :class:`ValidationReport`; ``passed`` is true exactly
when the violation list is empty.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from regtri import planar
from regtri.mesh import Geometry, euler_characteristic, vertex_degrees


class NotClosedError(ValueError):
    pass


class NotADiskError(ValueError):
    pass


@dataclass
class ValidationReport:
    check: str
    violations: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self, max_violations=None):
        v = self.violations if max_violations is None else self.violations[:max_violations]
        return {
            "check": self.check,
            "passed": self.passed,
            "n_violations": len(self.violations),
            "violations": [[list(map(int, ids)), diag] for ids, diag in v],
            "summary": self.summary,
        }

    def to_json(self, max_violations=None):
        return json.dumps(self.to_dict(max_violations), sort_keys=True)


def check_regular(m, k):
    """Every non-boundary vertex has degree ``k``; boundary vertices are only reported."""
    deg = vertex_degrees(m)
    interior = ~m.boundary_mask
    bad = np.flatnonzero(interior & (deg != k))
    bdeg = deg[m.boundary_mask]
    hist = {int(d): int(c) for d, c in zip(*np.unique(bdeg, return_counts=True))}
    return ValidationReport(
        "degree",
        [((int(i),), {"degree": int(deg[i])}) for i in bad],
        {
            "k": int(k),
            "n_interior": int(interior.sum()),
            "n_boundary": int(m.boundary_mask.sum()),
            "boundary_degrees": hist,
        },
    )


def euler_report(m, expected=None):
    chi = euler_characteristic(m)
    if expected is None:
        expected = 1 if m.boundary_mask.any() else 2
    viol = [] if chi == expected else [((), {"chi": chi, "expected": expected})]
    return ValidationReport(
        "euler",
        viol,
        {"V": m.n_vertices, "E": m.n_edges, "F": m.n_faces, "chi": chi},
    )


def closed_surface_identity(m):
    """sum(6 - d_i) == 6 * chi on a closed triangulated surface."""
    if m.boundary_mask.any():
        raise NotClosedError(f"mesh has {int(m.boundary_mask.sum())} boundary vertices")
    deg = vertex_degrees(m)
    lhs = int(np.sum(6 - deg))
    rhs = 6 * euler_characteristic(m)
    viol = [] if lhs == rhs else [((), {"lhs": lhs, "rhs": rhs})]
    return ValidationReport("closed", viol, {"lhs": lhs, "rhs": rhs})


def boundary_cycle(m):
    """Boundary vertices in cyclic order; raises NotADiskError unless they form one simple cycle."""
    if m.n_faces == 0:
        raise NotADiskError("mesh has no faces")
    fe = np.stack([m.faces, np.roll(m.faces, -1, axis=1)], axis=2).reshape(-1, 2)
    n = m.n_vertices
    directed = fe[:, 0] * n + fe[:, 1]
    reverse = fe[:, 1] * n + fe[:, 0]
    # a boundary side is a face side whose reverse belongs to no face
    on_boundary = ~np.isin(reverse, directed)
    bsides = fe[on_boundary]
    if bsides.shape[0] == 0:
        raise NotADiskError("mesh is closed")
    # dangling edges (in no face) also disqualify a disk
    face_edges = np.unique(np.sort(fe, axis=1)[:, 0] * n + np.sort(fe, axis=1)[:, 1])
    all_edges = np.sort(m.edges, axis=1)
    if np.unique(all_edges[:, 0] * n + all_edges[:, 1]).size != face_edges.size:
        raise NotADiskError("some edges belong to no face")
    succ = {}
    for a, b in bsides.tolist():
        if a in succ:
            raise NotADiskError(f"boundary pinches at vertex {a}")
        succ[a] = b
    start = next(iter(succ))
    cycle = [start]
    v = succ[start]
    while v != start:
        if v not in succ or len(cycle) > len(succ):
            raise NotADiskError("boundary is not a single cycle")
        cycle.append(v)
        v = succ[v]
    if len(cycle) != len(succ):
        raise NotADiskError(f"boundary has several components ({len(succ) - len(cycle)} extra vertices)")
    return cycle


def disk_identity(m):
    """sum over interior (6 - d) == 6 + sum over boundary (d - 4) on a triangulated disk."""
    chi = euler_characteristic(m)
    if chi != 1:
        raise NotADiskError(f"Euler characteristic is {chi}, not 1")
    boundary_cycle(m)
    deg = vertex_degrees(m)
    b = m.boundary_mask
    lhs = int(np.sum(6 - deg[~b]))
    rhs = 6 + int(np.sum(deg[b] - 4))
    viol = [] if lhs == rhs else [((), {"lhs": lhs, "rhs": rhs})]
    return ValidationReport("disk", viol, {"lhs": lhs, "rhs": rhs, "n_boundary": int(b.sum())})


# -- crossing check ---------------------------------------------------------


def _segment_cells(p, q, ncols):
    """Cells (row-major ids) traversed by each segment, in grid units.

    Returns (segment index, cell id) arrays, one row per visited cell. The
    visited cells are found from the parameters where the segment crosses
    grid lines: between two consecutive crossings it stays in one cell.
    """
    n = p.shape[0]
    d = q - p
    lo = np.minimum(p, q)
    hi = np.maximum(p, q)
    first = np.ceil(lo).astype(np.int64)
    count = np.maximum(np.floor(hi).astype(np.int64) - first + 1, 0)

    segs = [np.arange(n), np.arange(n)]
    ts = [np.zeros(n), np.ones(n)]
    for axis in (0, 1):
        c = count[:, axis]
        tot = int(c.sum())
        if tot == 0:
            continue
        s = np.repeat(np.arange(n), c)
        offs = np.arange(tot) - np.repeat(np.cumsum(c) - c, c)
        line = first[s, axis] + offs
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (line - p[s, axis]) / d[s, axis]
        ok = np.isfinite(t)
        segs.append(s[ok])
        ts.append(np.clip(t[ok], 0.0, 1.0))
    s = np.concatenate(segs)
    t = np.concatenate(ts)
    order = np.lexsort((t, s))
    s = s[order]
    t = t[order]
    same = s[1:] == s[:-1]
    mids = 0.5 * (t[1:] + t[:-1])[same]
    ms = s[1:][same]
    # endpoint cells plus one cell per open interval between crossings
    all_s = np.concatenate([np.arange(n), np.arange(n), ms])
    all_t = np.concatenate([np.zeros(n), np.ones(n), mids])
    pts = p[all_s] + all_t[:, None] * d[all_s]
    ij = np.floor(pts).astype(np.int64)
    cells = ij[:, 0] * ncols + ij[:, 1]
    key = np.unique(cells * n + all_s)
    return key % n, key // n


def _candidate_pairs(reg_seg, reg_cell, chunk):
    """Yield (i, j) segment pairs sharing a cell, at most ~``chunk`` pairs at a time."""
    # registrations arrive sorted by cell
    bounds = np.flatnonzero(np.diff(reg_cell)) + 1
    starts = np.concatenate([[0], bounds])
    ends = np.concatenate([bounds, [reg_cell.size]])
    sizes = ends - starts
    grp_end = np.repeat(ends, sizes)
    partners = grp_end - 1 - np.arange(reg_cell.size)
    cum = np.cumsum(partners)
    lo = 0
    while lo < reg_cell.size:
        base = cum[lo - 1] if lo else 0
        hi = int(np.searchsorted(cum, base + chunk, side="right"))
        hi = max(hi, lo + 1)
        k = partners[lo:hi]
        tot = int(k.sum())
        if tot:
            first = np.repeat(np.arange(lo, hi), k)
            offs = np.arange(tot) - np.repeat(np.cumsum(k) - k, k)
            second = first + 1 + offs
            yield reg_seg[first], reg_seg[second]
        lo = hi


def _classify_mesh_pairs(e, a, b, i, j):
    """Relation codes for edge pairs (i, j); pairs sharing a vertex id take a short path."""
    ei, ej = e[i], e[j]
    s00 = ei[:, 0] == ej[:, 0]
    s01 = ei[:, 0] == ej[:, 1]
    s10 = ei[:, 1] == ej[:, 0]
    s11 = ei[:, 1] == ej[:, 1]
    shared = s00 | s01 | s10 | s11
    code = np.empty(i.size, dtype=np.int8)
    free = ~shared
    if np.any(free):
        fi, fj = i[free], j[free]
        code[free] = planar.classify_pairs(a[fi], b[fi], a[fj], b[fj])
    if np.any(shared):
        si, sj = i[shared], j[shared]
        # common point p, far ends q (of edge i) and r (of edge j)
        i_first = (s00 | s01)[shared]
        j_first = (s00 | s10)[shared]
        p = np.where(i_first[:, None], a[si], b[si])
        q = np.where(i_first[:, None], b[si], a[si])
        r = np.where(j_first[:, None], b[sj], a[sj])
        o = np.atleast_1d(planar.orient_sign(p, q, r))
        same_dir = np.einsum("ij,ij->i", q - p, r - p) > 0
        code[shared] = np.where((o == 0) & same_dir, planar.OVERLAP, planar.SHARE_ENDPOINT)
    return code


_BAD = np.array([planar.PROPER_CROSSING, planar.TOUCH, planar.OVERLAP])


def noncrossing_check(m, cell_size=None, chunk=2_000_000):
    """No two edges cross, touch in an interior point, or overlap.

    Candidate pairs come from a uniform grid: each edge is registered in every
    cell it passes through, and only edges sharing a cell are compared with
    the exact predicates of :mod:`regtri.planar`.

    ``cell_size`` defaults to the 5th percentile of edge lengths, which keeps
    the work near-linear on meshes whose edge lengths vary by orders of
    magnitude.
    """
    if not m.geometry.planar:
        raise ValueError(f"crossing check needs a planar mesh, got {m.geometry.value}")
    pos = m.positions
    e = m.edges
    a = pos[e[:, 0]]
    b = pos[e[:, 1]]
    lengths = np.hypot(*(b - a).T)
    if cell_size is None:
        cell_size = float(np.quantile(lengths, 0.05)) if lengths.size else 1.0
        cell_size = max(cell_size, 1e-9 * float(np.ptp(pos, axis=0).max() or 1.0))
    origin = pos.min(axis=0) - 0.5 * cell_size * (1 + np.sqrt(5) / 10)
    pa = (a - origin) / cell_size
    pb = (b - origin) / cell_size
    ncols = int(np.ceil(max(pa[:, 1].max(initial=0), pb[:, 1].max(initial=0)))) + 2
    reg_seg, reg_cell = _segment_cells(pa, pb, ncols)

    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    found = []
    n_candidates = 0
    for i, j in _candidate_pairs(reg_seg, reg_cell, chunk):
        keep = np.all(lo[i] <= hi[j], axis=1) & np.all(lo[j] <= hi[i], axis=1)
        i, j = i[keep], j[keep]
        n_candidates += i.size
        if not i.size:
            continue
        code = _classify_mesh_pairs(e, a, b, i, j)
        bad = np.isin(code, _BAD)
        if np.any(bad):
            ii, jj = np.minimum(i[bad], j[bad]), np.maximum(i[bad], j[bad])
            found.append(np.stack([ii, jj, code[bad]], axis=1))

    violations = []
    if found:
        rows = np.unique(np.concatenate(found), axis=0)
        for i, j, c in rows.tolist():
            violations.append(
                (
                    (i, j),
                    {
                        "relation": planar.RELATIONS[c].value,
                        "edges": [e[i].tolist(), e[j].tolist()],
                    },
                )
            )
    return ValidationReport(
        "crossing",
        violations,
        {
            "n_edges": int(e.shape[0]),
            "cell_size": cell_size,
            "registrations": int(reg_seg.size),
            "candidate_pairs": int(n_candidates),
        },
    )


def feasibility(k, g):
    """Counts of a k-regular triangulation of the closed orientable genus-g surface.

    For k != 6 the counts are forced by Euler's formula and kV = 2E = 3F:
    V = 6 chi / (6 - k), E = 3 k chi / (6 - k), F = 2 k chi / (6 - k), and the
    surface is feasible when (k - 6) divides 12(g - 1) with V a positive
    integer. For k = 6 only the torus qualifies and the size is free.

    These are count conditions only. ``simple`` additionally reports whether
    V >= k + 1, without which no simplicial (multi-edge free) realisation exists.
    """
    if k < 3 or g < 0:
        raise ValueError("need k >= 3 and g >= 0")
    chi = 2 - 2 * g
    if k == 6:
        return {"feasible": g == 1, "V": None, "E": None, "F": None, "chi": chi, "simple": g == 1}
    divides = (12 * (g - 1)) % (k - 6) == 0
    num = 6 * chi
    if not divides or num % (6 - k) or num // (6 - k) <= 0:
        return {"feasible": False, "V": None, "E": None, "F": None, "chi": chi, "simple": False}
    v = num // (6 - k)
    e = 3 * k * chi // (6 - k)
    f = 2 * k * chi // (6 - k)
    # kV = 3F = 2E, and the count condition F + (4 - k) V = 8 (1 - g)
    assert k * v == 2 * e == 3 * f
    assert f + (4 - k) * v == 8 * (1 - g)
    assert v - e + f == chi
    return {"feasible": True, "V": v, "E": e, "F": f, "chi": chi, "simple": v >= k + 1}

"""Per-layer measurements of generated meshes and power-law fits."""

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from regtri import kernel
from regtri.mesh import EdgeType, Geometry


@dataclass
class LayerStats:
    layer: int
    # etype name -> {"count", "min", "max", "mean"}
    edges: dict = field(default_factory=dict)
    min_angle: float = float("nan")
    area: float = float("nan")


@dataclass
class SlopeFit:
    exponent: float
    intercept: float
    r2: float
    range: tuple


def edge_lengths(m):
    """Geodesic length of every edge under the mesh's own metric."""
    p = m.positions[m.edges[:, 0]]
    q = m.positions[m.edges[:, 1]]
    return _dist(m.geometry, p, q)


def _dist(geometry, p, q):
    if geometry is Geometry.HYPERBOLIC:
        return kernel.hyp_distance(p, q)
    if geometry is Geometry.SPHERICAL:
        from regtri.sphere import spherical_edge_length

        return spherical_edge_length(p, q)
    if geometry is Geometry.EUCLIDEAN:
        return np.hypot(*(q - p).T)
    raise ValueError(f"no metric for {geometry.value} meshes")


def face_angles(m):
    """(F, 3) array of interior angles, from side lengths only."""
    f = m.faces
    pos = m.positions
    a = _dist(m.geometry, pos[f[:, 1]], pos[f[:, 2]])
    b = _dist(m.geometry, pos[f[:, 2]], pos[f[:, 0]])
    c = _dist(m.geometry, pos[f[:, 0]], pos[f[:, 1]])
    if m.geometry is Geometry.HYPERBOLIC:
        angles = kernel.angles_from_sides(a, b, c)
    elif m.geometry is Geometry.EUCLIDEAN:
        angles = _euclidean_angles(a, b, c)
    else:
        angles = _spherical_angles(a, b, c)
    return np.column_stack(angles)


def _euclidean_angles(a, b, c):
    def opposite(x, y, z):
        s2 = (z - x + y) * (z + x - y) / (4 * x * y)
        return 2 * np.arcsin(np.sqrt(np.clip(s2, 0.0, 1.0)))

    return opposite(b, c, a), opposite(c, a, b), opposite(a, b, c)


def _spherical_angles(a, b, c):
    def opposite(x, y, z):
        s2 = np.sin((z - x + y) / 2) * np.sin((z + x - y) / 2) / (np.sin(x) * np.sin(y))
        return 2 * np.arcsin(np.sqrt(np.clip(s2, 0.0, 1.0)))

    return opposite(b, c, a), opposite(c, a, b), opposite(a, b, c)


def face_areas(m):
    ang = face_angles(m)
    if m.geometry is Geometry.HYPERBOLIC:
        return np.pi - ang.sum(axis=1)
    if m.geometry is Geometry.SPHERICAL:
        return ang.sum(axis=1) - np.pi
    pos = m.positions
    a, b, c = (pos[m.faces[:, i]] for i in range(3))
    return 0.5 * np.abs((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))


def _group_reduce(keys, values, n):
    mins = np.full(n, np.inf)
    maxs = np.full(n, -np.inf)
    np.minimum.at(mins, keys, values)
    np.maximum.at(maxs, keys, values)
    counts = np.bincount(keys, minlength=n)
    sums = np.bincount(keys, weights=values, minlength=n)
    return counts, mins, maxs, sums


def edge_length_stats(m, angles=True):
    """Length statistics per (layer, edge type), plus per-layer minimum angle and area.

    An edge belongs to the smaller layer of its endpoints; a triangle to the
    layer of its innermost vertex.
    """
    lengths = edge_lengths(m)
    elayer = m.edge_layers()
    n_layers = int(m.layer.max()) + 1 if m.n_vertices else 0
    stats = [LayerStats(layer=n) for n in range(n_layers)]
    for et in np.unique(m.etypes):
        sel = m.etypes == et
        counts, mins, maxs, sums = _group_reduce(elayer[sel], lengths[sel], n_layers)
        name = EdgeType(int(et)).name.lower()
        for n in np.flatnonzero(counts):
            stats[n].edges[name] = {
                "count": int(counts[n]),
                "min": float(mins[n]),
                "max": float(maxs[n]),
                "mean": float(sums[n] / counts[n]),
            }
    if angles and m.n_faces:
        flayer = m.face_layers()
        ang = face_angles(m).min(axis=1)
        counts, mins, _, _ = _group_reduce(flayer, ang, n_layers)
        areas = np.bincount(flayer, weights=face_areas(m), minlength=n_layers)
        for n in np.flatnonzero(counts):
            stats[n].min_angle = float(mins[n])
            stats[n].area = float(areas[n])
    return stats


def max_length_series(m, etype=None):
    """[(layer, max length)] over edges of the given type."""
    lengths = edge_lengths(m)
    elayer = m.edge_layers()
    sel = np.ones(m.n_edges, bool) if etype is None else m.etypes == int(etype)
    n_layers = int(m.layer.max()) + 1
    _, _, maxs, _ = _group_reduce(elayer[sel], lengths[sel], n_layers)
    return [(int(n), float(maxs[n])) for n in range(n_layers) if np.isfinite(maxs[n])]


def min_angle_series(m):
    """[(layer, smallest angle of a triangle whose innermost vertex is on that layer)]."""
    flayer = m.face_layers()
    ang = face_angles(m).min(axis=1)
    n_layers = int(m.layer.max()) + 1
    counts, mins, _, _ = _group_reduce(flayer, ang, n_layers)
    return [(int(n), float(mins[n])) for n in np.flatnonzero(counts)]


def loglog_slope(series, n_lo=None, n_hi=None):
    """Least-squares fit of log(value) against log(n) for n in [n_lo, n_hi]."""
    n = np.array([p[0] for p in series], dtype=float)
    v = np.array([p[1] for p in series], dtype=float)
    n_lo = n.min() if n_lo is None else n_lo
    n_hi = n.max() if n_hi is None else n_hi
    if not n_hi > n_lo >= 1:
        raise ValueError(f"need n_hi > n_lo >= 1, got [{n_lo}, {n_hi}]")
    sel = (n >= n_lo) & (n <= n_hi)
    if np.any(v[sel] <= 0):
        raise ValueError("log-log fit needs strictly positive values")
    if sel.sum() < 2:
        raise ValueError("need at least two points in range")
    x = np.log(n[sel])
    y = np.log(v[sel])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - np.sum(resid**2) / ss_tot if ss_tot > 0 else 1.0
    return SlopeFit(float(slope), float(intercept), float(min(max(r2, 0.0), 1.0)), (n_lo, n_hi))


def area_conservation(m):
    """Total area two ways: per-triangle Gauss-Bonnet sums vs pi*F minus all angles grouped by vertex."""
    if m.geometry is not Geometry.HYPERBOLIC:
        raise ValueError("area conservation is defined for hyperbolic meshes")
    ang = face_angles(m)
    per_triangle = float(np.sum(np.pi - ang.sum(axis=1)))
    at_vertex = np.bincount(m.faces.ravel(), weights=ang.ravel(), minlength=m.n_vertices)
    total = float(np.pi * m.n_faces - np.sum(at_vertex))
    return {"sum_of_triangles": per_triangle, "gauss_bonnet_total": total}


CSV_COLUMNS = ("layer", "etype", "count", "min", "max", "mean", "min_angle", "area")


def stats_rows(stats):
    for s in stats:
        for et, d in sorted(s.edges.items()):
            yield (s.layer, et, d["count"], d["min"], d["max"], d["mean"], s.min_angle, s.area)


def stats_to_csv(stats, fit=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in stats_rows(stats):
        w.writerow([repr(x) if isinstance(x, float) else x for x in row])
    if fit is not None:
        w.writerow(["fit", "exponent", fit.exponent, "intercept", fit.intercept, "r2", fit.r2, f"{fit.range[0]}:{fit.range[1]}"])
    return buf.getvalue()


def stats_to_json(stats, fit=None):
    def clean(x):
        return None if isinstance(x, float) and not np.isfinite(x) else x

    rows = [dict(zip(CSV_COLUMNS, map(clean, r))) for r in stats_rows(stats)]
    out = {"rows": rows}
    if fit is not None:
        out["fit"] = asdict(fit)
    return json.dumps(out, sort_keys=True)

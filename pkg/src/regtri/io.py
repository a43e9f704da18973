"""MeshFile JSON serialisation and SVG rendering."""

import json
import os
import tempfile

import numpy as np

from regtri.kernel import klein_to_poincare
from regtri.mesh import Geometry, build_mesh

FORMAT_VERSION = "1"

MODEL_NAMES = {
    Geometry.EUCLIDEAN: "Euclidean",
    Geometry.SPHERICAL: "Spherical",
    Geometry.HYPERBOLIC: "Hyperbolic",
    Geometry.COMBINATORIAL: "Combinatorial",
}
MODELS = {v: k for k, v in MODEL_NAMES.items()}


class MeshFormatError(ValueError):
    """File is not a well-formed MeshFile."""


def _num(x):
    # 17 significant digits round-trip every double exactly
    s = format(float(x), ".17g")
    if s in ("nan", "inf", "-inf"):
        raise MeshFormatError(f"non-finite coordinate {s}")
    return s


def dumps(m):
    """MeshFile text for ``m``; one vertex, edge or face per line."""
    header = {"format_version": FORMAT_VERSION, "model": MODEL_NAMES[m.geometry], "params": m.params}
    lines = ["{", f'"header": {json.dumps(header, sort_keys=True)},', '"vertices": [']
    pos = m.positions
    rows = []
    for i in range(m.n_vertices):
        coords = "[]" if pos is None else "[" + ", ".join(_num(c) for c in pos[i]) + "]"
        row = f'{{"id": {i}, "coords": {coords}, "layer": {int(m.layer[i])}, "index": {int(m.index[i])}'
        if m.sector[i] >= 0:
            row += f', "sector": {int(m.sector[i])}'
        rows.append(row + "}")
    lines.append(",\n".join(rows))
    lines.append("],")
    lines.append('"edges": [')
    lines.append(
        ",\n".join(f'{{"u": {u}, "v": {v}, "etype": {t}}}' for (u, v), t in zip(m.edges.tolist(), m.etypes.tolist()))
    )
    lines.append("],")
    lines.append('"faces": [')
    lines.append(",\n".join(f"[{a}, {b}, {c}]" for a, b, c in m.faces.tolist()))
    lines.append("]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads(text):
    """Parse MeshFile text back into a checked :class:`Mesh`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MeshFormatError(f"invalid JSON: {e}") from None
    try:
        header = doc["header"]
        if header["format_version"] != FORMAT_VERSION:
            raise MeshFormatError(f"unsupported format_version {header['format_version']!r}")
        geometry = MODELS[header["model"]]
        params = header.get("params", {})
        verts = doc["vertices"]
        if [v["id"] for v in verts] != list(range(len(verts))):
            raise MeshFormatError("vertex ids must be dense 0..V-1 in order")
        layer = [v["layer"] for v in verts]
        index = [v["index"] for v in verts]
        sector = [v.get("sector", -1) for v in verts]
        edges = [(e["u"], e["v"]) for e in doc["edges"]]
        etypes = [e["etype"] for e in doc["edges"]]
        faces = np.asarray(doc["faces"], dtype=np.int64).reshape(-1, 3)
        if geometry is Geometry.COMBINATORIAL:
            vertices = len(verts)
        else:
            vertices = np.array([v["coords"] for v in verts], dtype=float)
    except MeshFormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise MeshFormatError(f"malformed MeshFile: {type(e).__name__}: {e}") from None
    try:
        return build_mesh(
            geometry,
            vertices,
            edges,
            etypes=etypes,
            layer=layer,
            index=index,
            sector=sector,
            faces=faces,
            params=params,
        )
    except ValueError as e:
        raise MeshFormatError(f"inconsistent mesh: {e}") from None


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(m, path):
    _atomic_write(path, dumps(m))


def load(path):
    with open(path, encoding="utf-8") as f:
        return loads(f.read())


# -- SVG --------------------------------------------------------------------

DISK_MODELS = ("klein", "poincare")
SAGITTA_EPS = 1e-9


def _f(x):
    s = format(float(x), ".9g")
    return "0" if s == "-0" else s


def _arcs(u, v):
    """Vectorised orthogonal-circle centres, radii and a straight-line mask."""
    det = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    bu = (np.einsum("ij,ij->i", u, u) + 1) / 2
    bv = (np.einsum("ij,ij->i", v, v) + 1) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        # c.u = (|u|^2 + 1)/2 and c.v = (|v|^2 + 1)/2
        c = np.column_stack([bu * v[:, 1] - bv * u[:, 1], bv * u[:, 0] - bu * v[:, 0]]) / det[:, None]
        rad = np.sqrt(np.einsum("ij,ij->i", c, c) - 1)
        half = np.hypot(*(u - v).T) / 2
        sagitta = rad - np.sqrt(np.maximum(rad * rad - half * half, 0.0))
    straight = (det == 0.0) | ~np.isfinite(sagitta) | (sagitta < SAGITTA_EPS)
    return c, rad, straight


def poincare_arc(u, v):
    """Circle (centre, radius) through Poincare points u, v orthogonal to the unit circle.

    Returns None when the geodesic is (numerically) a straight segment.
    """
    c, rad, straight = _arcs(np.atleast_2d(np.asarray(u, float)), np.atleast_2d(np.asarray(v, float)))
    return None if straight[0] else (c[0], float(rad[0]))


def render_svg(m, disk_model="klein", stroke_width=None):
    """SVG text of the mesh's edges, in edge order.

    Hyperbolic meshes are drawn in the unit disk with straight chords (Klein)
    or circular arcs (Poincare); Euclidean meshes get a fitted viewBox.
    """
    if m.geometry is Geometry.HYPERBOLIC:
        if disk_model not in DISK_MODELS:
            raise ValueError(f"disk model must be one of {DISK_MODELS}")
        box = (-1.05, -1.05, 2.1, 2.1)
        pos = m.positions if disk_model == "klein" else klein_to_poincare(m.positions)
    elif m.geometry is Geometry.EUCLIDEAN:
        pos = m.positions
        lo, hi = pos.min(axis=0), pos.max(axis=0)
        span = float(max(hi - lo)) or 1.0
        pad = 0.05 * span
        box = (lo[0] - pad, -hi[1] - pad, span + 2 * pad, span + 2 * pad)
    else:
        raise ValueError(f"cannot render {m.geometry.value} meshes")
    sw = stroke_width if stroke_width is not None else box[2] / 1500
    # SVG y axis points down
    pts = np.column_stack([pos[:, 0], -pos[:, 1]])
    a = pts[m.edges[:, 0]]
    b = pts[m.edges[:, 1]]
    if m.geometry is Geometry.HYPERBOLIC and disk_model == "poincare":
        c, rad, straight = _arcs(a, b)
        c[straight] = 0.0
        cross = (a[:, 0] - c[:, 0]) * (b[:, 1] - c[:, 1]) - (a[:, 1] - c[:, 1]) * (b[:, 0] - c[:, 0])
        sweep = (cross > 0).astype(int).tolist()
    else:
        straight = np.ones(len(a), bool)
        rad = np.zeros(len(a))
        sweep = [0] * len(a)

    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{" ".join(_f(x) for x in box)}">',
        f'<g fill="none" stroke="black" stroke-width="{_f(sw)}">',
    ]
    if m.geometry is Geometry.HYPERBOLIC:
        out.append('<circle cx="0" cy="0" r="1" stroke="gray"/>')
    for (x1, y1), (x2, y2), line, r, sw_flag in zip(a.tolist(), b.tolist(), straight.tolist(), rad.tolist(), sweep):
        if line:
            out.append(f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>')
        else:
            out.append(f'<path d="M {_f(x1)} {_f(y1)} A {_f(r)} {_f(r)} 0 0 {sw_flag} {_f(x2)} {_f(y2)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def save_svg(text, path):
    _atomic_write(path, text)

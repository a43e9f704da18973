"""Hyperbolic plane primitives in the Klein disk model.

Points are stored as Klein coordinates inside the open unit disk. Geodesics
are straight Euclidean chords there, so every incidence question reduces to
planar geometry (see :mod:`regtri.planar`).

Most functions accept either a single point or an array of points whose last
axis has length 2 and broadcast over the leading axes.
"""

from typing import NamedTuple

import numpy as np

from regtri import planar
from regtri.planar import SegmentRelation

EPS_PT = 1e-12
COLLINEAR_EPS = 1e-14


class DomainError(ValueError):
    """A coordinate lies on or outside the unit circle."""


class DegenerateTriangleError(ValueError):
    pass


class HPoint(NamedTuple):
    x: float
    y: float

    def __array__(self, dtype=None, copy=None):
        return np.array((self.x, self.y), dtype=dtype)


class HSegment(NamedTuple):
    a: HPoint
    b: HPoint


def _as_points(p):
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 2:
        raise ValueError(f"expected points with 2 coordinates, got shape {p.shape}")
    return p


def _two_square(x):
    """x*x as an unevaluated sum hi + lo (Dekker split, exact)."""
    c = 134217729.0 * x  # 2**27 + 1
    xh = c - (c - x)
    xl = x - xh
    hi = x * x
    lo = ((xh * xh - hi) + 2 * xh * xl) + xl * xl
    return hi, lo


def _one_minus_norm2(p):
    """1 - |p|^2 with compensated arithmetic, checked against the open disk."""
    x, y = p[..., 0], p[..., 1]
    if np.any(np.hypot(x, y) >= 1.0):
        raise DomainError("point outside the open unit disk")
    xh, xl = _two_square(x)
    yh, yl = _two_square(y)
    # two-sum of 1 - xh, then - yh, then fold in the low parts
    s = 1.0 - xh
    bv = s - 1.0
    err = (1.0 - (s - bv)) + (-xh - bv)
    t = s - yh
    bv = t - s
    err = err + ((s - (t - bv)) + (-yh - bv))
    w = t + (err - xl - yl)
    if np.any(w <= 0.0):
        raise DomainError("point outside the open unit disk")
    return w


def hyp_distance(p, q):
    """Hyperbolic distance between Klein points.

    Uses sinh^2 d = (|d|^2 (1-|p|^2) + (p.d)^2) / ((1-|p|^2)(1-|q|^2)) with
    d = q - p. By Lagrange's identity this equals the usual cosh form, but
    every term is non-negative, so short edges and points near the boundary
    keep full relative precision.
    """
    p = _as_points(p)
    q = _as_points(q)
    wp = _one_minus_norm2(p)
    wq = _one_minus_norm2(q)
    dx = q[..., 0] - p[..., 0]
    dy = q[..., 1] - p[..., 1]
    dot = p[..., 0] * dx + p[..., 1] * dy
    num = (dx * dx + dy * dy) * wp + dot * dot
    d = np.arcsinh(np.sqrt(num / (wp * wq)))
    return d if np.ndim(d) else float(d)


def radial_point(r, theta):
    """Klein point at hyperbolic distance ``r`` from the origin in direction ``theta``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be non-negative")
    rho = np.tanh(r)
    out = np.stack(np.broadcast_arrays(rho * np.cos(theta), rho * np.sin(theta)), axis=-1)
    if out.ndim == 1:
        return HPoint(float(out[0]), float(out[1]))
    return out


def klein_to_poincare(p):
    p = _as_points(p)
    w = _one_minus_norm2(p)
    out = p / (1.0 + np.sqrt(w))[..., None]
    return HPoint(*out.tolist()) if out.ndim == 1 else out


def poincare_to_klein(u):
    u = _as_points(u)
    w = _one_minus_norm2(u)
    out = 2.0 * u / (2.0 - w)[..., None]
    return HPoint(*out.tolist()) if out.ndim == 1 else out


def poincare_distance(u, v):
    """Distance between Poincare-disk points: sinh(d/2) = |u-v| / sqrt((1-|u|^2)(1-|v|^2))."""
    u = _as_points(u)
    v = _as_points(v)
    wu = _one_minus_norm2(u)
    wv = _one_minus_norm2(v)
    diff = np.hypot(u[..., 0] - v[..., 0], u[..., 1] - v[..., 1])
    d = 2.0 * np.arcsinh(diff / np.sqrt(wu * wv))
    return d if np.ndim(d) else float(d)


def angles_from_sides(a, b, c):
    """Angles opposite sides ``a``, ``b``, ``c`` of a hyperbolic triangle.

    This is the law of cosines cos C = (cosh a cosh b - cosh c)/(sinh a sinh b)
    written in half-angle form,
    sin^2(C/2) = sinh((c-a+b)/2) sinh((c+a-b)/2) / (sinh a sinh b),
    which stays accurate for skinny triangles.
    """
    a, b, c = (np.asarray(s, dtype=float) for s in (a, b, c))

    def opposite(x, y, z):
        s2 = np.sinh((z - x + y) / 2) * np.sinh((z + x - y) / 2) / (np.sinh(x) * np.sinh(y))
        return 2.0 * np.arcsin(np.sqrt(np.clip(s2, 0.0, 1.0)))

    return opposite(b, c, a), opposite(c, a, b), opposite(a, b, c)


def _check_triangle(a, b, c):
    a, b, c = (_as_points(v) for v in (a, b, c))
    la, lb, lc = hyp_distance(b, c), hyp_distance(c, a), hyp_distance(a, b)
    if np.any(np.minimum(np.minimum(la, lb), lc) < EPS_PT):
        raise DegenerateTriangleError("triangle has coincident vertices")
    cross = (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (
        c[..., 0] - a[..., 0]
    )
    if np.any(np.abs(cross) < COLLINEAR_EPS):
        raise DegenerateTriangleError("triangle vertices are collinear")
    return la, lb, lc


def triangle_angles(a, b, c):
    """Interior angles at ``a``, ``b``, ``c``."""
    la, lb, lc = _check_triangle(a, b, c)
    angles = angles_from_sides(la, lb, lc)
    if np.ndim(angles[0]) == 0:
        return tuple(float(t) for t in angles)
    return angles


def triangle_area(a, b, c):
    """Area by Gauss-Bonnet: pi minus the angle sum."""
    al, be, ga = triangle_angles(a, b, c)
    return np.pi - (al + be + ga)


def right_hypotenuse(a, b):
    """Hypotenuse of a right triangle with legs ``a`` and ``b`` (cosh c = cosh a cosh b)."""
    if a < 0 or b < 0:
        raise ValueError("legs must be non-negative")
    # cosh c - 1 = (cosh a - 1) + (cosh b - 1) + (cosh a - 1)(cosh b - 1)
    ca = 2 * np.sinh(a / 2) ** 2
    cb = 2 * np.sinh(b / 2) ** 2
    t = ca + cb + ca * cb
    return float(2 * np.arcsinh(np.sqrt(t / 2)))


def segment_intersect(s1, s2):
    """Classify two geodesic segments; Klein geodesics are chords, so this is planar."""
    (a, b), (c, d) = s1, s2
    return planar.classify_segments(a, b, c, d, eps=EPS_PT)


__all__ = [
    "EPS_PT",
    "DomainError",
    "DegenerateTriangleError",
    "HPoint",
    "HSegment",
    "SegmentRelation",
    "hyp_distance",
    "radial_point",
    "klein_to_poincare",
    "poincare_to_klein",
    "poincare_distance",
    "angles_from_sides",
    "triangle_angles",
    "triangle_area",
    "right_hypotenuse",
    "segment_intersect",
]

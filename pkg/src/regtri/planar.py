"""Planar predicates: orientation signs and segment-pair classification.

Orientation uses a floating-point filter with Shewchuk's static error bound;
any determinant the filter cannot certify is recomputed exactly with
:class:`fractions.Fraction`, so the returned signs are exact for the given
double-precision inputs.
"""

import enum
from fractions import Fraction

import numpy as np

_EPS = 2.0**-53
_CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS


class SegmentRelation(enum.Enum):
    DISJOINT = "disjoint"
    SHARE_ENDPOINT = "share-endpoint"
    PROPER_CROSSING = "proper-crossing"
    # an endpoint of one segment lies in the relative interior of the other
    TOUCH = "touch"
    OVERLAP = "overlap"


# integer codes used by the vectorised classifier
DISJOINT, SHARE_ENDPOINT, PROPER_CROSSING, TOUCH, OVERLAP = range(5)
RELATIONS = (
    SegmentRelation.DISJOINT,
    SegmentRelation.SHARE_ENDPOINT,
    SegmentRelation.PROPER_CROSSING,
    SegmentRelation.TOUCH,
    SegmentRelation.OVERLAP,
)


def _orient_exact(ax, ay, bx, by, cx, cy):
    ax, ay, bx, by, cx, cy = (Fraction(float(v)) for v in (ax, ay, bx, by, cx, cy))
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (det > 0) - (det < 0)


def orient_sign(a, b, c):
    """Exact sign of the signed area of (a, b, c): +1 ccw, -1 cw, 0 collinear.

    Broadcasts over leading axes of point arrays shaped (..., 2).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    a, b, c = np.broadcast_arrays(a, b, c)
    acx = a[..., 0] - c[..., 0]
    bcy = b[..., 1] - c[..., 1]
    acy = a[..., 1] - c[..., 1]
    bcx = b[..., 0] - c[..., 0]
    left = acx * bcy
    right = acy * bcx
    det = left - right
    bound = _CCW_ERRBOUND * (np.abs(left) + np.abs(right))
    sign = np.sign(det).astype(np.int8)
    # float differences are exactly zero iff the operands are equal, so a zero
    # factor on both sides certifies a zero determinant
    exact_zero = ((acx == 0) | (bcy == 0)) & ((acy == 0) | (bcx == 0))
    unsure = (np.abs(det) <= bound) & ~exact_zero
    if np.any(unsure):
        sign = np.array(sign, copy=True)
        if sign.ndim == 0:
            return _orient_exact(*a, *b, *c)
        for idx in zip(*np.nonzero(unsure)):
            sign[idx] = _orient_exact(*a[idx], *b[idx], *c[idx])
    return sign if sign.ndim else int(sign)


def _on_closed_segment(p, q, r):
    """For collinear p, q, r: is r within the bounding box of segment pq?"""
    return (
        (np.minimum(p[..., 0], q[..., 0]) <= r[..., 0])
        & (r[..., 0] <= np.maximum(p[..., 0], q[..., 0]))
        & (np.minimum(p[..., 1], q[..., 1]) <= r[..., 1])
        & (r[..., 1] <= np.maximum(p[..., 1], q[..., 1]))
    )


def _close(p, q, eps):
    dx = p[..., 0] - q[..., 0]
    dy = p[..., 1] - q[..., 1]
    return dx * dx + dy * dy <= eps * eps


def classify_pairs(a, b, c, d, eps=1e-12):
    """Vectorised classification of segment pairs (a-b) vs (c-d).

    Returns an int8 array of relation codes (see ``RELATIONS``).
    """
    a, b, c, d = (np.atleast_2d(np.asarray(v, dtype=float)) for v in (a, b, c, d))
    n = a.shape[0]
    out = np.full(n, DISJOINT, dtype=np.int8)

    ac, ad, bc, bd = _close(a, c, eps), _close(a, d, eps), _close(b, c, eps), _close(b, d, eps)
    same = (ac & bd) | (ad & bc)
    shared = ac | ad | bc | bd

    o1 = orient_sign(a, b, c)
    o2 = orient_sign(a, b, d)
    o3 = orient_sign(c, d, a)
    o4 = orient_sign(c, d, b)
    o1, o2, o3, o4 = (np.atleast_1d(o) for o in (o1, o2, o3, o4))
    collinear = (o1 == 0) & (o2 == 0)

    # collinear pairs: compare parameter intervals along the dominant axis
    if np.any(collinear):
        idx = np.nonzero(collinear)[0]
        dirv = b[idx] - a[idx]
        axis = (np.abs(dirv[:, 1]) > np.abs(dirv[:, 0])).astype(int)
        pa, pb = a[idx, axis], b[idx, axis]
        pc, pd = c[idx, axis], d[idx, axis]
        lo1, hi1 = np.minimum(pa, pb), np.maximum(pa, pb)
        lo2, hi2 = np.minimum(pc, pd), np.maximum(pc, pd)
        overlap_len = np.minimum(hi1, hi2) - np.maximum(lo1, lo2)
        rel = np.where(
            overlap_len > eps,
            OVERLAP,
            np.where(shared[idx], SHARE_ENDPOINT, np.where(overlap_len >= 0, TOUCH, DISJOINT)),
        )
        out[idx] = rel

    gen = ~collinear
    proper = gen & (o1 * o2 < 0) & (o3 * o4 < 0)
    touch = gen & ~proper & (o1 * o2 <= 0) & (o3 * o4 <= 0)
    # a zero orientation only counts as contact if the point is on the closed segment
    t = np.flatnonzero(touch)
    if t.size:
        at, bt, ct, dt = a[t], b[t], c[t], d[t]
        touch[t] = (
            ((o1[t] == 0) & _on_closed_segment(at, bt, ct))
            | ((o2[t] == 0) & _on_closed_segment(at, bt, dt))
            | ((o3[t] == 0) & _on_closed_segment(ct, dt, at))
            | ((o4[t] == 0) & _on_closed_segment(ct, dt, bt))
        )
    out[proper] = PROPER_CROSSING
    out[touch] = TOUCH
    # non-collinear segments with a common endpoint meet only there
    out[gen & shared] = SHARE_ENDPOINT
    out[same] = OVERLAP
    return out


def classify_segments(a, b, c, d, eps=1e-12):
    """Classify the pair of closed segments a-b and c-d."""
    code = classify_pairs(a, b, c, d, eps=eps)[0]
    return RELATIONS[code]

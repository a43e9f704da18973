"""Six-regular geodesic triangulation of the hyperbolic plane.

Layer ``n`` is the hyperbolic circle of radius ``r_n`` about the origin and
carries ``6n`` vertices. Inside each of the six sectors of angle pi/3 the
vertices are

    v_n^k = tanh(r_n) * exp(i k pi / (3n)),   k = 0, ..., n,

and v_n^k is joined to v_{n+1}^k and v_{n+1}^{k+1}. Vertices with k = 0 (or
k = n) sit on the sector rays and are shared by neighbouring sectors.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from regtri.kernel import radial_point
from regtri.mesh import EdgeType, Geometry, build_mesh


class ScheduleError(ValueError):
    """Radius schedule is invalid or failed validation."""


@dataclass(frozen=True)
class RadiusSchedule:
    """Layer radii: explicit ``bootstrap`` values for n <= B, then alpha * ln(n).

    An empty bootstrap gives the bare logarithmic rule, whose first layer has
    radius zero; such a schedule can be analysed but never passes
    :func:`validate_schedule`.
    """

    alpha: float
    bootstrap: tuple = ()

    def __post_init__(self):
        if not 0.0 < self.alpha < 0.5:
            raise ScheduleError(f"alpha must lie in (0, 1/2), got {self.alpha}")
        b = tuple(float(x) for x in self.bootstrap)
        object.__setattr__(self, "bootstrap", b)
        if b:
            if b[0] <= 0:
                raise ScheduleError("first bootstrap radius must be positive")
            if any(y <= x for x, y in zip(b, b[1:])):
                raise ScheduleError("bootstrap radii must be strictly increasing")
            if self.alpha * math.log(len(b) + 1) <= b[-1]:
                raise ScheduleError(
                    f"bootstrap does not splice into the log rule: "
                    f"alpha*ln({len(b) + 1}) <= {b[-1]}"
                )

    @classmethod
    def default(cls, alpha=0.45, n_bootstrap=3):
        """Bootstrap r_n = alpha * ln(n + 1/2) for n <= 3, then alpha * ln(n)."""
        return cls(alpha, tuple(alpha * math.log(n + 0.5) for n in range(1, n_bootstrap + 1)))

    @classmethod
    def pure(cls, alpha):
        return cls(alpha, ())

    def radius(self, n):
        return layer_radius(self, n)

    def radii(self, n_max):
        """Radii r_1..r_n_max as an array (index 0 is layer 1)."""
        n = np.arange(1, n_max + 1, dtype=float)
        r = self.alpha * np.log(n)
        nb = min(len(self.bootstrap), n_max)
        r[:nb] = self.bootstrap[:nb]
        return r


def layer_radius(s, n):
    if n < 1:
        raise ValueError("layers are numbered from 1")
    if n <= len(s.bootstrap):
        return s.bootstrap[n - 1]
    return s.alpha * math.log(n)


def sector_vertices(s, n):
    """The n + 1 Klein points v_n^0 .. v_n^n of the first sector."""
    k = np.arange(n + 1)
    return radial_point(layer_radius(s, n), k * np.pi / (3 * n))


def _margins(s, n):
    n = np.asarray(n, dtype=float)
    r = np.where(n <= len(s.bootstrap), 0.0, s.alpha * np.log(n))
    r1 = np.where(n + 1 <= len(s.bootstrap), 0.0, s.alpha * np.log(n + 1))
    for i, b in enumerate(s.bootstrap, start=1):
        r = np.where(n == i, b, r)
        r1 = np.where(n + 1 == i, b, r1)
    # 1 - cos x = 2 sin^2(x/2) avoids cancellation at large n
    gap = 2 * np.sin(np.pi / (12 * n)) ** 2
    gap_next = 2 * np.sin(np.pi / (12 * (n + 1))) ** 2
    lhs = np.sinh(r1 - r)
    rhs = np.cosh(r) * np.sinh(r1) * gap
    # tanh forms: tanh r_n < tanh r_{n+1} cos(pi/6n) and the pi/6(n+1) variant
    t, t1 = np.tanh(r), np.tanh(r1)
    tan_n = t < t1 * (1 - gap)
    tan_n1 = t < t1 * (1 - gap_next)
    return r, r1, lhs, rhs, tan_n, tan_n1


def inequality_margin(s, n):
    """(lhs, rhs) of sinh(r_{n+1} - r_n) > cosh(r_n) sinh(r_{n+1}) (1 - cos(pi/6n))."""
    _, _, lhs, rhs, _, _ = _margins(s, n)
    if np.ndim(lhs) == 0:
        return float(lhs), float(rhs)
    return lhs, rhs


@dataclass
class ScheduleCheck:
    ok: bool
    first_pass: int | None
    failures: list
    slope_lhs: float | None = None
    slope_rhs: float | None = None
    orders_ok: bool | None = None
    # cosine forms disagreeing with the sinh form
    disagreements: list = field(default_factory=list)


def validate_schedule(s, n_max, fit=True):
    """Check the layer inequality for n = 1..n_max.

    Layer n fails when its radius is not positive, when r_{n+1} <= r_n, or
    when the sinh inequality does not hold. ``first_pass`` is the smallest n
    after which nothing fails. With ``fit``, log(lhs) and log(rhs) are fitted
    against log(n) over the top decade [n_max/10, n_max]; ``orders_ok`` says
    whether the exponents are within 0.1 of -1 and -(2 - 2 alpha).
    """
    from regtri.analysis import loglog_slope

    n = np.arange(1, n_max + 1)
    r, r1, lhs, rhs, tan_n, tan_n1 = _margins(s, n)
    holds = lhs > rhs
    bad = (r <= 0) | (r1 <= r) | ~holds
    failures = n[bad].tolist()
    first_pass = failures[-1] + 1 if failures else 1
    if first_pass > n_max:
        first_pass = None
    # tan form with pi/6n is equivalent to the sinh form; pi/6(n+1) is implied by it
    disagree = n[(tan_n != holds) | (holds & ~tan_n1)].tolist()

    out = ScheduleCheck(not failures, first_pass, failures, disagreements=disagree)
    lo = max(1, n_max // 10)
    if fit and n_max - lo >= 2:
        sel = (n >= lo) & (lhs > 0) & (rhs > 0)
        if sel.sum() >= 2:
            pts_l = list(zip(n[sel], lhs[sel]))
            pts_r = list(zip(n[sel], rhs[sel]))
            out.slope_lhs = loglog_slope(pts_l, lo, n_max).exponent
            out.slope_rhs = loglog_slope(pts_r, lo, n_max).exponent
            out.orders_ok = (
                abs(out.slope_lhs + 1.0) <= 0.1 and abs(out.slope_rhs + (2 - 2 * s.alpha)) <= 0.1
            )
    return out


@dataclass(frozen=True)
class HyperbolicParams:
    schedule: RadiusSchedule
    layers: int

    def __post_init__(self):
        if self.layers < 1:
            raise ValueError("need at least one layer")


def layer_offset(n):
    """Id of the first vertex of layer n (the origin has id 0)."""
    return 1 + 3 * n * (n - 1)


def vertex_id(n, s, k):
    """Id of v_n^k in sector s; k may equal n (the next sector's ray vertex)."""
    n = np.asarray(n)
    s = np.asarray(s)
    k = np.asarray(k)
    s = (s + k // np.maximum(n, 1)) % 6
    k = k % np.maximum(n, 1)
    return layer_offset(n) + s * n + k


def generate_hyperbolic(p, check=True):
    """Build the six-sector mesh with ``p.layers`` layers.

    The schedule is certified with :func:`validate_schedule` first; a failing
    schedule raises :class:`ScheduleError`.
    """
    if not isinstance(p, HyperbolicParams):
        raise TypeError("expected HyperbolicParams")
    s, n_max = p.schedule, p.layers
    if check:
        res = validate_schedule(s, n_max, fit=False)
        if not res.ok:
            raise ScheduleError(f"schedule fails validation at layers {res.failures[:10]}")
    radii = s.radii(n_max)

    # vertices: layer-major, then sector, then index
    n_of = np.repeat(np.arange(1, n_max + 1), 6 * np.arange(1, n_max + 1))
    local = np.arange(n_of.size) - (layer_offset(n_of) - 1)
    sec = local // n_of
    k = local % n_of
    theta = sec * (np.pi / 3) + k * np.pi / (3 * n_of)
    rho = np.tanh(radii[n_of - 1])
    pos = np.vstack([[0.0, 0.0], np.column_stack([rho * np.cos(theta), rho * np.sin(theta)])])
    layer = np.concatenate([[0], n_of])
    index = np.concatenate([[0], k])
    sector = np.concatenate([[-1], sec])
    vid = np.arange(1, n_of.size + 1)

    edges = []
    etypes = []
    # origin spokes
    spokes = vertex_id(1, np.arange(6), 0)
    edges.append(np.column_stack([np.zeros(6, dtype=np.int64), spokes]))
    etypes.append(np.full(6, EdgeType.TYPE0))
    # type 1: consecutive vertices of one layer
    edges.append(np.column_stack([vid, vertex_id(n_of, sec, k + 1)]))
    etypes.append(np.full(vid.size, EdgeType.TYPE1))

    inner = n_of < n_max
    vi, ni, si, ki = vid[inner], n_of[inner], sec[inner], k[inner]
    # type 0: along the rays
    ray = ki == 0
    edges.append(np.column_stack([vi[ray], vertex_id(ni[ray] + 1, si[ray], 0)]))
    etypes.append(np.full(int(ray.sum()), EdgeType.TYPE0))
    # type 2: v_n^k -> v_{n+1}^{k+1} for every k, and v_n^k -> v_{n+1}^k for k >= 1
    # (k = n of one sector is k = 0 of the next, reached as v_n^n -> v_{n+1}^n)
    edges.append(np.column_stack([vi, vertex_id(ni + 1, si, ki + 1)]))
    etypes.append(np.full(vi.size, EdgeType.TYPE2))
    lower = np.where(ki == 0, vertex_id(ni + 1, si - 1, ni), vertex_id(ni + 1, si, ki))
    edges.append(np.column_stack([vi, lower]))
    etypes.append(np.full(vi.size, EdgeType.TYPE2))

    faces = _faces(n_max)
    return build_mesh(
        Geometry.HYPERBOLIC,
        pos,
        np.concatenate(edges),
        etypes=np.concatenate(etypes),
        layer=layer,
        index=index,
        sector=sector,
        faces=faces,
        params={
            "alpha": s.alpha,
            "bootstrap": list(s.bootstrap),
            "layers": n_max,
        },
    )


def _faces(n_max):
    """Counter-clockwise triangles: 6 around the origin, 6(2n+1) in ring n."""
    out = [np.column_stack([np.zeros(6, dtype=np.int64), vertex_id(1, np.arange(6), 0), vertex_id(1, np.arange(6), 1)])]
    if n_max > 1:
        n = np.repeat(np.arange(1, n_max), 6 * np.arange(1, n_max))
        local = np.arange(n.size) - (layer_offset(n) - 1)
        s = local // n
        k = local % n
        # (v_n^k, v_{n+1}^{k+1}, v_n^{k+1})
        out.append(np.column_stack([vertex_id(n, s, k), vertex_id(n + 1, s, k + 1), vertex_id(n, s, k + 1)]))
        # (v_n^k, v_{n+1}^k, v_{n+1}^{k+1}) for k = 0..n-1, plus k = n via the next sector's k = 0
        out.append(np.column_stack([vertex_id(n, s, k), vertex_id(n + 1, s, k), vertex_id(n + 1, s, k + 1)]))
        first = k == 0
        ns, ss = n[first], s[first]
        out.append(
            np.column_stack([vertex_id(ns, ss, 0), vertex_id(ns + 1, ss - 1, ns), vertex_id(ns + 1, ss, 0)])
        )
    return np.concatenate(out)

"""Build the 6-regular hyperbolic triangulation, check it, measure it, draw it."""

import math
import sys
from pathlib import Path

import numpy as np

from regtri import (
    EdgeType,
    HyperbolicParams,
    RadiusSchedule,
    check_regular,
    disk_identity,
    edge_length_stats,
    generate_hyperbolic,
    loglog_slope,
    max_length_series,
    noncrossing_check,
    render_svg,
    validate_schedule,
)

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")

# %% radius schedule: r_n = alpha ln n, with three bootstrap layers so r_1 > 0
sched = RadiusSchedule.default(alpha=0.45)
print("bootstrap radii", [round(r, 4) for r in sched.bootstrap])
print("r_4 .. r_6     ", [round(sched.radius(n), 4) for n in (4, 5, 6)])

# the layer inequality has to hold at every n or chords of neighbouring layers cross
check = validate_schedule(sched, 2000)
print("schedule ok:", check.ok, " lhs/rhs slopes:", round(check.slope_lhs, 3), round(check.slope_rhs, 3))

# without the bootstrap the first layer sits on the origin
bare = validate_schedule(RadiusSchedule.pure(0.45), 2000, fit=False)
print("bare log rule fails at", bare.failures, "and passes from layer", bare.first_pass)

# %% generate 60 layers: 6n vertices on layer n
m = generate_hyperbolic(HyperbolicParams(sched, 60))
print(m)

# %% validators
print(check_regular(m, 6).to_json())
print(disk_identity(m).to_json())
print(noncrossing_check(m).to_json())

# %% edge lengths stay bounded; circumferential edges shrink like n^-(1-alpha)
stats = edge_length_stats(m)
for s in stats[:4] + stats[-2:]:
    t1 = s.edges.get("type1", {})
    print(f"layer {s.layer:3d}  type1 max {t1.get('max', float('nan')):.5f}  min angle {s.min_angle:.4f}")

# short runs sit above the asymptote; 500 layers give about -0.54
fit = loglog_slope(max_length_series(m, EdgeType.TYPE1), 6, 60)
print(f"type1 slope {fit.exponent:.3f}  (-(1 - alpha) = {-(1 - sched.alpha):.3f})")

# every Type1 length sits below (pi/3n) sinh r_n
series = max_length_series(m, EdgeType.TYPE1)
slack = min(math.pi / (3 * n) * math.sinh(sched.radius(n)) - mx for n, mx in series)
print("smallest slack under the linear bound:", f"{slack:.3e}")

# %% pictures: Klein chords and Poincare arcs
small = generate_hyperbolic(HyperbolicParams(sched, 25))
for model in ("klein", "poincare"):
    path = out_dir / f"hyperbolic_{model}.svg"
    path.write_text(render_svg(small, model))
    print("wrote", path)

# layer sizes for the record
print("vertices per layer", np.bincount(m.layer)[:8])

"""Minimum triangle angle per layer of the hyperbolic mesh: it keeps falling."""

import numpy as np

from regtri import HyperbolicParams, RadiusSchedule, generate_hyperbolic, min_angle_series
from regtri.analysis import area_conservation

sched = RadiusSchedule.default(0.45)
m = generate_hyperbolic(HyperbolicParams(sched, 650))
series = min_angle_series(m)
n = np.array([a for a, _ in series])
ang = np.array([b for _, b in series])

# %% the bootstrap layers are irregular; from layer 4 on the series only goes down
print("first layers", np.round(ang[:6], 4))
print("non-increasing from layer 4:", bool(np.all(np.diff(ang[4:]) <= 0)))

# %% roughly 3 alpha / (pi sinh r_n), i.e. about n^-alpha
for k in (10, 50, 100, 200, 400, 499, 559, 560, 649):
    pred = 3 * sched.alpha / (np.pi * np.sinh(sched.radius(k)))
    print(f"layer {k:3d}  min angle {ang[k]:.6f}   3a/(pi sinh r) {pred:.6f}")

print("first layer below 0.05 rad:", int(n[ang < 0.05][0]))

# %% Gauss-Bonnet bookkeeping on a smaller mesh
print(area_conservation(generate_hyperbolic(HyperbolicParams(sched, 50))))

"""k-regular triangulations of the Euclidean plane (k >= 7) on concentric circles."""

import math

import numpy as np

from regtri import (
    EuclideanParams,
    check_regular,
    disk_identity,
    euclidean_layer_summaries,
    generate_euclidean,
    interlayer_assignment,
    layer_count,
    layer_count_closed_form,
    noncrossing_check,
)
from regtri.euclidean import characteristic_root

# %% layer sizes grow geometrically: a_{n+1} = (k-4) a_n - a_{n-1}
for k in (7, 8, 10):
    print(k, [layer_count(k, n) for n in range(7)])

# the closed form uses the larger root of x^2 - (k-4) x + 1
k = 7
root = characteristic_root(k)
print("root for k=7:", root, "=", (3 + math.sqrt(5)) / 2)
print("a_30 exact    ", layer_count(k, 30))
print("a_30 closed   ", f"{layer_count_closed_form(k, 30):.6e}")

# %% one band: each inner vertex fans out to a contiguous run of outer vertices
pairs = interlayer_assignment(7, 21, 7)
print("fans of the first band:")
for i in range(7):
    print("  inner", i, "->", pairs[pairs[:, 0] == i, 1].tolist())

# %% a small patch, fully materialised and validated
m = generate_euclidean(EuclideanParams(7, 5))
print(m, check_regular(m, 7).passed, disk_identity(m).passed, noncrossing_check(m).passed)

# %% twenty layers is over a billion vertices; stream one of the seven sectors instead
rows = euclidean_layer_summaries(EuclideanParams(7, 20))
print(" n    a_n          degrees   circumferential  inter-layer max")
for r in rows[1:]:
    print(f"{r.layer:2d} {r.n_vertices:12d}   {r.degree_min}..{r.degree_max}     {r.circumferential:.3e}      {r.inter_max:.12f}")

# %% the geometric schedule r_n = 2^n: edges still shrink, since a_n outgrows 2^n
geo = euclidean_layer_summaries(EuclideanParams(7, 20, "geometric"))
circ = np.array([r.circumferential for r in geo[1:]])
print("geometric schedule, circumferential ratio per layer:", circ[-1] / circ[-2], "~ 2/root =", 2 / root)

"""Closed surfaces: Platonic spheres, the 6-regular torus, and count feasibility."""

from regtri import closed_surface_identity, edge_lengths, feasibility, generate_sphere
from regtri.mesh import euler_characteristic, torus_fixture

# %% the three triangle-faced Platonic solids, projected to the unit sphere
for k in (3, 4, 5):
    m = generate_sphere(k)
    arc = edge_lengths(m)
    print(m.params["solid"], (m.n_vertices, m.n_edges, m.n_faces), "edge arc", round(float(arc[0]), 6))
    print("   sum(6 - d) =", closed_surface_identity(m).summary["lhs"], " chi =", euler_characteristic(m))

# %% torus: quotient of the hexagonal lattice
t = torus_fixture()
print("torus", t.n_vertices, t.n_edges, t.n_faces, "chi", euler_characteristic(t))

# %% which (k, g) pass the count conditions?
print("   k:", " ".join(f"{k:>3d}" for k in range(3, 13)))
for g in range(0, 6):
    row = []
    for k in range(3, 13):
        f = feasibility(k, g)
        row.append("  T" if f["feasible"] and f["V"] is None else f"{f['V']:>3d}" if f["feasible"] else "  .")
    print(f"g={g}:", " ".join(row))

# V < k + 1 means the counts work but no simple graph does
print("(10, 3):", feasibility(10, 3))
print("(7, 2): ", feasibility(7, 2))

"""Each path-building rule on small lattice polytopes, with its declared bounds."""

# %% A (0,3)-lattice polytope in dimension 3.
from latshadow.exactgeom import build_edge_graph
from latshadow.oracles import shortest_monotone_distance
from latshadow.pathalgos import (
    greatest_improvement_solve,
    lattice_shadow_solve,
    path_from_sigma_max,
    solve_half_integral,
    solve_lattice_lp,
    solve_level,
)
from latshadow.pivotcore import SignedPermutation, generic
from latshadow.polygen import GenSpec, generate

p = generate(GenSpec.parse("family=lattice_hull,n=3,k=3,points=8,seed=2"))
g = build_edge_graph(p)
c = generic((3, -1, 2), p.vertices)
print(f"{len(p.vertices)} vertices, {len(g.edges)} edges, dim {p.dim}")


def show(report):
    checks = ", ".join(f"{b.name} {b.observed}<={b.declared}" for b in report.bound_checks)
    print(f"{report.rule:>22}: {report.steps} steps to v{report.optimum}  [{checks}]")


# %% Rules that need integer vertices.
for solve in (solve_level, lattice_shadow_solve, solve_lattice_lp, greatest_improvement_solve):
    show(solve(p, g, c, 0))
show(path_from_sigma_max(p, g, SignedPermutation.identity(3), c))
print("shortest monotone path from v0:", shortest_monotone_distance(g, p.vertices, c, 0))

# %% The half-integral rule on a hull of points in {0, 1/2, 1}^4.
h = generate(GenSpec.parse("family=half_integral_hull,n=4,points=9,seed=3"))
show(solve_half_integral(h, build_edge_graph(h), generic((1, -2, 3, 1), h.vertices), 0))

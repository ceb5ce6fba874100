"""Exact polytopes: hulls, facets, the edge graph, and the integer metrics used by the bounds."""

# %% A pentagon given by points; the interior point disappears in the hull.
from latshadow.exactgeom import build_edge_graph, facet_enumeration, level_profile, matrix_metrics, polytope_from_hrep

pent = facet_enumeration([(0, 0), (2, 0), (2, 1), (1, 2), (0, 1), (1, 1)])
print("vertices:", [tuple(map(str, v)) for v in pent.vertices])
for a, b in pent.hrep.rows:
    print(f"  {a} . x <= {b}")

# %% Going the other way: vertices from inequalities, then the graph.
square = polytope_from_hrep([((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0)])
g = build_edge_graph(square)
print("square edges:", sorted(g.edges))

# %% Integer data of the constraint matrix.
m = matrix_metrics(pent.hrep)
print(f"||A||_inf = {m.norm_inf}, widest row support = {m.max_support}, largest subdeterminant = {m.delta}")
print("distinct values per inequality:", level_profile(pent).per_row, "-> level", level_profile(pent).level)

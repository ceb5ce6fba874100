"""Brute-force ground truth: optima, BFS distances and monotone diameters."""

# %% Every orientation of the pentagon's graph induced by a generic objective.
from latshadow.exactgeom import build_edge_graph
from latshadow.oracles import OrientationDigraph, brute_force_optimum, monotone_diameter_estimate
from latshadow.pivotcore import generic
from latshadow.polygen import GenSpec, generate

p5 = generate(GenSpec.parse("family=polygon,n=2,k=2,variant=p5"))
g = build_edge_graph(p5)
exact = monotone_diameter_estimate(p5, g, "exact")
print(f"pentagon: {len(exact.orientations)} orientations, monotone diameter {exact.value}")

# %% Distances to the sink for one objective.
c = generic((1, 2), p5.vertices)
dg = OrientationDigraph.build(g, p5.vertices, c)
print("optimum:", tuple(map(str, p5.vertices[brute_force_optimum(p5.vertices, c)])), "distances:", dg.distances_to_sink())

# %% Sampling is the only option once the arrangement gets large.
cube = generate(GenSpec.parse("family=cube,n=4"))
print("4-cube sampled diameter:", monotone_diameter_estimate(cube, build_edge_graph(cube), "sampled", count=100).value)

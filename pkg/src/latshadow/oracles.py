"""Brute-force ground truth for the pivot rules.

Nothing here calls the path tracers: optima come from scanning every vertex,
distances from breadth-first search on the oriented graph, and the
lexicographic-order check enumerates every pair of lattice points.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from itertools import product
from typing import Sequence

import numpy as np

from .exactgeom import EdgeGraph, HRep, Polytope, Vector, enumerate_vertices
from .pivotcore import Objective, SignedPermutation, build_x_sigma, generic, lex_compare
from .polygen import XorShift64Star

EXACT_MAX_N = 3
EXACT_MAX_VERTICES = 12


class AmbiguousOptimum(ValueError):
    def __init__(self, indices: Sequence[int]):
        super().__init__(f"objective is maximized at several vertices: {list(indices)}")
        self.indices = list(indices)


def _values(vertices: Sequence[Vector], o: Objective) -> list[tuple[Fraction, ...]]:
    comps = o.components
    return [tuple(sum((a * b for a, b in zip(c, v)), Fraction(0)) for c in comps) for v in vertices]


def optimal_set(vertices: Sequence[Vector], o: Objective) -> list[int]:
    vals = _values(vertices, o)
    best = max(vals)
    return [i for i, v in enumerate(vals) if v == best]


def brute_force_optimum(vertices: Sequence[Vector], o: Objective) -> int:
    """Index of the unique maximizer; raises :class:`AmbiguousOptimum` on a tie."""
    best = optimal_set(vertices, o)
    if len(best) > 1:
        raise AmbiguousOptimum(best)
    return best[0]


@dataclass
class OrientationDigraph:
    successors: list[list[int]]
    sink: int
    source: int

    @classmethod
    def build(cls, graph: EdgeGraph, vertices: Sequence[Vector], o: Objective) -> "OrientationDigraph":
        vals = _values(vertices, o)
        succ: list[list[int]] = [[] for _ in range(graph.n_vertices)]
        preds: dict[int, set[int]] = {u: set() for u in range(graph.n_vertices)}
        for u, v in graph.edges:
            if vals[u] == vals[v]:
                raise ValueError(f"objective is constant on edge {u}-{v}")
            a, b = (u, v) if vals[u] < vals[v] else (v, u)
            succ[a].append(b)
            preds[b].add(a)
        try:
            TopologicalSorter(preds).prepare()
        except CycleError as exc:  # cannot happen for a strict order; guards the construction
            raise AssertionError("orientation has a cycle") from exc
        sinks = [u for u in range(graph.n_vertices) if not succ[u]]
        sources = [u for u in range(graph.n_vertices) if not preds[u]]
        if len(sinks) != 1 or len(sources) != 1:
            raise ValueError("orientation does not have a unique sink and source")
        return cls(succ, sinks[0], sources[0])

    def distances_to_sink(self) -> list[int]:
        n = len(self.successors)
        preds: list[list[int]] = [[] for _ in range(n)]
        for a, bs in enumerate(self.successors):
            for b in bs:
                preds[b].append(a)
        dist = [-1] * n
        dist[self.sink] = 0
        queue = deque([self.sink])
        while queue:
            b = queue.popleft()
            for a in preds[b]:
                if dist[a] < 0:
                    dist[a] = dist[b] + 1
                    queue.append(a)
        if min(dist) < 0:
            raise AssertionError("sink unreachable from some vertex")
        return dist


def shortest_monotone_distance(graph: EdgeGraph, vertices: Sequence[Vector], o: Objective, start: int) -> int:
    """Length of the shortest strictly improving edge path from ``start`` to the optimum."""
    dg = OrientationDigraph.build(graph, vertices, o)
    dist = [-1] * graph.n_vertices
    dist[start] = 0
    queue = deque([start])
    while queue:
        a = queue.popleft()
        if a == dg.sink:
            return dist[a]
        for b in dg.successors[a]:
            if dist[b] < 0:
                dist[b] = dist[a] + 1
                queue.append(b)
    raise AssertionError("sink unreachable")


# --- monotone diameter -----------------------------------------------------------


@dataclass
class DiameterEstimate:
    value: int
    objective: Objective | None
    vertex: int | None
    orientations: list[tuple[tuple[int, ...], Vector, int]] = field(default_factory=list)


def _worst(graph, vertices, o) -> tuple[int, int]:
    dist = OrientationDigraph.build(graph, vertices, o).distances_to_sink()
    worst = max(range(len(dist)), key=lambda i: (dist[i], -i))
    return dist[worst], worst


def monotone_diameter_estimate(
    p: Polytope, graph: EdgeGraph, mode: str = "sampled", *, count: int = 200, seed: int = 0
) -> DiameterEstimate:
    """Worst shortest monotone distance to the sink.

    ``sampled`` gives a lower bound from random integer objectives and ``+-x_sigma``
    directions; ``exact`` enumerates every realizable edge orientation (tiny inputs only).
    """
    if mode == "exact":
        return _exact_diameter(p, graph)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = XorShift64Star(seed)
    V = p.vertices
    n = p.n
    best = DiameterEstimate(0, None, None)
    k = p.k if p.k is not None else 1
    for t in range(count):
        if t % 2 == 0:
            c = tuple(rng.randint(-9, 9) for _ in range(n))
        else:
            sigma = rng.signed_permutation(n)
            x = build_x_sigma(sigma, k)
            c = tuple(-v for v in x) if t % 4 == 3 else x
        o = generic(c, V)
        value, vertex = _worst(graph, V, o)
        if value > best.value or best.objective is None:
            best = DiameterEstimate(value, o, vertex)
    return best


def _edge_directions(p: Polytope, graph: EdgeGraph) -> list[tuple[Fraction, ...]]:
    dirs = []
    seen = set()
    for u, v in graph.edges:
        e = tuple(a - b for a, b in zip(p.vertices[v], p.vertices[u]))
        lead = next(x for x in e if x)
        key = tuple(x / abs(lead) * (1 if lead > 0 else -1) for x in e)
        if key not in seen:
            seen.add(key)
            dirs.append(key)
    return dirs


def strict_sign_witness(directions: Sequence[Sequence[Fraction]], signs: Sequence[int]) -> Vector | None:
    """A ``c`` in the unit box with ``sign(c.e) == s`` for all pairs, or None.

    Maximizes a slack ``t`` over ``{s*(c.e) >= t, -1 <= c <= 1, t <= 1}`` by
    enumerating vertices of that polytope exactly; the system is feasible iff
    the optimal slack is positive.
    """
    n = len(directions[0])
    rows = []
    for e, s in zip(directions, signs):
        rows.append((tuple(-s * x for x in e) + (Fraction(1),), 0))
    for j in range(n):
        unit = [0] * (n + 1)
        unit[j] = 1
        rows.append((tuple(unit), 1))
        rows.append((tuple(-x for x in unit), 1))
    top = [0] * n + [1]
    rows.append((tuple(top), 1))
    rows.append((tuple(-x for x in top), 1))
    hrep = HRep.from_rows(rows, n + 1)
    verts = enumerate_vertices(hrep, check_bounded=False).vertices
    best = max(verts, key=lambda v: (v[-1], v))
    return best[:-1] if best[-1] > 0 else None


def realizable_orientations(p: Polytope, graph: EdgeGraph) -> list[tuple[tuple[int, ...], Vector]]:
    """All sign vectors on edge directions cut out by some linear objective, with witnesses.

    Directions are added one at a time; each chamber found so far is split by
    testing both strict signs of the new direction.
    """
    dirs = _edge_directions(p, graph)
    chambers: list[tuple[int, ...]] = [()]
    for m in range(1, len(dirs) + 1):
        nxt = []
        for ch in chambers:
            for s in (1, -1):
                if strict_sign_witness(dirs[:m], ch + (s,)) is not None:
                    nxt.append(ch + (s,))
        chambers = nxt
    return [(ch, strict_sign_witness(dirs, ch)) for ch in chambers]


def _exact_diameter(p: Polytope, graph: EdgeGraph) -> DiameterEstimate:
    if p.n > EXACT_MAX_N or len(p.vertices) > EXACT_MAX_VERTICES:
        raise ValueError("exact monotone diameter is limited to n <= 3 and <= 12 vertices")
    best = DiameterEstimate(0, None, None)
    for signs, c in realizable_orientations(p, graph):
        o = Objective(c)
        value, vertex = _worst(graph, p.vertices, o)
        best.orientations.append((signs, c, value))
        if best.objective is None or value > best.value:
            best.value, best.objective, best.vertex = value, o, vertex
    return best


# --- lexicographic order -----------------------------------------------------------


@dataclass
class LexCheck:
    n: int
    k: int
    alpha: int
    sigmas: int
    pairs: int
    counterexample: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def summary(self) -> str:
        status = "ok" if self.ok else f"FAIL {self.counterexample}"
        return f"lemma8: {self.sigmas} sigma, {self.pairs} pairs, {status}"


def _lattice(n: int, k: int) -> np.ndarray:
    return np.array(list(product(range(-k, k + 1), repeat=n)), dtype=np.int64).reshape(-1, n)


def lex_sign_matrix(sigma: SignedPermutation, X: np.ndarray) -> np.ndarray:
    """``out[a, b] = lex_compare(sigma, X[a], X[b])`` for all pairs, vectorized."""
    out = np.zeros((len(X), len(X)), dtype=np.int8)
    for i, s in sigma.order():
        col = s * X[:, i]
        diff = np.sign(col[:, None] - col[None, :]).astype(np.int8)
        out = np.where(out == 0, diff, out)
    return out


def verify_lex_order(n: int, k: int, alpha: int | None = None, *, spot_checks: int = 64) -> LexCheck:
    """Exhaustively compare ``x_sigma`` dot products with the lexicographic rule."""
    if alpha is None:
        alpha = 2 * k + 1
    X = _lattice(n, k)
    if alpha ** (n + 1) * (2 * k + 1) * n >= 2**62:
        raise ValueError("parameters too large for exact int64 evaluation")
    result = LexCheck(n, k, alpha, 0, len(X) ** 2)
    rng = XorShift64Star(n * 1000 + k)
    for sigma in SignedPermutation.all(n):
        result.sigmas += 1
        w = np.array([(1 if s > 0 else -1) * alpha ** abs(s) for s in sigma.sigma], dtype=np.int64)
        vals = X @ w
        dsign = np.sign(vals[:, None] - vals[None, :]).astype(np.int8)
        lsign = lex_sign_matrix(sigma, X)
        for _ in range(spot_checks):
            a, b = rng.randbelow(len(X)), rng.randbelow(len(X))
            if lex_compare(sigma, X[a], X[b]) != lsign[a, b]:
                raise AssertionError("vectorized and scalar lexicographic comparison disagree")
        bad = np.argwhere(dsign != lsign)
        if len(bad) and result.counterexample is None:
            a, b = bad[0]
            result.counterexample = (str(sigma), tuple(int(x) for x in X[a]), tuple(int(x) for x in X[b]))
    return result

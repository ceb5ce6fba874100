"""Short monotone paths and two-phase solves on lattice polytopes.

Each solver returns a :class:`SolveReport` whose ``bound_checks`` list every
length bound the construction promises, with the observed value next to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactgeom import EdgeGraph, GeometryError, Polytope, dot, level_profile, matrix_metrics
from .pivotcore import (
    Objective,
    PathTrace,
    PreconditionError,
    SignedPermutation,
    Step,
    coherent_path,
    independent_tight_rows,
    lattice_shadow_objective,
    sigma_flag,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    declared: int
    observed: int

    @property
    def ok(self) -> bool:
        return self.observed <= self.declared


@dataclass
class SolveReport:
    rule: str
    trace: PathTrace
    optimum: int
    bound_checks: list[BoundCheck] = field(default_factory=list)
    sub_lp_count: int = 0
    legs: list[PathTrace] = field(default_factory=list)
    sigma: SignedPermutation | None = None

    @property
    def steps(self) -> int:
        return self.trace.length

    @property
    def ok(self) -> bool:
        return all(b.ok for b in self.bound_checks)

    def violations(self) -> list[BoundCheck]:
        return [b for b in self.bound_checks if not b.ok]


def _corollary_checks(legs: Sequence[PathTrace]) -> list[BoundCheck]:
    return [BoundCheck(f"coherent_leg{i}", leg.declared_bound, leg.length) for i, leg in enumerate(legs)]


def _concat(start: int, legs: Sequence[PathTrace], rule: str, bound: int | None) -> PathTrace:
    trace = PathTrace([start], [], bound, rule)
    for leg in legs:
        trace.extend(leg)
    return trace


def _require_lattice(p: Polytope) -> int:
    if p.k is None:
        raise GeometryError("not a (0,k)-lattice polytope")
    return p.k


# --- half-integral polytopes ---------------------------------------------------


def is_half_integral(p: Polytope) -> bool:
    return all(x in (0, HALF, 1) for v in p.vertices for x in v)


def _chart(v) -> tuple[int, ...]:
    """x -> 2x - 1, sending {0, 1/2, 1} to {-1, 0, 1}."""
    return tuple(int(2 * x - 1) for x in v)


def uniform_support(p: Polytope) -> int | None:
    """Common support size in the {-1,0,1} chart, or None if it varies."""
    sizes = {sum(1 for x in _chart(v) if x) for v in p.vertices}
    return sizes.pop() if len(sizes) == 1 else None


def solve_half_integral(p: Polytope, graph: EdgeGraph, c: Objective, start: int) -> SolveReport:
    """Grow the fixed support with improving moves, then follow one coherent path.

    In the chart ``w = 2x - 1`` each support step fixes the nonzero coordinates of
    the current vertex; once the current vertex ``v`` is ``c``-maximal on that face,
    the ``c``-coherent ``(-w(v))``-monotone path finishes the solve.
    """
    if not is_half_integral(p):
        raise GeometryError("polytope is not half-integral")
    V = p.vertices
    W = [_chart(v) for v in V]
    allv = frozenset(range(len(V)))
    v = start
    path = [v]
    steps: list[Step] = []
    F = allv
    anchor = None if not any(W[v]) else v
    while True:
        if anchor is not None:
            S = [j for j, x in enumerate(W[anchor]) if x]
            F = frozenset(u for u in allv if all(W[u][j] == W[anchor][j] for j in S))
        here = c.value(V[v])
        better = [(c.value(V[u]), -u) for u in graph.neighbors(v) if u in F and c.value(V[u]) > here]
        if not better:
            break
        v = -max(better)[1]
        path.append(v)
        steps.append(Step("half_integral_support", None, F))
        anchor = v
    support_steps = len(path) - 1
    legs: list[PathTrace] = []
    if anchor is not None:
        d = tuple(-Fraction(x) for x in W[anchor])
        leg = coherent_path(graph, V, c, d, v, mode="both", rule="half_integral_shadow")
        legs.append(leg)
    supp = sum(1 for x in W[anchor] if x) if anchor is not None else 0
    trace = PathTrace(path, steps, None, "half_integral")
    for leg in legs:
        trace.extend(leg)
    checks = [
        BoundCheck("support_phase<=d", p.dim, support_steps),
        BoundCheck("shadow_phase<=2|supp|", 2 * supp, trace.length - support_steps),
        BoundCheck("total<=d+2|supp|", p.dim + 2 * supp, trace.length),
    ]
    if p.dim == p.n:
        checks.append(BoundCheck("half_integral:3d", 3 * p.dim, trace.length))
    else:
        checks.append(BoundCheck("half_integral:d+2n", p.dim + 2 * p.n, trace.length))
    s = uniform_support(p)
    if s is not None:
        checks.append(BoundCheck("half_integral:2s", 2 * s, trace.length))
    checks += _corollary_checks(legs)
    trace.declared_bound = checks[3].declared
    return SolveReport("half_integral", trace, trace.end, checks, len(legs), legs)


# --- (m+1)-level polytopes -----------------------------------------------------


def solve_level(p: Polytope, graph: EdgeGraph, c: Objective, start: int) -> SolveReport:
    """Release tight facets one at a time, following a coherent leg per facet.

    With ``a_1..a_d`` independent facet normals tight at ``start`` and
    ``F_i`` the face where the first ``i`` of them are tight, the leg on
    ``F_{i-1}`` uses ``d = -a_i`` and runs from the ``c``-max of ``F_i`` to the
    ``c``-max of ``F_{i-1}``.
    """
    V = p.vertices
    rows = independent_tight_rows(p, start)
    dim = len(rows)
    faces = []
    for i in range(dim + 1):
        need = set(rows[:i])
        faces.append(frozenset(u for u in range(len(V)) if need <= p.tight(u)))
    m = level_profile(p).level - 1
    legs: list[PathTrace] = []
    v = start
    for i in range(dim, 0, -1):
        a = p.hrep.rows[rows[i - 1]][0]
        leg = coherent_path(graph, V, c, tuple(-x for x in a), v, face=faces[i - 1], rule="level")
        legs.append(leg)
        v = leg.end
    bound = (dim - 1) * m + 1 if dim else 0
    trace = _concat(start, legs, "level", bound)
    checks = [BoundCheck("level:(d-1)m+1", bound, trace.length)]
    if legs:
        checks.append(BoundCheck("level:first_leg<=1", 1, legs[0].length))
    checks += [BoundCheck(f"level:leg{i}<=m", m, leg.length) for i, leg in enumerate(legs)]
    checks += _corollary_checks(legs)
    return SolveReport("level", trace, trace.end, checks, len(legs), legs)


# --- x_sigma machinery -----------------------------------------------------------


@dataclass
class DescentResult:
    sigma: SignedPermutation
    trace: PathTrace
    legs: list[PathTrace]
    faces: list[frozenset[int]]

    @property
    def sub_lp_count(self) -> int:
        return sum(1 for a, b in zip(self.faces, self.faces[1:]) if a != b)


def adaptive_sigma_descent(p: Polytope, graph: EdgeGraph, start: int) -> DescentResult:
    """Walk to the ``x_sigma``-maximal vertex of a greedily built ``sigma``.

    At each stage the unfixed coordinate of the current vertex nearest to 0 or
    ``k`` is pushed to that boundary within the current face (first improving
    neighbor by index), and the face shrinks to its coordinate-extreme part.
    The first coordinate chosen receives the highest priority.
    """
    k = _require_lattice(p)
    V = p.vertices
    n = p.n
    face = frozenset(range(len(V)))
    faces = [face]
    free = list(range(n))
    v = start
    signed = [0] * n
    legs: list[PathTrace] = []
    for rank in range(n, 0, -1):
        x = V[v]
        j = min(free, key=lambda i: (min(x[i], k - x[i]), i))
        s = 1 if k - x[j] < x[j] else -1
        free.remove(j)
        signed[j] = s * rank
        path = [v]
        steps = []
        while True:
            here = s * V[v][j]
            nxt = next((u for u in graph.neighbors(v) if u in face and s * V[u][j] > here), None)
            if nxt is None:
                break
            v = nxt
            path.append(v)
            steps.append(Step("coordinate_ascent", None, face))
        best = s * V[v][j]
        face = frozenset(u for u in face if s * V[u][j] == best)
        faces.append(face)
        legs.append(PathTrace(path, steps, k, "coordinate_ascent"))
    sigma = SignedPermutation(tuple(signed))
    trace = _concat(start, legs, "sigma_descent", p.dim * (k // 2))
    return DescentResult(sigma, trace, legs, faces)


def path_from_sigma_max(
    p: Polytope, graph: EdgeGraph, sigma: SignedPermutation, c: Objective, start: int | None = None
) -> SolveReport:
    """From the ``x_sigma``-maximal vertex, climb the flag ``G_0 <= G_1 <= ... <= G_n``.

    On each distinct ``G_i`` the leg is ``c``-coherent and monotone in the
    coordinate that ``G_{i-1}`` maximizes, run in reverse.
    """
    k = _require_lattice(p)
    flag = sigma_flag(p, sigma)
    if start is not None and start != flag.vertex:
        raise PreconditionError(f"start {start} is not the x_sigma-maximal vertex {flag.vertex}")
    V = p.vertices
    v = flag.vertex
    legs: list[PathTrace] = []
    for i in range(1, p.n + 1):
        Gi, Gprev = flag.face(i), flag.face(i - 1)
        if Gi == Gprev:
            continue
        coord, s = sigma.inverse(i)
        d = [0] * p.n
        d[coord] = -s
        leg = coherent_path(graph, V, c, d, v, face=Gi, rule="sigma_max")
        legs.append(leg)
        v = leg.end
    bound = p.dim * k
    trace = _concat(flag.vertex, legs, "sigma_max", bound)
    checks = [BoundCheck("flag_path:dk", bound, trace.length)]
    checks += [BoundCheck(f"flag_path:leg{i}<=k", k, leg.length) for i, leg in enumerate(legs)]
    checks += [BoundCheck("flag_path:distinct_faces<=d", p.dim, len(legs))]
    checks += _corollary_checks(legs)
    return SolveReport("sigma_max", trace, trace.end, checks, len(legs), legs, sigma)


# --- lattice shadow rule and the two-phase solver -------------------------------


def lattice_shadow_solve(p: Polytope, graph: EdgeGraph, c: Objective, start: int) -> SolveReport:
    k = _require_lattice(p)
    d = lattice_shadow_objective(p, start)
    leg = coherent_path(graph, p.vertices, c, d, start, rule="lattice_shadow")
    norm_a = matrix_metrics(p.hrep, delta_max_n=0).norm_inf
    norm_d = int(max(abs(x) for x in d.primary))
    trace = PathTrace(list(leg.vertex_indices), list(leg.steps), p.dim * p.n * k * norm_a, "lattice_shadow")
    checks = [
        BoundCheck("shadow:dnk|A|", p.dim * p.n * k * norm_a, trace.length),
        BoundCheck("shadow:|d|nk", norm_d * p.n * k, trace.length),
        BoundCheck("shadow:|d|<=d|A|", p.dim * norm_a, norm_d),
    ]
    checks += _corollary_checks([leg])
    return SolveReport("lattice_shadow", trace, trace.end, checks, 1, [leg])


def solve_lattice_lp(p: Polytope, graph: EdgeGraph, c: Objective, start: int) -> SolveReport:
    """Phase A reaches an ``x_sigma``-maximal vertex; phase B climbs its flag to the optimum."""
    k = _require_lattice(p)
    desc = adaptive_sigma_descent(p, graph, start)
    climb = path_from_sigma_max(p, graph, desc.sigma, c, desc.trace.end)
    bound = p.dim * (k + k // 2)
    trace = PathTrace(list(desc.trace.vertex_indices), list(desc.trace.steps), bound, "two_phase")
    trace.extend(climb.trace)
    sub_lps = desc.sub_lp_count + climb.sub_lp_count
    checks = [
        BoundCheck("descent:d*floor(k/2)", p.dim * (k // 2), desc.trace.length),
        BoundCheck("flag_path:dk", p.dim * k, climb.trace.length),
        BoundCheck("two_phase:d(k+floor(k/2))", bound, trace.length),
        BoundCheck("two_phase:sub_lps<=2n", 2 * p.n, sub_lps),
    ]
    checks += [BoundCheck(f"descent:leg{i}<=floor(k/2)", k // 2, leg.length) for i, leg in enumerate(desc.legs)]
    checks += _corollary_checks(climb.legs)
    return SolveReport("two_phase", trace, trace.end, checks, sub_lps, climb.legs, desc.sigma)


def greatest_improvement_solve(p: Polytope, graph: EdgeGraph, c: Objective, start: int) -> SolveReport:
    from .pivotcore import greatest_improvement_path

    trace = greatest_improvement_path(graph, p.vertices, c, start)
    checks = [BoundCheck("monotone<=|V|-1", len(p.vertices) - 1, trace.length)]
    return SolveReport("greatest_improvement", trace, trace.end, checks, 1, [])

"""Objectives, signed permutations, and the edge pivot rules.

Paths are walked on an :class:`~latshadow.exactgeom.EdgeGraph`; a *face* is
given by the set of vertex indices it contains, so every step of every rule
is an edge of the full polytope graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from . import _intla
from .exactgeom import EdgeGraph, Polytope, Vector, as_vector, dot


class PreconditionError(ValueError):
    pass


# --- objectives ----------------------------------------------------------------


@dataclass(frozen=True)
class Objective:
    """Primary vector plus lexicographic perturbations.

    The value at ``x`` is the tuple ``(c.x, p1.x, p2.x, ...)``; comparisons are
    lexicographic, which models ``c + eps*p1 + eps^2*p2 + ...`` for tiny eps.
    """

    primary: Vector
    perturbations: tuple[Vector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "primary", as_vector(self.primary))
        object.__setattr__(self, "perturbations", tuple(as_vector(p) for p in self.perturbations))
        if any(len(p) != len(self.primary) for p in self.perturbations):
            raise ValueError("perturbation length differs from the primary vector")

    @property
    def n(self) -> int:
        return len(self.primary)

    @property
    def components(self) -> tuple[Vector, ...]:
        return (self.primary, *self.perturbations)

    def value(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(dot(c, x) for c in self.components)

    def perturbed(self, *extra: Sequence) -> "Objective":
        return Objective(self.primary, self.perturbations + tuple(as_vector(p) for p in extra))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def objective_compare(o: Objective, u: Sequence, v: Sequence) -> int:
    """-1, 0 or 1 as ``u`` is worse than, tied with, or better than ``v``."""
    for c in o.components:
        s = _sign(dot(c, u) - dot(c, v))
        if s:
            return s
    return 0


def tiebreak_alpha(vertices: Sequence[Sequence[Fraction]]) -> tuple[int, int]:
    """``(scale, alpha)`` so that ``x_id(alpha)`` is injective on ``vertices``.

    ``scale`` clears all denominators; the scaled points are lattice points of
    ``[-K, K]^n`` and ``alpha = 2K + 1`` meets the lexicographic-order hypothesis.
    """
    scale = 1
    for v in vertices:
        for x in v:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    K = max((abs(int(x * scale)) for v in vertices for x in v), default=0)
    return scale, 2 * K + 1


def generic(c: Sequence | Objective, vertices: Sequence[Sequence[Fraction]]) -> Objective:
    """``c`` made generic on ``vertices`` by a trailing identity ``x_sigma`` perturbation.

    An :class:`Objective` keeps its own perturbations; the tiebreak goes last.
    """
    o = c if isinstance(c, Objective) else Objective(as_vector(c))
    _, alpha = tiebreak_alpha(vertices)
    return o.perturbed(build_x_sigma(SignedPermutation.identity(o.n), 0, alpha))


# --- signed permutations ------------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """``sigma[i]`` is the signed priority of coordinate ``i``; ``|sigma|`` permutes 1..n."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        if sorted(abs(s) for s in self.sigma) != list(range(1, len(self.sigma) + 1)):
            raise ValueError(f"not a signed permutation: {self.sigma}")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def all(cls, n: int) -> Iterator["SignedPermutation"]:
        for perm in permutations(range(1, n + 1)):
            for signs in product((1, -1), repeat=n):
                yield cls(tuple(s * p for s, p in zip(signs, perm)))

    def inverse(self, j: int) -> tuple[int, int]:
        """Coordinate (0-based) and sign carried by priority ``j`` (1-based)."""
        for i, s in enumerate(self.sigma):
            if abs(s) == j:
                return i, (1 if s > 0 else -1)
        raise ValueError(f"priority {j} out of range")

    def order(self) -> list[tuple[int, int]]:
        """(coordinate, sign) pairs from the highest priority down."""
        return [self.inverse(j) for j in range(self.n, 0, -1)]

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.sigma)


def build_x_sigma(sigma: SignedPermutation, k: int, alpha: int | None = None) -> tuple[int, ...]:
    """``(sign(sigma(i)) * alpha**|sigma(i)|)_i``; ``alpha`` defaults to ``2k + 1``."""
    if alpha is None:
        alpha = 2 * k + 1
    if alpha < 2 * k + 1:
        raise ValueError(f"alpha={alpha} is below 2k+1={2 * k + 1}")
    return tuple((1 if s > 0 else -1) * alpha ** abs(s) for s in sigma.sigma)


def lex_compare(sigma: SignedPermutation, x: Sequence, y: Sequence) -> int:
    """Sign of ``y`` vs ``x`` reversed: -1 if ``x < y``, 1 if ``x > y``, 0 if equal.

    Coordinates are scanned from the highest priority down, each multiplied by
    the sign ``sigma`` attaches to it.
    """
    for i, s in sigma.order():
        a, b = s * x[i], s * y[i]
        if a != b:
            return -1 if a < b else 1
    return 0


@dataclass(frozen=True)
class Flag:
    sigma: SignedPermutation
    faces: tuple[frozenset[int], ...]  # G_n, G_{n-1}, ..., G_0
    vertex: int

    def face(self, i: int) -> frozenset[int]:
        """``G_i``."""
        return self.faces[self.sigma.n - i]


def sigma_flag(p: Polytope, sigma: SignedPermutation) -> Flag:
    """Nested coordinate-maximal faces ending at the ``x_sigma``-maximal vertex."""
    current = frozenset(range(len(p.vertices)))
    faces = [current]
    for i, s in sigma.order():
        best = max(s * p.vertices[v][i] for v in current)
        current = frozenset(v for v in current if s * p.vertices[v][i] == best)
        faces.append(current)
    if len(current) != 1:
        raise PreconditionError("flag did not close on a single vertex")
    return Flag(sigma, tuple(faces), next(iter(current)))


# --- traces -------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    rule: str
    aux: Vector | None = None
    face: frozenset[int] | None = None


@dataclass
class PathTrace:
    vertex_indices: list[int]
    steps: list[Step] = field(default_factory=list)
    declared_bound: int | None = None
    rule: str = ""

    @property
    def length(self) -> int:
        return len(self.vertex_indices) - 1

    @property
    def start(self) -> int:
        return self.vertex_indices[0]

    @property
    def end(self) -> int:
        return self.vertex_indices[-1]

    def within_bound(self) -> bool:
        return self.declared_bound is None or self.length <= self.declared_bound

    def is_walk(self, graph: EdgeGraph) -> bool:
        return all(graph.has_edge(u, v) for u, v in zip(self.vertex_indices, self.vertex_indices[1:]))

    def is_monotone(self, vertices: Sequence[Vector], o: Objective) -> bool:
        vals = [o.value(vertices[i]) for i in self.vertex_indices]
        return all(a < b for a, b in zip(vals, vals[1:]))

    def extend(self, other: "PathTrace") -> None:
        if other.start != self.end:
            raise ValueError("traces do not meet")
        self.vertex_indices.extend(other.vertex_indices[1:])
        self.steps.extend(other.steps)


def _face_set(graph: EdgeGraph, face: Iterable[int] | None) -> frozenset[int]:
    return frozenset(range(graph.n_vertices)) if face is None else frozenset(face)


def _vec(d) -> Vector:
    return d.primary if isinstance(d, Objective) else as_vector(d)


def d_value_count(vertices: Sequence[Vector], d, face: Iterable[int]) -> int:
    dv = _vec(d)
    return len({dot(dv, vertices[i]) for i in face})


def coherent_path(
    graph: EdgeGraph,
    vertices: Sequence[Vector],
    c: Objective,
    d,
    start: int,
    *,
    face: Iterable[int] | None = None,
    mode: str = "both",
    rule: str = "coherent",
) -> PathTrace:
    """The ``c``-coherent ``d``-monotone path from ``start``.

    Each step moves to the ``d``-improving neighbor maximizing the ratio of
    ``c`` gain to ``d`` gain (perturbations of ``c`` compared lexicographically).
    ``mode="both"`` also requires the neighbor to be ``c``-improving and stops when
    none is; ``mode="sweep"`` keeps going until no ``d``-improving neighbor is left.
    ``start`` must be the ``c``-maximum of the ``d``-minimal face.
    """
    if mode not in ("both", "sweep"):
        raise ValueError(f"unknown mode {mode!r}")
    dv = _vec(d)
    F = _face_set(graph, face)
    if start not in F:
        raise PreconditionError("start vertex is not in the face")
    dval = {i: dot(dv, vertices[i]) for i in F}
    cval: dict[int, tuple[Fraction, ...]] = {}

    def cv(i: int) -> tuple[Fraction, ...]:
        if i not in cval:
            cval[i] = c.value(vertices[i])
        return cval[i]

    dmin = min(dval.values())
    if dval[start] != dmin:
        raise PreconditionError(f"start is not on the d-minimal face (d.start={dval[start]} > {dmin})")
    for i in F:
        if dval[i] == dmin and cv(i) > cv(start):
            raise PreconditionError(f"vertex {i} on the d-minimal face is c-better than the start")
    zero = (Fraction(0),) * len(c.components)
    path = [start]
    steps: list[Step] = []
    x = start
    while True:
        best = None
        for u in graph.neighbors(x):
            if u not in F:
                continue
            dd = dval[u] - dval[x]
            if dd <= 0:
                continue
            ratio = tuple((a - b) / dd for a, b in zip(cv(u), cv(x)))
            if mode == "both" and ratio <= zero:
                continue
            key = (ratio, cv(u), -u)
            if best is None or key > best[0]:
                best = (key, u)
        if best is None:
            break
        x = best[1]
        path.append(x)
        steps.append(Step(rule, dv, F))
    return PathTrace(path, steps, len(set(dval.values())) - 1, rule)


def greatest_improvement_path(
    graph: EdgeGraph,
    vertices: Sequence[Vector],
    o: Objective,
    start: int,
    *,
    face: Iterable[int] | None = None,
    bound: int | None = None,
) -> PathTrace:
    """Repeatedly move to the neighbor with the largest objective value."""
    F = _face_set(graph, face)
    x = start
    path = [x]
    steps: list[Step] = []
    while True:
        here = o.value(vertices[x])
        cand = [(o.value(vertices[u]), -u) for u in graph.neighbors(x) if u in F]
        cand = [cv for cv in cand if cv[0] > here]
        if not cand:
            break
        x = -max(cand)[1]
        path.append(x)
        steps.append(Step("greatest_improvement", o.primary, F))
    return PathTrace(path, steps, len(F) - 1 if bound is None else bound, "greatest_improvement")


# --- lattice shadow rule --------------------------------------------------------


def independent_tight_rows(p: Polytope, vertex: int) -> list[int]:
    """Greedy maximal set of tight rows at ``vertex``, independent modulo the affine hull.

    Rows are scanned in canonical order; implicit equalities are skipped so the
    result has exactly ``p.dim`` rows.
    """
    eq = sorted(p.equality_rows)
    basis = [p.hrep.rows[r][0] for r in eq]
    rk = _intla.rank(basis) if basis else 0
    chosen: list[int] = []
    for r in sorted(p.tight(vertex) - p.equality_rows):
        trial = basis + [p.hrep.rows[r][0]]
        r2 = _intla.rank(trial)
        if r2 > rk:
            basis, rk = trial, r2
            chosen.append(r)
        if rk == p.n:
            break
    return chosen


def lattice_shadow_objective(p: Polytope, start: int) -> Objective:
    """``d = -(sum of a maximal independent set of facet normals tight at start)``."""
    rows = independent_tight_rows(p, start)
    d = [0] * p.n
    for r in rows:
        for j, a in enumerate(p.hrep.rows[r][0]):
            d[j] -= a
    return Objective(as_vector(d))

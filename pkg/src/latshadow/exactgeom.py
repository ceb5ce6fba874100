"""Exact rational polytopes: H/V representations, enumeration, faces, graphs, metrics.

All scalars are :class:`fractions.Fraction` or ``int``. Inequality rows are
stored as ``(normal, rhs)`` with integer entries, canonicalized so that
``gcd(normal, rhs) == 1``, and sorted lexicographically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _intla

Rational = Fraction
Vector = tuple[Fraction, ...]
Row = tuple[tuple[int, ...], int]

DELTA_MAX_N = 5
BRUTE_FORCE_SUBSETS = 50_000


class GeometryError(ValueError):
    """Raised for invalid geometric input."""


class UnboundedError(GeometryError):
    pass


class DegenerateInputError(GeometryError):
    pass


class EmptyFaceError(GeometryError):
    pass


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(a: Sequence, x: Sequence) -> Fraction:
    # integer accumulation with a single normalization at the end
    num, den = 0, 1
    for ai, xi in zip(a, x):
        pd = ai.denominator * xi.denominator
        if pd == 1:
            num += ai.numerator * xi.numerator * den
        else:
            num = num * pd + ai.numerator * xi.numerator * den
            den *= pd
    return Fraction(num, den)


def canonical_row(normal: Sequence, rhs) -> Row:
    """Scale ``normal . x <= rhs`` to coprime integers (direction preserved)."""
    vals = _intla.primitive([*normal, rhs])
    if not any(vals[:-1]):
        raise GeometryError("zero normal vector")
    return tuple(vals[:-1]), vals[-1]


@dataclass(frozen=True)
class HRep:
    rows: tuple[Row, ...]
    ambient_dim: int

    def __post_init__(self):
        seen = set()
        for a, b in self.rows:
            if len(a) != self.ambient_dim:
                raise GeometryError(f"row {a} has wrong length for n={self.ambient_dim}")
            if not any(a):
                raise GeometryError("zero normal vector")
            if (a, b) in seen:
                raise GeometryError(f"duplicate row {a} <= {b}")
            seen.add((a, b))

    @classmethod
    def from_rows(cls, rows: Iterable[tuple[Sequence, object]], n: int | None = None) -> "HRep":
        canon = sorted({canonical_row(a, b) for a, b in rows})
        if n is None:
            if not canon:
                raise GeometryError("cannot infer dimension of an empty H-representation")
            n = len(canon[0][0])
        return cls(tuple(canon), n)

    @property
    def A(self) -> list[tuple[int, ...]]:
        return [a for a, _ in self.rows]

    @property
    def b(self) -> list[int]:
        return [b for _, b in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) <= b for a, b in self.rows)

    def tight_rows(self, x: Sequence) -> frozenset[int]:
        return frozenset(i for i, (a, b) in enumerate(self.rows) if dot(a, x) == b)


@dataclass(frozen=True)
class VRep:
    vertices: tuple[Vector, ...]

    @cached_property
    def lattice_box_k(self) -> int | None:
        """Smallest ``k`` with every vertex in ``[0, k]^n``; ``None`` for non-lattice sets."""
        k = 0
        for v in self.vertices:
            for x in v:
                if x.denominator != 1 or x < 0:
                    return None
                k = max(k, int(x))
        return k

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class FaceSpec:
    equality_rows: frozenset[int] = frozenset()


@dataclass(frozen=True, eq=False)
class Polytope:
    """Cross-validated pair of an H- and V-representation.

    Vertices are kept sorted lexicographically; vertex indices everywhere in the
    library refer to this order.
    """

    hrep: HRep
    vrep: VRep
    dim: int
    _tight: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_tight", tuple(self.hrep.tight_rows(v) for v in self.vertices))

    @property
    def vertices(self) -> tuple[Vector, ...]:
        return self.vrep.vertices

    @property
    def n(self) -> int:
        return self.hrep.ambient_dim

    @property
    def k(self) -> int | None:
        return self.vrep.lattice_box_k

    def tight(self, i: int) -> frozenset[int]:
        """Row indices tight at vertex ``i``."""
        return self._tight[i]

    def index_of(self, x: Sequence) -> int:
        x = as_vector(x)
        try:
            return self.vertices.index(x)
        except ValueError:
            raise GeometryError(f"{_fmt(x)} is not a vertex") from None

    @cached_property
    def equality_rows(self) -> frozenset[int]:
        """Rows tight at every vertex (implicit equalities)."""
        rows = frozenset(range(len(self.hrep)))
        for t in self._tight:
            rows &= t
        return rows

    def validate(self) -> None:
        """Check the invariants tying the two representations together."""
        for i, v in enumerate(self.vertices):
            if not self.hrep.contains(v):
                raise GeometryError(f"vertex {_fmt(v)} violates the H-representation")
            if _intla.rank([self.hrep.rows[r][0] for r in self._tight[i]]) != self.n:
                raise GeometryError(f"{_fmt(v)} is not a vertex of the H-representation")
        if affine_dim(self.vertices) != self.dim:
            raise GeometryError("dimension mismatch")

    def __repr__(self) -> str:
        return f"Polytope(n={self.n}, dim={self.dim}, vertices={len(self.vertices)}, rows={len(self.hrep)})"


def _fmt(v: Sequence) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return _intla.rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def _common_denominator(points: Sequence[Sequence[Fraction]]) -> int:
    L = 1
    for p in points:
        for x in p:
            L = L * x.denominator // math.gcd(L, x.denominator)
    return L


# --- vertex enumeration ------------------------------------------------------


def _solve_subsets(A: np.ndarray, b: np.ndarray, n: int) -> set[Vector]:
    """Vertices of ``{Ax <= b}`` (full column rank A) by brute force over n-subsets of rows."""
    m = A.shape[0]
    aug_rows = [list(map(int, A[i])) + [int(b[i])] for i in range(m)]
    dtype = _intla.pick_dtype(aug_rows, n)
    Aug = np.array(aug_rows, dtype=object).astype(dtype)
    Ad = Aug[:, :n]
    bd = Aug[:, n]
    found: set[Vector] = set()
    for chunk in _intla.combination_chunks(m, n):
        R, ok = _intla.gauss_jordan(Aug[chunk])
        if not ok.any():
            continue
        R = R[ok]
        den = R[:, 0, 0].copy()
        num = R[:, :, n].copy()
        neg = den < 0
        den[neg] = -den[neg]
        num[neg] = -num[neg]
        lhs = num @ Ad.T
        feas = (lhs <= bd[None, :] * den[:, None]).all(axis=1)
        sol = np.concatenate([num[feas], den[feas][:, None]], axis=1)
        if sol.dtype == np.int64:
            g = np.gcd.reduce(sol, axis=1)
            sol = np.unique(sol // g[:, None], axis=0)
        for row in {tuple(int(v) for v in r) for r in sol}:
            found.add(tuple(Fraction(x, row[-1]) for x in row[:-1]))
    return found


def _has_recession_ray(A: np.ndarray, n: int) -> bool:
    """True if ``{y : Ay <= 0}`` contains a nonzero ray (A assumed of rank n)."""
    m = A.shape[0]
    if n == 1:
        col = A[:, 0]
        return bool((col <= 0).all() or (col >= 0).all())
    rows = [list(map(int, r)) for r in A]
    dtype = _intla.pick_dtype(rows, n)
    Ad = np.array(rows, dtype=object).astype(dtype)
    for chunk in _intla.combination_chunks(m, n - 1):
        r = _intla.cofactor_normals(Ad[chunk])
        nonzero = (r != 0).any(axis=1)
        s = r @ Ad.T
        ray = nonzero & (((s <= 0).all(axis=1)) | ((s >= 0).all(axis=1)))
        if ray.any():
            return True
    return False


def enumerate_vertices(hrep: HRep, *, check_bounded: bool = True) -> VRep:
    """Extreme points of ``{x : Ax <= b}`` in lexicographic order.

    Raises :class:`UnboundedError` when the feasible set is nonempty and unbounded.
    """
    n = hrep.ambient_dim
    if not hrep.rows:
        raise UnboundedError("unbounded: no constraints")
    A = np.array(hrep.A, dtype=object)
    b = np.array(hrep.b, dtype=object)
    r, pivots = _intla.rref(hrep.A)
    if len(pivots) < n:
        # A polyhedron without vertices is either empty or contains a line; decide
        # which by restricting to coordinates spanning the row space of A.
        sub = np.array([[a[j] for j in pivots] for a in hrep.A], dtype=object)
        if pivots and _solve_subsets(sub, b, len(pivots)):
            raise UnboundedError("unbounded: constraint matrix has a nontrivial lineality space")
        if not pivots and all(bi >= 0 for bi in hrep.b):
            raise UnboundedError("unbounded: constraints do not restrict any direction")
        return VRep(())
    verts = _solve_subsets(A, b, n)
    if verts and check_bounded and _has_recession_ray(A, n):
        raise UnboundedError("unbounded: recession cone is nontrivial")
    return VRep(tuple(sorted(verts)))


# --- facet enumeration -------------------------------------------------------


def _affine_chart(points: Sequence[Vector]):
    """Pivot coordinates of the affine hull and integral equations describing it."""
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    R, pivots = _intla.rref(diffs)
    n = len(p0)
    equations: list[Row] = []
    for j in range(n):
        if j in pivots:
            continue
        # every direction y in the hull satisfies y_j = sum_c y_c R_c[j]
        normal = [Fraction(0)] * n
        normal[j] = Fraction(1)
        for row, c in zip(R, pivots):
            normal[c] -= row[j]
        rhs = dot(normal, p0)
        equations.append(canonical_row(normal, rhs))
    return pivots, equations


def facet_enumeration(points: Iterable[Sequence], *, cross_validate: bool = True) -> Polytope:
    """Convex hull of a finite point set as a :class:`Polytope`.

    Facets are found by brute force over affinely independent subsets spanning
    hyperplanes of the affine hull; lower-dimensional hulls get their affine
    hull as pairs of opposite inequalities.
    """
    pts = sorted({as_vector(p) for p in points})
    if not pts:
        raise DegenerateInputError("degenerate input: no points")
    n = len(pts[0])
    pivots, equations = _affine_chart(pts)
    d = len(pivots)
    if d < 1:
        raise DegenerateInputError("degenerate input: fewer than 2 affinely independent points")
    L = _common_denominator(pts)
    Q = [[int(p[c] * L) for c in pivots] for p in pts]
    rows: set[Row] = set()
    for a, b in equations:
        rows.add((a, b))
        rows.add((tuple(-x for x in a), -b))
    for normal, beta in _projected_facets(Q, d):
        lifted = [0] * n
        for c, v in zip(pivots, normal):
            lifted[c] = v * L
        rows.add(canonical_row(lifted, beta))
    hrep = HRep(tuple(sorted(rows)), n)
    extreme = []
    for p in pts:
        tight = [a for a, b in hrep.rows if dot(a, p) == b]
        if _intla.rank(tight) == n:
            extreme.append(p)
    poly = Polytope(hrep, VRep(tuple(extreme)), d)
    if cross_validate:
        if math.comb(len(hrep), n) <= BRUTE_FORCE_SUBSETS:
            agree = enumerate_vertices(hrep, check_bounded=False).vertices == poly.vertices
        else:
            agree = edge_closed(hrep, poly.vertices)
        if not agree:
            raise GeometryError("H- and V-representations disagree")
        poly.validate()
    return poly


def edge_closed(hrep: HRep, vertices: Sequence[Vector]) -> bool:
    """True if every edge of ``{Ax <= b}`` leaving a listed vertex ends at a listed vertex.

    A bounded polyhedron has a connected graph, so for a nonempty list of its
    vertices this holds exactly when the list is the whole vertex set.
    """
    n = hrep.ambient_dim
    known = set(vertices)
    dtype = _intla.pick_dtype(hrep.A, n)
    A = np.array(hrep.A, dtype=object).astype(dtype)
    for v in vertices:
        tight = sorted(hrep.tight_rows(v))
        T = A[tight]
        if n == 1:
            rays = np.array([[1], [-1]], dtype=dtype)
        else:
            rays = np.concatenate(
                [_intla.cofactor_normals(T[c]) for c in _intla.combination_chunks(len(tight), n - 1)]
            )
        S = rays @ T.T
        up, down = (S >= 0).all(axis=1), (S <= 0).all(axis=1)
        keep = (rays != 0).any(axis=1) & (up | down)
        rays = np.where((up & ~down)[:, None], -rays, rays)[keep]
        if rays.dtype == np.int64:
            rays = np.unique(rays // np.gcd.reduce(rays, axis=1)[:, None], axis=0)
        for y in {_intla.primitive(r) for r in rays}:
            step = None
            for a, b in hrep.rows:
                ay = sum(ai * yi for ai, yi in zip(a, y))
                if ay > 0:
                    t = (b - dot(a, v)) / ay
                    step = t if step is None else min(step, t)
            if step is None:
                raise UnboundedError("unbounded: edge ray at a vertex")
            if tuple(vi + step * yi for vi, yi in zip(v, y)) not in known:
                return False
    return bool(vertices)


def _projected_facets(Q: list[list[int]], d: int) -> set[tuple[tuple[int, ...], int]]:
    """Facets ``normal . q <= beta`` of a full-dimensional integer point set in R^d."""
    N = len(Q)
    if d == 1:
        vals = [q[0] for q in Q]
        return {((1,), max(vals)), ((-1,), -min(vals))}
    dtype = _intla.pick_dtype(Q, d)
    Qa = np.array(Q, dtype=object).astype(dtype)
    out: set[tuple[tuple[int, ...], int]] = set()
    for chunk in _intla.combination_chunks(N, d):
        base = Qa[chunk[:, 0]]
        D = Qa[chunk[:, 1:]] - base[:, None, :]
        normals = _intla.cofactor_normals(D)
        nonzero = (normals != 0).any(axis=1)
        if not nonzero.any():
            continue
        normals, base = normals[nonzero], base[nonzero]
        side = Qa @ normals.T - (base * normals).sum(axis=1)[None, :]
        below = (side <= 0).all(axis=0)
        above = (side >= 0).all(axis=0)
        for nv, bv, lo, hi in zip(normals, base, below, above):
            if not (lo or hi):
                continue
            vec = [int(x) for x in nv]
            if hi and not lo:
                vec = [-x for x in vec]
            g = math.gcd(*vec)
            vec = tuple(x // g for x in vec)
            out.add((vec, sum(x * int(y) for x, y in zip(vec, bv))))
    return out


def polytope_from_hrep(rows: Iterable[tuple[Sequence, object]] | HRep, n: int | None = None) -> Polytope:
    """Polytope from inequalities, with vertices enumerated and validated."""
    hrep = rows if isinstance(rows, HRep) else HRep.from_rows(rows, n)
    vrep = enumerate_vertices(hrep)
    if not vrep.vertices:
        raise GeometryError("empty polytope")
    poly = Polytope(hrep, vrep, affine_dim(vrep.vertices))
    poly.validate()
    return poly


def is_irredundant(hrep: HRep, vertices: Sequence[Vector]) -> bool:
    """Each non-equality row must be tight on a facet: its tight vertices span dim-1."""
    d = affine_dim(vertices)
    for a, b in hrep.rows:
        tight = [v for v in vertices if dot(a, v) == b]
        if len(tight) == len(vertices):
            continue
        if not tight or affine_dim(tight) != d - 1:
            return False
    return True


# --- faces and graphs --------------------------------------------------------


def face_vertex_indices(p: Polytope, f: FaceSpec) -> frozenset[int]:
    return frozenset(i for i in range(len(p.vertices)) if f.equality_rows <= p.tight(i))


def face_spec_of(p: Polytope, indices: Iterable[int]) -> FaceSpec:
    """Smallest face spec whose face contains the given vertices."""
    rows = frozenset(range(len(p.hrep)))
    for i in indices:
        rows &= p.tight(i)
    return FaceSpec(rows)


def face_of(p: Polytope, f: FaceSpec) -> Polytope:
    idx = face_vertex_indices(p, f)
    if not idx:
        raise EmptyFaceError("empty face")
    rows = list(p.hrep.rows)
    for r in sorted(f.equality_rows):
        a, b = p.hrep.rows[r]
        rev = (tuple(-x for x in a), -b)
        if rev not in rows:
            rows.append(rev)
    hrep = HRep(tuple(sorted(rows)), p.n)
    verts = tuple(p.vertices[i] for i in sorted(idx))
    return Polytope(hrep, VRep(verts), affine_dim(verts))


@dataclass(frozen=True)
class EdgeGraph:
    n_vertices: int
    adjacency: tuple[tuple[int, ...], ...]

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self.adjacency[i]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n_vertices) for v in self.adjacency[u] if u < v]

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n_vertices


def build_edge_graph(p: Polytope) -> EdgeGraph:
    """u ~ v iff the smallest face containing both has no other vertex."""
    masks = [sum(1 << r for r in p.tight(i)) for i in range(len(p.vertices))]
    nv = len(masks)
    adj: list[list[int]] = [[] for _ in range(nv)]
    for u, v in combinations(range(nv), 2):
        common = masks[u] & masks[v]
        if all(w in (u, v) or masks[w] & common != common for w in range(nv)):
            adj[u].append(v)
            adj[v].append(u)
    return EdgeGraph(nv, tuple(tuple(sorted(a)) for a in adj))


# --- metrics -----------------------------------------------------------------


@dataclass(frozen=True)
class LevelProfile:
    per_row: tuple[int, ...]

    @property
    def level(self) -> int:
        return max(self.per_row, default=1)


def level_profile(p: Polytope) -> LevelProfile:
    counts = tuple(len({dot(a, v) for v in p.vertices}) for a, _ in p.hrep.rows)
    return LevelProfile(counts)


@dataclass(frozen=True)
class MatrixMetrics:
    norm_inf: int
    max_support: int
    delta: int | None
    delta_skipped: bool


def matrix_metrics(hrep: HRep, *, delta_max_n: int = DELTA_MAX_N) -> MatrixMetrics:
    """``||A||_inf``, the largest row support, and the largest |subdeterminant| when small."""
    A = hrep.A
    norm = max((abs(x) for a in A for x in a), default=0)
    supp = max((sum(1 for x in a if x) for a in A), default=0)
    if hrep.ambient_dim > delta_max_n:
        return MatrixMetrics(norm, supp, None, True)
    delta = norm
    m, n = len(A), hrep.ambient_dim
    Aa = np.array(A, dtype=object)
    for s in range(2, min(m, n) + 1):
        for cols in combinations(range(n), s):
            sub = Aa[:, cols]
            for chunk in _intla.combination_chunks(m, s):
                dets = _intla.batch_det(sub[chunk])
                delta = max(delta, max(abs(int(x)) for x in dets))
    return MatrixMetrics(norm, supp, delta, False)

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F
from latshadow.exactgeom import build_edge_graph, dot
from latshadow.oracles import brute_force_optimum
from latshadow.pivotcore import (
    Objective,
    PreconditionError,
    SignedPermutation,
    build_x_sigma,
    coherent_path,
    generic,
    greatest_improvement_path,
    independent_tight_rows,
    lattice_shadow_objective,
    lex_compare,
    objective_compare,
    sigma_flag,
    tiebreak_alpha,
)
from latshadow.polygen import GenSpec, generate


def coords(p, trace):
    return [p.vertices[i] for i in trace.vertex_indices]


# --- objectives --------------------------------------------------------------------


def test_objective_compare_ties_and_perturbation():
    assert objective_compare(Objective((1, 0)), (2, 1), (2, 0)) == 0
    assert objective_compare(Objective((1, 0), [(0, 1)]), (2, 1), (2, 0)) == 1
    assert objective_compare(Objective((1, 0), [(0, 1)]), (2, 0), (2, 1)) == -1


def test_x_sigma_perturbation_orders_square(square):
    p, _ = square
    o = Objective((1, 1), [build_x_sigma(SignedPermutation.identity(2), 1)])
    vals = sorted(p.vertices, key=o.value)
    assert vals[-1] == F(1, 1) and vals[0] == F(0, 0)
    assert len({o.value(v) for v in p.vertices}) == 4


def test_generic_keeps_existing_perturbations(p5):
    p, _ = p5
    o = generic(Objective((1, 0), [(0, 1)]), p.vertices)
    assert o.perturbations[0] == F(0, 1)
    assert len({o.value(v) for v in p.vertices}) == 5
    scale, alpha = tiebreak_alpha([F(Fraction(1, 2), 1)])
    assert (scale, alpha) == (2, 5)


def test_objective_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        Objective((1, 0), [(1, 0, 0)])


# --- signed permutations -------------------------------------------------------------


def test_build_x_sigma_values():
    assert build_x_sigma(SignedPermutation.identity(2), 2) == (5, 25)
    assert build_x_sigma(SignedPermutation((-2, 1)), 2, 5) == (-25, 5)
    with pytest.raises(ValueError):
        build_x_sigma(SignedPermutation.identity(2), 2, 4)


def test_x_sigma_ordering_example():
    x = build_x_sigma(SignedPermutation.identity(2), 2)
    assert dot(x, (2, 1)) == 35 and dot(x, (0, 2)) == 50


def test_signed_permutation_validation_and_count():
    with pytest.raises(ValueError):
        SignedPermutation((1, 1))
    with pytest.raises(ValueError):
        SignedPermutation((0, 2))
    assert len(list(SignedPermutation.all(3))) == 48
    assert SignedPermutation((-2, 1)).inverse(2) == (0, -1)


def test_lex_compare_examples():
    ident = SignedPermutation.identity(2)
    assert lex_compare(ident, (2, 1), (0, 2)) == -1
    assert lex_compare(ident, (1, 2), (0, 2)) == 1
    assert lex_compare(ident, (1, 2), (1, 2)) == 0


def test_lex_order_agrees_with_dot_on_small_box():
    pts = list(product(range(-2, 3), repeat=2))
    for sigma in SignedPermutation.all(2):
        w = build_x_sigma(sigma, 2)
        for x, y in product(pts, pts):
            d = dot(w, x) - dot(w, y)
            assert lex_compare(sigma, x, y) == (d > 0) - (d < 0)


@st.composite
def sigma_and_points(draw):
    n = draw(st.integers(1, 5))
    k = draw(st.integers(1, 6))
    perm = draw(st.permutations(range(1, n + 1)))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n))
    pt = st.tuples(*[st.integers(-k, k)] * n)
    return SignedPermutation(tuple(s * q for s, q in zip(signs, perm))), k, draw(pt), draw(pt)


@given(sigma_and_points())
@settings(max_examples=300, deadline=None)
def test_lex_order_property(data):
    sigma, k, x, y = data
    w = build_x_sigma(sigma, k)
    d = dot(w, x) - dot(w, y)
    assert lex_compare(sigma, x, y) == (d > 0) - (d < 0)


# --- flags --------------------------------------------------------------------------


def test_pentagon_flags(p5):
    p, _ = p5
    flag = sigma_flag(p, SignedPermutation.identity(2))
    assert {p.vertices[i] for i in flag.face(1)} == {F(0, 2), F(1, 2)}
    assert p.vertices[flag.vertex] == F(1, 2)
    assert p.vertices[sigma_flag(p, SignedPermutation((-1, -2))).vertex] == F(0, 0)


def test_cube_flag(cube3):
    p, _ = cube3
    assert p.vertices[sigma_flag(p, SignedPermutation.identity(3)).vertex] == F(1, 1, 1)


@pytest.mark.parametrize("text", ["family=lattice_hull,n=3,k=3,points=9,seed=4", "family=order_polytope,n=4,seed=2"])
def test_flag_vertex_is_x_sigma_argmax(text):
    p = generate(GenSpec.parse(text))
    for sigma in SignedPermutation.all(p.n):
        w = build_x_sigma(sigma, p.k)
        best = max(range(len(p.vertices)), key=lambda i: dot(w, p.vertices[i]))
        assert sigma_flag(p, sigma).vertex == best


# --- coherent paths --------------------------------------------------------------------


def test_pentagon_sweep(p5):
    p, g = p5
    c = Objective((0, 1), [(1, 0)])
    t = coherent_path(g, p.vertices, c, (1, 0), p.index_of((0, 2)), mode="sweep")
    assert coords(p, t) == [F(0, 2), F(1, 2), F(2, 1)]
    assert t.length == t.declared_bound == 2


def test_square_ratio_choice(square):
    p, g = square
    t = coherent_path(g, p.vertices, Objective((2, 1)), (1, 1), p.index_of((0, 0)))
    assert coords(p, t) == [F(0, 0), F(1, 0), F(1, 1)]


def test_d_equal_c_reaches_optimum(p5):
    p, g = p5
    c = generic((3, 1), p.vertices)
    start = min(range(5), key=lambda i: c.value(p.vertices[i]))
    t = coherent_path(g, p.vertices, c, c.primary, start)
    assert t.end == brute_force_optimum(p.vertices, c)
    assert t.length <= len({dot(c.primary, v) for v in p.vertices}) - 1


def test_precondition_names_better_vertex(p5):
    p, g = p5
    with pytest.raises(PreconditionError, match="vertex"):
        coherent_path(g, p.vertices, Objective((0, 1)), (1, 0), p.index_of((0, 0)))
    with pytest.raises(PreconditionError):
        coherent_path(g, p.vertices, Objective((0, 1)), (1, 0), p.index_of((2, 0)))
    with pytest.raises(ValueError):
        coherent_path(g, p.vertices, Objective((0, 1)), (1, 0), 0, mode="other")


@st.composite
def instance_and_objective(draw):
    text = draw(
        st.sampled_from(
            [
                "family=polygon,n=2,k=2,variant=p5",
                "family=lattice_hull,n=3,k=2,points=7,seed=3",
                "family=half_integral_hull,n=3,points=7,seed=1",
                "family=order_polytope,n=3,seed=2",
                "family=cross_polytope,n=3,variant=shifted",
            ]
        )
    )
    p = generate(GenSpec.parse(text))
    c = draw(st.tuples(*[st.integers(-5, 5)] * p.n))
    start = draw(st.integers(0, len(p.vertices) - 1))
    return p, c, start


@given(instance_and_objective(), st.integers(1, 7), st.sampled_from(["both", "sweep"]))
@settings(max_examples=80, deadline=None)
def test_lattice_shadow_paths_are_monotone_optimal_and_scale_invariant(data, scale, mode):
    p, c, start = data
    g = build_edge_graph(p)
    o = generic(c, p.vertices)
    d = lattice_shadow_objective(p, start)
    t = coherent_path(g, p.vertices, o, d, start, mode=mode)
    assert t.is_walk(g)
    assert t.length <= t.declared_bound
    dvals = [dot(d.primary, p.vertices[i]) for i in t.vertex_indices]
    assert all(a < b for a, b in zip(dvals, dvals[1:]))
    if mode == "both":
        assert t.is_monotone(p.vertices, o)
        assert t.end == brute_force_optimum(p.vertices, o)
    scaled = coherent_path(g, p.vertices, o, tuple(scale * Fraction(x, 3) for x in d.primary), start, mode=mode)
    assert scaled.vertex_indices == t.vertex_indices


# --- lattice shadow objective ------------------------------------------------------------


def test_pentagon_shadow_objective(p5):
    p, _ = p5
    start = p.index_of((0, 0))
    d = lattice_shadow_objective(p, start)
    assert d.primary == F(1, 1)
    assert sorted({dot(d.primary, v) for v in p.vertices}) == [0, 2, 3]


def test_cube_shadow_objective(cube3):
    p, _ = cube3
    assert lattice_shadow_objective(p, p.index_of((0, 0, 0))).primary == F(1, 1, 1)


@pytest.mark.parametrize(
    "text", ["family=half_integral_hull,n=5,points=4,seed=1", "family=lattice_hull,n=4,k=3,points=10,seed=2"]
)
def test_shadow_objective_is_uniquely_minimized_at_start(text):
    p = generate(GenSpec.parse(text))
    for start in range(len(p.vertices)):
        rows = independent_tight_rows(p, start)
        assert len(rows) == p.dim
        d = lattice_shadow_objective(p, start).primary
        vals = [dot(d, v) for v in p.vertices]
        assert vals.count(min(vals)) == 1 and vals[start] == min(vals)
        norm_a = max(abs(x) for a, _ in p.hrep.rows for x in a)
        assert max(abs(x) for x in d) <= p.dim * norm_a


# --- greatest improvement -------------------------------------------------------------


def test_pentagon_greatest_improvement(p5):
    p, g = p5
    o = Objective(build_x_sigma(SignedPermutation.identity(2), 2))
    t = greatest_improvement_path(g, p.vertices, o, p.index_of((2, 0)))
    assert coords(p, t) == [F(2, 0), F(2, 1), F(1, 2)]
    assert greatest_improvement_path(g, p.vertices, o, p.index_of((1, 2))).length == 0


def test_cube_greatest_improvement(cube3):
    p, g = cube3
    t = greatest_improvement_path(g, p.vertices, Objective((5, 25, 125)), p.index_of((0, 0, 0)))
    assert coords(p, t) == [F(0, 0, 0), F(0, 0, 1), F(0, 1, 1), F(1, 1, 1)]

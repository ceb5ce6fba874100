from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F
from latshadow.exactgeom import GeometryError, build_edge_graph, level_profile
from latshadow.oracles import OrientationDigraph, brute_force_optimum, shortest_monotone_distance
from latshadow.pathalgos import (
    adaptive_sigma_descent,
    greatest_improvement_solve,
    is_half_integral,
    lattice_shadow_solve,
    path_from_sigma_max,
    solve_half_integral,
    solve_lattice_lp,
    solve_level,
    uniform_support,
)
from latshadow.pivotcore import Objective, PreconditionError, SignedPermutation, build_x_sigma, generic, sigma_flag
from latshadow.polygen import GenSpec, generate


H = Fraction(1, 2)


def coords(p, trace):
    return [p.vertices[i] for i in trace.vertex_indices]


def check(name, report):
    return next(b for b in report.bound_checks if b.name == name)


# --- half-integral -----------------------------------------------------------------


def test_half_cross_polytope_example(half_cross3):
    p, g = half_cross3
    c = generic((1, 2, 3), p.vertices)
    r = solve_half_integral(p, g, c, p.index_of((H, H, 0)))
    assert coords(p, r.trace) == [F(H, H, 0), F(H, 1, H), F(H, H, 1)]
    assert uniform_support(p) == 1
    assert check("half_integral:2s", r).declared == 2 and r.ok
    assert check("support_phase<=d", r).observed == 0


def test_half_integral_start_at_optimum(half_cross3):
    p, g = half_cross3
    c = generic((1, 2, 3), p.vertices)
    opt = brute_force_optimum(p.vertices, c)
    assert solve_half_integral(p, g, c, opt).steps == 0


def test_half_integral_rejects_other_polytopes(p5):
    p, g = p5
    assert not is_half_integral(p)
    with pytest.raises(GeometryError):
        solve_half_integral(p, g, Objective((1, 0)), 0)


@pytest.mark.parametrize("seed", range(1, 6))
def test_dilated_hull_in_chart_meets_bounds(seed):
    p = generate(GenSpec("half_integral_hull", 4, points=8, seed=seed))
    g = build_edge_graph(p)
    for cvec in [(1, -2, 3, 1), (-1, 0, 2, 5), (4, 4, -3, 0)]:
        c = generic(cvec, p.vertices)
        for start in range(len(p.vertices)):
            r = solve_half_integral(p, g, c, start)
            assert r.ok, r.violations()
            assert r.optimum == brute_force_optimum(p.vertices, c)
            assert r.trace.is_monotone(p.vertices, c) and r.trace.is_walk(g)


def test_lower_dimensional_half_integral_uses_d_plus_2n():
    p = generate(GenSpec("half_integral_hull", 5, points=4, seed=1))
    assert p.dim < p.n
    g = build_edge_graph(p)
    r = solve_half_integral(p, g, generic((1, 2, 3, 4, 5), p.vertices), 0)
    assert check("half_integral:d+2n", r).declared == p.dim + 2 * p.n


# --- (m+1)-level ---------------------------------------------------------------------


def test_pentagon_level_bound(p5):
    p, g = p5
    for cvec in [(1, 0), (0, 1), (-1, 2), (3, -1), (-2, -1)]:
        c = generic(cvec, p.vertices)
        for start in range(5):
            r = solve_level(p, g, c, start)
            assert check("level:(d-1)m+1", r).declared == 3
            assert r.steps <= 3 and r.ok
            assert r.optimum == brute_force_optimum(p.vertices, c)


def test_cube_level_bound_is_d(cube3):
    p, g = cube3
    c = generic((-1, 2, 1), p.vertices)
    for start in range(8):
        r = solve_level(p, g, c, start)
        assert check("level:(d-1)m+1", r).declared == 3 and r.ok


@pytest.mark.parametrize("seed", range(1, 5))
def test_order_polytope_level_bound(seed):
    p = generate(GenSpec("order_polytope", 4, seed=seed))
    assert level_profile(p).level == 2
    g = build_edge_graph(p)
    c = generic((2, -1, 3, -4), p.vertices)
    for start in range(len(p.vertices)):
        r = solve_level(p, g, c, start)
        assert r.ok and r.steps <= p.dim
        assert r.trace.is_monotone(p.vertices, c)


# --- sigma descent and ascent ------------------------------------------------------------


def test_descent_from_pentagon_corner(p5):
    p, g = p5
    res = adaptive_sigma_descent(p, g, p.index_of((2, 0)))
    assert res.trace.length <= 2
    assert res.trace.end == sigma_flag(p, res.sigma).vertex
    assert res.sigma.inverse(2)[0] == 0


def test_descent_zero_steps_on_dilated_square():
    p = generate(GenSpec("cube", 2, k=2))
    g = build_edge_graph(p)
    res = adaptive_sigma_descent(p, g, p.index_of((0, 0)))
    assert res.trace.length == 0
    assert all(s < 0 for s in res.sigma.sigma)


@pytest.mark.parametrize("text", ["family=lattice_hull,n=3,k=3,points=8,seed=2", "family=cube,n=3,k=3"])
def test_descent_legs_are_short_and_coordinate_monotone(text):
    p = generate(GenSpec.parse(text))
    g = build_edge_graph(p)
    for start in range(len(p.vertices)):
        res = adaptive_sigma_descent(p, g, start)
        assert res.trace.length <= p.dim * (p.k // 2)
        assert res.trace.end == sigma_flag(p, res.sigma).vertex
        assert res.trace.is_walk(g)
        for leg in res.legs:
            assert leg.length <= p.k // 2


def test_pentagon_sigma_max_example(p5):
    p, g = p5
    r = path_from_sigma_max(p, g, SignedPermutation.identity(2), Objective((1, 0), [(0, 1)]))
    assert coords(p, r.trace) == [F(1, 2), F(2, 1)]
    assert check("flag_path:dk", r).declared == 4


def test_sigma_max_with_c_equal_x_sigma(p5):
    p, g = p5
    sigma = SignedPermutation((2, -1))
    r = path_from_sigma_max(p, g, sigma, Objective(build_x_sigma(sigma, 2)))
    assert r.steps == 0


def test_cube_sigma_max_full_length(cube3):
    p, g = cube3
    c = generic((-1, -1, -1), p.vertices)
    r = path_from_sigma_max(p, g, SignedPermutation.identity(3), c)
    assert r.steps == 3 == check("flag_path:dk", r).declared
    assert p.vertices[r.optimum] == F(0, 0, 0)


def test_sigma_max_rejects_wrong_start(p5):
    p, g = p5
    with pytest.raises(PreconditionError):
        path_from_sigma_max(p, g, SignedPermutation.identity(2), Objective((1, 0)), start=0)


# --- lattice shadow and two-phase --------------------------------------------------------


def test_pentagon_lattice_shadow(p5):
    p, g = p5
    for cvec in [(1, 0), (0, 1), (-1, 1), (1, 1)]:
        c = generic(cvec, p.vertices)
        r = lattice_shadow_solve(p, g, c, p.index_of((0, 0)))
        assert r.steps <= 2
        assert check("shadow:dnk|A|", r).declared == 8
        assert r.optimum == brute_force_optimum(p.vertices, c)


def test_two_phase_pentagon(p5):
    p, g = p5
    c = Objective((1, 0), [(0, 1)])
    r = solve_lattice_lp(p, g, c, p.index_of((0, 0)))
    assert p.vertices[r.optimum] == F(2, 1)
    assert r.steps <= 6 and r.ok
    assert r.trace.is_walk(g)


def test_two_phase_zero_steps_when_done(cube3):
    p, g = cube3
    c = generic((1, 1, 1), p.vertices)
    r = solve_lattice_lp(p, g, c, p.index_of((1, 1, 1)))
    assert r.steps == 0


@st.composite
def lattice_case(draw):
    n = draw(st.integers(2, 3))
    k = draw(st.integers(1, 3))
    seed = draw(st.integers(0, 10_000))
    p = generate(GenSpec("lattice_hull", n, k=k, points=n + 4, seed=seed))
    c = draw(st.tuples(*[st.integers(-9, 9)] * n))
    start = draw(st.integers(0, len(p.vertices) - 1))
    return p, c, start


@given(lattice_case())
@settings(max_examples=60, deadline=None)
def test_lattice_rules_agree_with_oracles(case):
    p, cvec, start = case
    g = build_edge_graph(p)
    c = generic(cvec, p.vertices)
    opt = brute_force_optimum(p.vertices, c)
    bfs = OrientationDigraph.build(g, p.vertices, c).distances_to_sink()
    for solve in (lattice_shadow_solve, solve_lattice_lp, solve_level, greatest_improvement_solve):
        r = solve(p, g, c, start)
        assert r.ok, (solve.__name__, r.violations())
        assert r.optimum == opt
        assert r.trace.is_walk(g)
        if solve is not solve_lattice_lp:
            assert r.trace.is_monotone(p.vertices, c)
            assert r.steps >= bfs[start] == shortest_monotone_distance(g, p.vertices, c, start)
    r = solve_lattice_lp(p, g, c, start)
    assert r.sub_lp_count <= 2 * p.n
    sigma_vertex = sigma_flag(p, r.sigma).vertex
    assert bfs[sigma_vertex] <= p.dim * p.k

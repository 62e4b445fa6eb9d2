from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull, Delaunay

from affinesets.binomial import normalize_binomial, toric_solve
from affinesets.enumeration import ZeroSelection
from affinesets.feasibility import fourier_motzkin, simplex_interior
from affinesets.numbers import QI
from affinesets.poly import Polynomial, System, format_polynomial, parse_system
from affinesets.polytope import degree_of_map, lattice_index, newton_edges, normalized_volume
from affinesets.tropical import (INF, check_specialization_commutes, cone_intersection, enumerate_tuples,
                                 initial_form, parse_weight, solve_case)


def test_volume_small():
    assert normalized_volume([(0, 0), (1, 0), (0, 1)]) == 1
    assert normalized_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 1
    assert normalized_volume([(0, 0), (2, 0), (0, 2), (2, 2)]) == 8
    assert normalized_volume([(0, 0), (1, 1), (2, 2)]) == 0
    assert normalized_volume([]) == 0


def test_fractional_volume_and_index():
    rows = [(5, 21), (18, 80), (11, 0), (0, -33)]
    assert normalized_volume([(0, 0)] + rows) == 1243
    assert lattice_index(rows, 2) == 11


def test_fractional_degree(fractional):
    for m in toric_solve(normalize_binomial(fractional)):
        assert degree_of_map(m) == 113


def test_newton_edges_square_with_diagonal_point():
    edges = newton_edges([(0, 0), (2, 0), (0, 2), (1, 1)])
    assert sorted(e.endpoints for e in edges) == [((0, 0), (0, 2)), ((0, 0), (2, 0)), ((0, 2), (2, 0))]
    with pytest.raises(ValueError):
        newton_edges([(1, 1)])


def test_initial_form_four_var(four_var):
    w = parse_weight("2,inf,1,inf")
    assert w == (2, INF, 1, INF)
    forms = [format_polynomial(initial_form(p, w), four_var.variables) for p in four_var.polynomials]
    assert forms == ["0", "0", "0", "x3^2 + x1"]


def test_parse_weight_errors():
    for bad in ("inf,inf", "1,x", "1/0"):
        with pytest.raises(ValueError):
            parse_weight(bad)


def test_cone_intersection():
    assert cone_intersection([((), ((1, 0),)), ((), ((0, 1),))]) is not None
    assert cone_intersection([((), ((1, 0),)), ((), ((-1, 0),))]) is None
    assert len(cone_intersection([], 3)) == 3


def test_four_var_cases(four_var):
    got = {}
    for sel in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (1, 2, 3)]:
        case = solve_case(four_var, ZeroSelection(sel))
        got[sel] = case
    line = "(x1 = 0, x2 = 0, x3 = 0, x4 = t1)"
    names = four_var.variables
    assert [m.describe(names) for m in got[(0, 1)].maps] == [line, "(x1 = 0, x2 = 0, x3 = 1, x4 = -1)"]
    assert [m.describe(names) for m in got[(1, 2)].maps] == [
        line, "(x1 = -1, x2 = 0, x3 = 0, x4 = 1)", "(x1 = -1, x2 = 0, x3 = 0, x4 = 0)"]
    (curve,) = got[(1, 3)].curves
    assert not got[(1, 3)].maps
    leading = {v: [format_polynomial(p, names) for p in forms] for v, forms in curve.leading}
    assert leading[(2, 1)] == ["x3^2 + x1"]
    assert [m.describe(names) for m in got[(2, 3)].maps] == [
        "(x1 = 0, x2 = t1, x3 = 0, x4 = 0)", "(x1 = -1, x2 = 0, x3 = 0, x4 = 0)"]
    assert [m.describe(names) for m in got[(1, 2, 3)].maps] == [
        "(x1 = 0, x2 = 0, x3 = 0, x4 = 0)", "(x1 = -1, x2 = 0, x3 = 0, x4 = 0)"]
    assert [m.describe(names) for m in got[(0, 2)].maps] == ["(x1 = 0, x2 = t1, x3 = 0, x4 = t2)"]


def test_specialization_on_four_var(four_var):
    tuples = enumerate_tuples(four_var)
    assert len(tuples) == 10
    for t in tuples:
        nonzero = [k for k in range(four_var.nvars) if k not in t.selection.variables]
        assert check_specialization_commutes(four_var, t.selection, [t.weight[k] for k in nonzero])


# -- properties ----------------------------------------------------------------

def _oracle_volume(pts):
    P = np.array(sorted(set(pts)), dtype=float)
    D = P.shape[1]
    if len(P) <= D or np.linalg.matrix_rank(P - P[0]) < D:
        return 0
    if D == 1:
        return int(round(P.max() - P.min()))
    tri = Delaunay(P)
    total = 0.0
    for simplex in tri.simplices:
        S = P[simplex]
        total += abs(np.linalg.det(S[1:] - S[0]))
    return int(round(total))


point_sets = st.integers(1, 4).flatmap(
    lambda D: st.lists(st.tuples(*[st.integers(-3, 3)] * D), min_size=1, max_size=9))


@given(point_sets)
def test_volume_matches_delaunay(pts):
    assert normalized_volume(pts) == _oracle_volume(pts)


@given(point_sets, st.tuples(*[st.integers(-2, 2)] * 4))
def test_volume_translation_invariant(pts, shift):
    D = len(pts[0])
    moved = [tuple(x + s for x, s in zip(p, shift[:D])) for p in pts]
    assert normalized_volume(moved) == normalized_volume(pts)


@given(st.integers(1, 3).flatmap(
    lambda D: st.lists(st.tuples(*[st.integers(0, 3)] * D), min_size=2, max_size=7, unique=True)))
def test_edges_minimize_on_their_segment(pts):
    for e in newton_edges(pts):
        v = e.witness
        vals = {p: sum(Fraction(a) * b for a, b in zip(p, v)) for p in pts}
        low = min(vals.values())
        a, b = e.endpoints
        assert vals[a] == low and vals[b] == low
        for p, x in vals.items():
            if x == low:
                # p lies on the segment [a, b]
                ab = [y - x0 for x0, y in zip(a, b)]
                ap = [y - x0 for x0, y in zip(a, p)]
                t = Fraction(sum(u * w for u, w in zip(ab, ap)), sum(u * u for u in ab))
                assert 0 <= t <= 1 and all(t * u == w for u, w in zip(ab, ap))


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=3, max_size=8, unique=True))
def test_edges_match_planar_hull(pts):
    P = np.array(pts, dtype=float)
    if np.linalg.matrix_rank(P - P[0]) < 2:
        return
    hull = ConvexHull(P)
    expected = {tuple(sorted((pts[i], pts[j]))) for i, j in hull.simplices}
    assert {tuple(sorted(e.endpoints)) for e in newton_edges(pts)} == expected


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), max_size=2),
    st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=4),
    st.just(n))))
def test_fourier_motzkin_agrees_with_simplex(data):
    E, G, n = data
    a = fourier_motzkin(E, G, n)
    b = simplex_interior(E, G, n)
    assert (a is None) == (b is None)
    for v in (a, b):
        if v is not None:
            assert all(sum(x * y for x, y in zip(r, v)) == 0 for r in E)
            assert all(sum(x * y for x, y in zip(r, v)) > 0 for r in G)


weights = st.one_of(st.just(INF), st.fractions(min_value=-3, max_value=3, max_denominator=3))


@st.composite
def general_systems(draw, nvars=3):
    polys = []
    for _ in range(draw(st.integers(1, 3))):
        terms = draw(st.lists(st.tuples(*[st.integers(0, 2)] * nvars), min_size=2, max_size=4, unique=True))
        polys.append(Polynomial(nvars, [(e, QI(draw(st.sampled_from([1, -1, 2])))) for e in terms]))
    return System([f"x{k + 1}" for k in range(nvars)], polys)


@given(general_systems(), st.tuples(*[weights] * 3))
def test_initial_form_support(s, w):
    if all(x is INF for x in w):
        return
    for p in s.polynomials:
        q = initial_form(p, w)
        assert q.support() <= p.support()
        if all(x is not INF for x in w):
            assert not q.is_zero()


@given(general_systems())
def test_specialization_commutes_on_generated_tuples(s):
    for t in enumerate_tuples(s):
        nonzero = [k for k in range(s.nvars) if k not in t.selection.variables]
        assert check_specialization_commutes(s, t.selection, [t.weight[k] for k in nonzero])

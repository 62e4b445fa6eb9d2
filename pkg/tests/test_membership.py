import random

from hypothesis import given, strategies as st

from affinesets.binomial import AffineMonomialMap, solve_with_zeros
from affinesets.enumeration import assemble_component, enumerate_candidates
from affinesets.membership import (circuits, contains, contains_by_generators,
                                   defining_equations, equivalent, prune_components, vanishes_on)
from affinesets.numbers import QI, Radical
from affinesets.poly import Polynomial, System, parse_system


def _raw_maps(s):
    return [m for c in enumerate_candidates(s) for m in assemble_component(c, s)]


def _by_zero(maps, zero):
    return [m for m in maps if m.zero == frozenset(zero)]


def test_circuits_small():
    assert circuits([(2, 2, 1), (4, 4, 1), (0, 0, 1)]) == [(2, -1, -1)]
    assert circuits([(1, 0), (0, 1)]) == []
    assert circuits([(0, 0), (1, 0)]) == [(1, 0)]


def test_c1_inside_c2(six_var):
    maps = _raw_maps(six_var)
    (c1,) = _by_zero(maps, [1, 2, 3, 4])
    c2 = _by_zero(maps, [3, 4])[0]
    assert contains(c2, c1)
    assert not contains(c1, c2)
    assert contains_by_generators(c2, c1)
    assert not contains_by_generators(c1, c2)


def test_ideal_of_c2(six_var):
    c2 = _by_zero(_raw_maps(six_var), [3, 4])[0]
    eqs = defining_equations(c2)
    assert eqs.monomial_generators == {3, 4}
    # the single relation x1*x3^2 - x2*x6^2 up to sign
    assert len(eqs.binomial_generators) == 1
    (g,) = eqs.binomial_generators
    assert {g.plus, g.minus} == {(1, 0, 2, 0, 0, 0), (0, 1, 0, 0, 0, 2)}
    assert g.gamma.is_one()
    assert vanishes_on(parse_system("x1 x2 x3 x4 x5 x6; x1*x3^2 - x2*x6^2;")[0], c2)


def test_sign_twins_are_equivalent(six_var):
    maps = _raw_maps(six_var)
    a, b = _by_zero(maps, [])
    assert equivalent(a, b) and contains(a, b) and contains(b, a)


def test_prune_six_var(six_var):
    kept = prune_components(_raw_maps(six_var))
    assert [(m.dimension, sorted(m.zero)) for m in kept] == [
        (4, [0, 5]), (3, []), (3, [0, 1, 3]), (3, [2, 4, 5]), (3, [3, 4])]


def test_prune_is_order_independent(six_var):
    maps = _raw_maps(six_var)
    ref = prune_components(maps)
    rng = random.Random(7)
    for _ in range(10):
        rng.shuffle(maps)
        assert prune_components(maps) == ref


def test_vanishes_on_variable_index(six_var):
    c1 = _by_zero(_raw_maps(six_var), [1, 2, 3, 4])[0]
    assert vanishes_on(1, c1) and not vanishes_on(0, c1)


def test_generator_with_radical_coefficient():
    two = Radical.from_value(2).roots(2)[0]
    m = AffineMonomialMap(2, frozenset(), (), ((0, two, (1,)), (1, Radical.one(), (1,))), 1)
    (g,) = defining_equations(m).binomial_generators
    assert vanishes_on(g, m)
    assert g.polynomial() is None


coefs = st.sampled_from([QI(1), QI(-1), QI(2), QI(-4), QI(0, 1)])


@st.composite
def systems_with_maps(draw):
    n = draw(st.integers(2, 5))
    polys = []
    for _ in range(draw(st.integers(1, 3))):
        a = draw(st.tuples(*[st.integers(0, 2)] * n))
        b = draw(st.tuples(*[st.integers(0, 2)] * n).filter(lambda e: e != a))
        polys.append(Polynomial(n, [(a, QI(1)), (b, draw(coefs))]))
    s = System([f"x{k}" for k in range(n)], polys)
    maps = []
    for S in range(1 << n):
        maps += solve_with_zeros(s, [k for k in range(n) if (S >> k) & 1])
    return s, maps


@given(systems_with_maps())
def test_generators_vanish_on_their_map(data):
    s, maps = data
    for m in maps:
        eqs = defining_equations(m)
        for g in eqs.binomial_generators:
            assert vanishes_on(g, m)
        for v in eqs.monomial_generators:
            assert vanishes_on(v, m)


@given(systems_with_maps(), st.randoms(use_true_random=False))
def test_geometric_containment_matches_generators(data, rnd):
    s, maps = data
    if not maps:
        return
    for _ in range(20):
        a, b = rnd.choice(maps), rnd.choice(maps)
        assert contains(a, b) == contains_by_generators(a, b)
    for a in maps:
        assert contains(a, a)


@given(systems_with_maps())
def test_pruned_components_are_incomparable(data):
    s, maps = data
    kept = prune_components(maps)
    for a in kept:
        for b in kept:
            if a is not b:
                assert not contains(a, b)
    for m in maps:
        assert any(contains(k, m) for k in kept)

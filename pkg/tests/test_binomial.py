import pytest
from hypothesis import given, strategies as st

from affinesets.binomial import normalize_binomial, solve_with_zeros, toric_solve
from affinesets.numbers import QI, Radical
from affinesets.poly import Polynomial, System, parse_system
from affinesets.polytope import degree_of_map


def test_normalize():
    nb = normalize_binomial(parse_system("x y; 2*x^2*y - 3*y^3;"))
    assert nb.A == ((2, -2),)
    assert nb.c == (QI(3, 0) / 2,)


def test_normalize_rejects_non_binomials():
    with pytest.raises(ValueError, match="monomial"):
        normalize_binomial(parse_system("x y; x*y;"))
    with pytest.raises(ValueError, match="non-binomial"):
        normalize_binomial(parse_system("x y; x + y + 1;"))


def test_fractional_toric_maps(fractional):
    ts = toric_solve(normalize_binomial(fractional))
    assert ts.V == ((5, 21), (18, 80), (11, 0), (0, -33))
    assert ts.W == (1, 22)
    assert len(ts) == 4
    signs = sorted(tuple(str(c) for _, c, _ in m.link) for m in ts)
    assert signs == sorted(tuple(s) for s in [
        ("1", "1", "1", "1"), ("1", "1", "1", "-1"), ("1", "1", "-1", "1"), ("1", "1", "-1", "-1")])
    for m in ts:
        assert all(m.vanishes(p) for p in fractional.polynomials)


def test_minors24_toric(minors24):
    (m,) = toric_solve(normalize_binomial(minors24))
    assert m.dimension == 5 and m.W == (1,) * 5
    assert all(c.is_one() for _, c, _ in m.link)
    assert degree_of_map(m) == 4


def test_affine_pieces_of_minors24(minors24):
    for zero in ([1, 5], [2, 6]):
        (m,) = solve_with_zeros(minors24, zero)
        assert m.dimension == 5 and degree_of_map(m) == 2


def test_inconsistent_system():
    s = parse_system("x y; x - 1; x - 2;")
    assert len(toric_solve(normalize_binomial(s))) == 0


def test_roots_of_unity():
    s = parse_system("x; x^4 - 1;")
    vals = {m.link[0][1].to_gaussian() for m in toric_solve(normalize_binomial(s))}
    assert vals == {QI(1), QI(-1), QI(0, 1), QI(0, -1)}


def test_free_variables():
    s = parse_system("x y z; x*y - 1;")
    ts = toric_solve(normalize_binomial(s))
    (m,) = ts
    assert 2 in m.free and m.dimension == 2


def test_substitute_and_vanish(fractional):
    m = toric_solve(normalize_binomial(fractional)).maps[0]
    x1 = Polynomial.monomial((1, 0, 0, 0))
    assert not m.vanishes(x1)
    sub = m.substitute(x1)
    assert list(sub) == [(5, 21)]


coefs = st.sampled_from([QI(1), QI(-1), QI(2), QI(-3), QI(0, 1), QI(1, 1), QI(4)])


@st.composite
def binomial_systems(draw):
    n = draw(st.integers(1, 4))
    polys = []
    for _ in range(draw(st.integers(1, 3))):
        a = draw(st.tuples(*[st.integers(0, 3)] * n))
        b = draw(st.tuples(*[st.integers(0, 3)] * n).filter(lambda e: e != a))
        polys.append(Polynomial(n, [(a, draw(coefs)), (b, draw(coefs))]))
    return System([f"x{k}" for k in range(n)], polys)


@given(binomial_systems())
def test_toric_maps_satisfy_system(s):
    ts = toric_solve(normalize_binomial(s))
    for m in ts:
        assert all(m.vanishes(p) for p in s.polynomials)
        assert m.dimension == s.nvars - len(m.link) + m.d
    assert len(set(ts.maps)) == len(ts.maps)


@given(binomial_systems(), st.integers(0, 15))
def test_zero_pieces_satisfy_system(s, bits):
    zero = [k for k in range(s.nvars) if (bits >> k) & 1]
    for m in solve_with_zeros(s, zero):
        assert m.zero == frozenset(zero)
        assert all(m.vanishes(p) for p in s.polynomials)

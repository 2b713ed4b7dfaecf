from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from umbralbb.algebra import (
    MultiPoly,
    TruncatedSeries,
    binomial,
    compositions,
    factorial,
    multinomial,
    poly_arith,
    poly_substitute,
    rat_arith,
    series_exp_linear,
    series_expm1_unit,
    series_inv,
    series_mul,
)

x, a1, a2 = MultiPoly.var("x"), MultiPoly.var("a1"), MultiPoly.var("a2")
F = Fraction

VARS = ["x", "a1", "a2"]
fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))
monomials = st.lists(st.integers(0, 3), min_size=3, max_size=3).map(
    lambda es: tuple((v, e) for v, e in zip(VARS, es) if e))
polys = st.dictionaries(monomials, fractions, max_size=6).map(MultiPoly)


def test_rat_arith():
    assert rat_arith("add", F(1, 2), F(1, 3)) == F(5, 6)
    assert rat_arith("mul", 0, F(7, 3)) == 0
    assert rat_arith("div", F(1, 6), F(1, 6)) == 1
    assert rat_arith("neg", F(2, 3)) == F(-2, 3)
    with pytest.raises(ZeroDivisionError):
        rat_arith("div", 1, 0)


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (5, -1, 0), (0, 0, 1), (3, 4, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_negative_upper_index():
    # C(-1, k) = (-1)^k
    assert [binomial(-1, k) for k in range(4)] == [1, -1, 1, -1]


def test_pascal_rule():
    for n in range(1, 31):
        for k in range(n + 1):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_multinomial():
    assert multinomial(3, [1, 1, 1]) == 6
    assert multinomial(2, [2, 0]) == 1
    assert multinomial(4, [2, 2]) == factorial(4) // (factorial(2) ** 2) == 6
    with pytest.raises(ValueError):
        multinomial(4, [1, 2])


def test_compositions_count():
    # stars and bars: C(k+n-1, n-1)
    for k in range(6):
        for n in range(1, 4):
            comps = list(compositions(k, n))
            assert len(comps) == len(set(comps)) == binomial(k + n - 1, n - 1)
            assert all(sum(c) == k for c in comps)


def test_poly_examples():
    assert (a1 + a2) ** 2 == a1 ** 2 + 2 * a1 * a2 + a2 ** 2
    assert str((a1 + a2) ** 2) == "a1^2 + 2*a1*a2 + a2^2"
    assert poly_arith("scale", 0, x + 1) == 0
    zero = x - x
    assert zero.term_map == {} and str(zero) == "0"
    with pytest.raises(ValueError):
        x ** -1


def test_substitute_examples():
    assert poly_substitute(a1 * a2, {"a1": 1, "a2": 1}) == 1
    assert poly_substitute(x + a1, {"x": 0}) == a1
    assert poly_substitute((x + a1) ** 2, {"a1": -x}) == 0
    assert ((x + a1) ** 3).substitute({"x": x + a2}) == (x + a1 + a2) ** 3


def test_canonical_text():
    p = F(5, 6) * a1 ** 2 * x ** 3 - x + F(1, 6)
    assert str(p) == "5/6*a1^2*x^3 - x + 1/6"
    assert str(-x ** 2 + 3) == "-x^2 + 3"
    assert str(MultiPoly.var("a10") + MultiPoly.var("a2")) == "a2 + a10"
    assert p.to_latex() == r"\frac{5}{6} a_{1}^{2}x^{3} - x + \frac{1}{6}"


@given(polys)
def test_text_round_trip(p):
    assert MultiPoly.parse(str(p)) == p


@given(polys, polys, polys)
@settings(max_examples=60)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p and p * q == q * p
    assert p - p == 0 and p * 1 == p


@given(polys, polys, fractions, fractions)
@settings(max_examples=60)
def test_substitute_is_a_homomorphism(p, q, u, v):
    b = {"x": u, "a1": a2 + v}
    assert (p * q).substitute(b) == p.substitute(b) * q.substitute(b)
    assert (p + q).substitute(b) == p.substitute(b) + q.substitute(b)


def test_series_mul_examples():
    assert series_mul(TruncatedSeries([1, 1], 2), TruncatedSeries([1, -1], 2)) == TruncatedSeries([1, 0, -1], 2)
    s = TruncatedSeries([x, a1, 3], 2)
    assert series_mul(s, TruncatedSeries.one(2)) == s
    assert series_mul(series_exp_linear(1, 4), series_exp_linear(-1, 4)) == TruncatedSeries.one(4)
    with pytest.raises(ValueError):
        series_mul(TruncatedSeries.one(2), TruncatedSeries.one(3))


def test_series_inv_examples():
    assert series_inv(TruncatedSeries([1, -1], 3)) == TruncatedSeries([1, 1, 1, 1], 3)
    assert series_inv(TruncatedSeries.one(3)) == TruncatedSeries.one(3)
    # (e^z - 1)/z inverted: coefficients B_k/k!
    assert series_inv(series_expm1_unit(1, 3)) == TruncatedSeries([1, F(-1, 2), F(1, 12), 0], 3)
    with pytest.raises(ValueError):
        series_inv(TruncatedSeries([a1, 1], 2))
    with pytest.raises(ValueError):
        series_inv(TruncatedSeries([0, 1], 2))


@given(st.lists(fractions, min_size=1, max_size=7), fractions.filter(bool))
def test_series_inverse_property(tail, c0):
    s = TruncatedSeries([c0] + tail, len(tail))
    assert series_mul(s, series_inv(s)) == TruncatedSeries.one(len(tail))


def test_series_inverse_with_polynomial_coefficients():
    s = series_expm1_unit(a1 + x, 6)
    assert series_mul(s, series_inv(s)) == TruncatedSeries.one(6)


def test_series_exp_linear():
    assert series_exp_linear(0, 3) == TruncatedSeries.one(3)
    assert series_exp_linear(x, 2) == TruncatedSeries([1, x, x ** 2 / 2], 2)
    assert series_exp_linear(a1, 3)[3] == a1 ** 3 / 6

import random
from fractions import Fraction

import pytest
import sympy as sp

from umbralbb.algebra import MultiPoly, binomial, factorial
from umbralbb.barnes import BarnesContext, norlund_value
from umbralbb.identities import (
    PalindromicWeights,
    bb_term,
    check_difference_formula,
    check_even_recurrence,
    check_general_expansion,
    check_main_identity,
    check_multi_uniform_difference,
    check_norlund_recurrence,
    check_odd_recurrence,
    check_palindromic_general,
    check_reflection,
    check_self_dual,
    check_shift_equals_negation,
    check_symmetry_1,
    check_symmetry_2,
    check_uniform_ftc,
    first_difference,
    subsets,
)
from umbralbb.umbral import (
    DEFAULT_MOMENTS,
    bernoulli_number,
    bernoulli_symbol,
    evaluate,
    expand_linear_power,
)

F = Fraction
x = MultiPoly.var("x")
a = MultiPoly.var("a")
a1, a2 = MultiPoly.var("a1"), MultiPoly.var("a2")
bx = sp.Symbol("x")


def classical(m, arg):
    """B_m(arg) from sympy, as a MultiPoly in x (arg is a sympy expression in x)."""
    poly = sp.Poly(sp.expand(sp.bernoulli(m, arg)), bx)
    out = MultiPoly.const(0)
    for (e,), c in poly.terms():
        out = out + x ** e * F(int(sp.numer(c)), int(sp.denom(c)))
    return out


# -- examples -------------------------------------------------------------

def test_difference_formula_examples():
    r = check_difference_formula(0, 1)
    assert r.passed and r.lhs == 0 and r.rhs == 0
    r = check_difference_formula(2, 1, values=[1])
    assert r.passed and r.lhs == 2 * x
    assert classical(2, -bx) - classical(2, bx) == 2 * x


def test_difference_formula_reduces_to_classical():
    for m in range(1, 8):
        r = check_difference_formula(m, 1, values=[1])
        assert r.lhs == (-1) ** m * classical(m, -bx) - classical(m, bx) == m * x ** (m - 1)


def test_reflection_examples():
    assert check_reflection(0, 3).lhs == check_reflection(0, 3).rhs
    r = check_reflection(1, 1, values=[1])
    assert r.passed and r.lhs == x + F(1, 2)
    for m in range(7):
        assert check_reflection(m, 1, values=[1]).lhs == classical(m, bx + 1)


def test_general_expansion_example_n2():
    """f(x - a1B1 - a2B2) = f(x + a1B1 + a2B2) + a1 f'(x + a2B2) + a2 f'(x + a1B1) + a1 a2 f''(x)."""
    B1, B2 = bernoulli_symbol(1), bernoulli_symbol(2)
    for m in range(8):
        def f(k, weighted):
            if m - k < 0:
                return MultiPoly.const(0)
            return evaluate(expand_linear_power(x, weighted, m - k)) / factorial(m - k)

        lhs = f(0, [(-a1, B1), (-a2, B2)])
        rhs = f(0, [(a1, B1), (a2, B2)]) + a1 * f(1, [(a2, B2)]) + a2 * f(1, [(a1, B1)]) + a1 * a2 * f(2, [])
        assert lhs == rhs
        r = check_general_expansion(m, 2)
        assert r.passed and r.lhs == lhs and r.rhs == rhs


def test_general_expansion_linear_case():
    r = check_general_expansion(1, 1)
    assert r.lhs == x + a1 / 2 and r.rhs == (x - a1 / 2) + a1


def test_shift_negation_examples():
    assert check_shift_equals_negation(0, 2).lhs == 1
    r = check_shift_equals_negation(1, 3)
    A = a1 + a2 + MultiPoly.var("a3")
    assert r.passed and r.lhs == x + A / 2


def test_uniform_ftc_examples():
    assert check_uniform_ftc(0).lhs == 0 == check_uniform_ftc(0).rhs
    r = check_uniform_ftc(2)
    assert r.lhs == 2 * a * x + a ** 2 and r.rhs == a * 2 * (x + a / 2)
    assert all(check_uniform_ftc(m).passed for m in range(11))


def test_multi_uniform_difference_examples():
    for m in range(6):
        assert check_multi_uniform_difference(m, 1).lhs == check_uniform_ftc(m).lhs.substitute({"a": a1})
    r = check_multi_uniform_difference(2, 2)
    assert r.lhs == 2 * a1 * a2 == r.rhs
    assert all(check_multi_uniform_difference(m, n).passed for m in range(9) for n in range(1, 4))


def test_self_dual_examples():
    r = check_self_dual(0, 2)
    assert r.passed and r.lhs == r.rhs == 1
    # n = 1, a = (1): (-1)^j B_j = sum_k C(j,k) B_k
    for j in range(12):
        assert (-1) ** j * bernoulli_number(j) == sum(binomial(j, k) * bernoulli_number(k) for k in range(j + 1))
    assert check_self_dual(11, 1, values=[1]).passed
    assert all(check_self_dual(8, n).passed for n in range(1, 5))


def test_symmetry_1_examples():
    assert check_symmetry_1(0, 0, 2).passed
    r = check_symmetry_1(0, 1, 1, values=[1])
    # -(A B_0(x) + B_1(x)) = B_1(-x) with A = 1
    assert r.lhs == -(1 + classical(1, bx)) and r.rhs == classical(1, -bx)
    assert r.passed


def test_symmetry_2_examples():
    r = check_symmetry_2(0, 0, 1, values=[1])
    assert r.passed and r.lhs == 1
    for l in range(4):
        for m in range(4):
            swapped = check_symmetry_2(m, l, 2)
            assert swapped.lhs == check_symmetry_2(l, m, 2).lhs * (-1) ** (l + m)


def test_symmetry_2_with_plus_x_fails():
    """With the second sum at +x the identity is false already for n = 1."""
    ctx = BarnesContext.numeric([1])
    l, m = 0, 1
    A = 1
    first = sum((bb_term(ctx, l + k, (0,), x, DEFAULT_MOMENTS) * (A ** (m + 1 - k) * binomial(m + 1, k) * (l + k + 1))
                 for k in range(m + 1)), MultiPoly.const(0))
    second = sum((bb_term(ctx, m + k, (0,), x, DEFAULT_MOMENTS) * (A ** (l + 1 - k) * binomial(l + 1, k) * (m + k + 1))
                  for k in range(l + 1)), MultiPoly.const(0))
    plus_x = (first * (-1) ** m + second * (-1) ** l) / (l + m + 2)
    rhs = check_symmetry_2(l, m, 1, values=[1]).rhs
    assert plus_x - rhs == F(4, 3) * x
    assert check_symmetry_2(l, m, 1, values=[1]).passed


def test_odd_recurrence_examples():
    r = check_odd_recurrence(0, 1, values=[1])
    assert r.passed and r.lhs == F(-1, 2)
    r = check_odd_recurrence(0, 2)
    assert r.passed and r.rhs == -(a1 + a2) / 2  # |a| B_1(a) = -A/2


def test_even_recurrence_examples():
    r = check_even_recurrence(1, 1, values=[1])
    assert r.passed and r.lhs == F(1, 6)
    assert check_even_recurrence(1, 2).passed
    # n > 2m + 1: low-cardinality subsets have negative order
    assert check_even_recurrence(1, 4).passed and check_even_recurrence(1, 5).passed
    with pytest.raises(ValueError):
        check_even_recurrence(0, 2)


def test_main_identity_values():
    r = check_main_identity(3, 3)
    assert r.passed and r.value == F(1, 2)
    assert r.lhs == F(1, 2) * a1 * a2 * MultiPoly.var("a3")
    assert check_main_identity(1, 3).value == 0
    assert check_main_identity(5, 4).value == 0
    assert check_main_identity(3, 3, values=[2, F(-1, 3), 5]).value == F(1, 2)
    for bad in [(2, 3), (3, 2), (0, 4)]:
        with pytest.raises(ValueError):
            check_main_identity(*bad)


def test_main_identity_n3_by_hand():
    """n = m = 3: (1/2) sum_{pairs} B_2(a_J) + (1/3) B_3(a) = 1/2, with classical moments."""
    vals = [F(2), F(-1, 3), F(5)]
    B = bernoulli_number

    def barnes2(p, q):
        return (p * p * B(2) + 2 * p * q * B(1) ** 2 + q * q * B(2)) / (p * q)

    p, q, r = vals
    b3 = (sum(v ** 3 for v in vals) * B(3)
          + 3 * sum(vals[i] ** 2 * vals[j] for i in range(3) for j in range(3) if i != j) * B(2) * B(1)
          + 6 * p * q * r * B(1) ** 3) / (p * q * r)
    total = (barnes2(p, q) + barnes2(p, r) + barnes2(q, r)) / 2 + 2 * b3 / 6
    assert total == F(1, 2)


def test_palindromic_examples():
    r = check_palindromic_general(PalindromicWeights.ones(2), 1)
    assert r.passed and r.lhs == 0
    with pytest.raises(ValueError):
        PalindromicWeights((1, 2, 3))
    with pytest.raises(ValueError):
        check_palindromic_general(PalindromicWeights.ones(2), 2)
    rng = random.Random(5)
    for n in range(1, 5):
        for m in (1, 3, 5):
            w = PalindromicWeights.random(n, rng)
            assert check_palindromic_general(w, m).passed


def test_main_identity_weights_are_palindromic():
    for n in range(4, 9):
        w = PalindromicWeights.main_identity(n)
        assert w.alpha == w.alpha[::-1]


def test_chu_vandermonde_step():
    for n in range(4, 10):
        for j in range(n + 1):
            lhs = sum(binomial(n - 4, k - 2) * binomial(n - j, n - j - k) for k in range(2, n - 1))
            assert lhs == binomial(2 * n - j - 4, n - j - 2)


@pytest.mark.parametrize("n", [4, 5])
def test_palindromic_sum_reduces_to_main_identity(n):
    """With C(n-4, j-2) weights the subset sum of f((aB)_K - (aB)_{K*}) equals
    |a| times the main-identity sum, for every m (even m gives nonzero values)."""
    w = PalindromicWeights.main_identity(n)
    ctx = BarnesContext.symbolic(n)
    weighted = ctx.weighted_symbols()
    for m in range(0, 7):
        pal = MultiPoly.const(0)
        for K in subsets(n):
            signed = [(c if i in K else -c, s) for i, (c, s) in enumerate(weighted)]
            pal = pal + evaluate(expand_linear_power(0, signed, m)) * w.alpha[len(K)]
        pal = pal / factorial(m)
        main = MultiPoly.const(0)
        for j in range(n + 1):
            order = m - n + j
            if order < 0:
                continue
            for J in subsets(n, j):
                main = main + bb_term(ctx, order, J, MultiPoly.const(0), DEFAULT_MOMENTS) * (
                    binomial(n + j - 4, j - 2) / factorial(order))
        assert pal == main
        if m % 2:
            assert pal == 0
            assert check_main_identity(m, n).passed
            assert check_palindromic_general(w, m).passed


def test_norlund_recurrence_examples():
    for p in range(1, 6):
        assert check_norlund_recurrence(0, p).lhs == 1
    r = check_norlund_recurrence(1, 2)
    assert r.passed and r.lhs == F(1, 2)
    assert norlund_value(1, 2, 1) == 0 and norlund_value(0, 1, 0) == 1
    assert all(check_norlund_recurrence(r, p, form).passed
               for p in range(1, 9) for r in range(p) for form in (1, 2))
    with pytest.raises(ValueError):
        check_norlund_recurrence(3, 3)


def test_norlund_second_form_at_p_plus_1_fails():
    """Evaluating at p+1-k instead of p-1-k breaks the second form at p = 3, r = 2."""
    r, p = 2, 3
    lhs = (norlund_value(r, p + 1, p) - norlund_value(r, p, p - 1)) / factorial(r)
    shifted = sum(F(1, k + 1) * norlund_value(r - k, p - k, p + 1 - k) / factorial(r - k) for k in range(1, r + 1))
    assert lhs - shifted == -1


# -- structural properties -------------------------------------------------

def test_report_witness():
    r = check_reflection(3, 2, provider=DEFAULT_MOMENTS.with_moment("B", 2, 0))
    assert not r.passed
    mono, lc, rc = r.witness
    assert lc != rc
    assert first_difference(x + 1, x + 1) is None
    assert first_difference(x ** 2 + 1, 2 * x ** 2 + 1) == ("x^2", 1, 2)


CLEARED_BY_ABS_A = [
    (check_difference_formula, (4, 3)),
    (check_reflection, (5, 2)),
    (check_symmetry_1, (2, 3, 3)),
    (check_symmetry_2, (3, 1, 2)),
    (check_odd_recurrence, (3, 3)),
    (check_even_recurrence, (2, 3)),
    (check_main_identity, (5, 4)),
]


@pytest.mark.parametrize("checker,args", CLEARED_BY_ABS_A)
def test_clearing_preserves_verdict(checker, args):
    """Symbolic cleared sides, specialized and divided by |a|, equal the numeric sides."""
    symbolic = checker(*args)
    n = args[-1]
    rng = random.Random(sum(args))
    for _ in range(3):
        values = [F(rng.choice([-4, -3, -2, -1, 1, 2, 3, 4]), rng.randint(1, 3)) for _ in range(n)]
        ctx = BarnesContext.numeric(values)
        numeric = checker(*args, values=values)
        abs_a = ctx.abs_a().constant_value()
        assert symbolic.lhs.substitute(ctx.bindings()) / abs_a == numeric.lhs
        assert symbolic.rhs.substitute(ctx.bindings()) / abs_a == numeric.rhs
        assert numeric.passed == symbolic.passed


def test_numeric_spot_checks_agree():
    rng = random.Random(3)
    for checker, args in [(check_general_expansion, (4, 3)), (check_shift_equals_negation, (5, 3)),
                          (check_multi_uniform_difference, (5, 3)), (check_self_dual, (8, 3))]:
        for _ in range(3):
            vals = [F(rng.choice([1, 2, 3, -1]), rng.randint(1, 3)) for _ in range(3)]
            if sum(vals) == 0:
                continue
            assert checker(*args, values=vals).passed == checker(*args).passed is True


def test_mutation_breaks_an_identity():
    bad = DEFAULT_MOMENTS.with_moment("B", 4, bernoulli_number(4) + 1)
    r = check_odd_recurrence(3, 1, provider=bad)
    assert not r.passed and r.witness is not None
    assert check_odd_recurrence(3, 1).passed
    # reflection involves B_k only through B_k(x + A) = (-1)^k B_k(-x), which a
    # shifted even moment does not disturb at n = 1
    assert check_reflection(4, 1, provider=bad).passed

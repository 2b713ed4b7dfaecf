"""Bernoulli-Barnes numbers and polynomials, Nörlund polynomials, dual sequences.

Symbolic results are returned in *cleared* form, multiplied by
|a| = a1*a2*...*an, so they stay polynomials:

    P_k(a)    = |a| * B_k(a)    = eval((a.B)^k)
    Q_j(x, a) = |a| * B_j(x; a) = eval((x + a.B)^j)

In numeric mode the division by |a| is carried out and the true values are
returned.  Polynomial signatures always put x first: B_j(x; a).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import (
    MultiPoly,
    TruncatedSeries,
    binomial,
    compositions,
    multinomial,
    series_expm1_unit,
    series_exp_linear,
    series_inv,
    series_mul,
    factorial,
)
from .umbral import (
    DEFAULT_MOMENTS,
    MomentProvider,
    bernoulli_symbol,
    evaluate,
    expand_linear_power,
)

X = MultiPoly.var("x")
ZERO = MultiPoly.const(0)


@dataclass(frozen=True)
class BarnesContext:
    """The parameter vector a = (a_i for i in indices).

    ``values is None`` means symbolic mode: a_i is the indeterminate ``a<i>``.
    Otherwise ``values`` holds nonzero rationals.  ``indices`` keeps the
    original labels, so a restriction a_L still talks about a2, a5, ...
    """

    indices: tuple
    values: tuple | None = None

    def __post_init__(self):
        if self.values is not None:
            if len(self.values) != len(self.indices):
                raise ValueError("one value per parameter index is required")
            if any(v == 0 for v in self.values):
                raise ValueError("Bernoulli-Barnes parameters must be nonzero")

    @classmethod
    def symbolic(cls, n: int) -> "BarnesContext":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def numeric(cls, values: Sequence) -> "BarnesContext":
        vals = tuple(Fraction(v) for v in values)
        return cls(tuple(range(1, len(vals) + 1)), vals)

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def is_symbolic(self) -> bool:
        return self.values is None

    def params(self) -> list:
        if self.values is None:
            return [MultiPoly.var(f"a{i}") for i in self.indices]
        return [MultiPoly.const(v) for v in self.values]

    def restrict(self, positions: Sequence[int]) -> "BarnesContext":
        """Sub-context a_L for L given as positions 0..n-1 into this context."""
        idx = tuple(self.indices[p] for p in positions)
        vals = None if self.values is None else tuple(self.values[p] for p in positions)
        return BarnesContext(idx, vals)

    def abs_a(self) -> MultiPoly:
        out = MultiPoly.const(1)
        for p in self.params():
            out = out * p
        return out

    def total(self) -> MultiPoly:
        out = MultiPoly.const(0)
        for p in self.params():
            out = out + p
        return out

    def weighted_symbols(self) -> list:
        return [(p, bernoulli_symbol(i)) for p, i in zip(self.params(), self.indices)]

    def bindings(self) -> dict:
        """Substitution a<i> -> value, for specializing symbolic results."""
        if self.values is None:
            return {}
        return {f"a{i}": v for i, v in zip(self.indices, self.values)}


def _uncleared(p: MultiPoly, ctx: BarnesContext) -> MultiPoly:
    if ctx.is_symbolic:
        return p
    return p / ctx.abs_a().constant_value()


# --------------------------------------------------------------------------
# Bernoulli-Barnes numbers, three ways

@lru_cache(maxsize=None)
def cleared_polynomial(j: int, ctx: BarnesContext, provider: MomentProvider = DEFAULT_MOMENTS,
                       shift: MultiPoly = X) -> MultiPoly:
    """eval((shift + a.B)^j): Q_j(x, a) by default, P_j(a) for shift 0.

    Any other shift s gives |a| B_j(s; a), e.g. s = -x or s = x + A.
    """
    return evaluate(expand_linear_power(shift, ctx.weighted_symbols(), j), provider)


def bb_number_umbral(k: int, ctx: BarnesContext, provider: MomentProvider = DEFAULT_MOMENTS) -> MultiPoly:
    return _uncleared(cleared_polynomial(k, ctx, provider, ZERO), ctx)


def bb_number_multinomial(k: int, ctx: BarnesContext, provider: MomentProvider = DEFAULT_MOMENTS) -> MultiPoly:
    """Sum over compositions m1+...+mn = k of C(k; m) prod a_i^{m_i} B_{m_i}.

    This is |a| times the multinomial formula, so the a_i^{-1} of each
    m_i = 0 part never appears.
    """
    params = ctx.params()
    moments = [provider.moment("B", m) for m in range(k + 1)]
    powers = []
    for p in params:
        row = [MultiPoly.const(1)]
        for _ in range(k):
            row.append(row[-1] * p)
        powers.append(row)
    out = MultiPoly.const(0)
    for comp in compositions(k, ctx.n):
        weight = multinomial(k, comp)
        for m in comp:
            weight *= moments[m]
        if not weight:
            continue
        term = MultiPoly.const(weight)
        for row, m in zip(powers, comp):
            term = term * row[m]
        out = out + term
    return _uncleared(out, ctx)


def bb_series(ctx: BarnesContext, order: int) -> TruncatedSeries:
    """prod_j z/(e^{a_j z} - 1) through z^order.

    Each factor is inverted in the unit form (e^{cz}-1)/(cz), whose constant
    term is 1; the product of those inverses is |a| times the generating
    function.  Symbolic mode keeps that cleared series, numeric mode divides.
    """
    if order < 0:
        raise ValueError("series order must be nonnegative")
    out = TruncatedSeries.one(order)
    for p in ctx.params():
        out = series_mul(out, series_inv(series_expm1_unit(p, order)))
    if not ctx.is_symbolic:
        out = out.scale(1 / ctx.abs_a().constant_value())
    return out


def bb_number_series(k: int, ctx: BarnesContext) -> MultiPoly:
    return bb_series(ctx, k)[k].scale(factorial(k))


# --------------------------------------------------------------------------
# polynomials

def bb_polynomial(j: int, ctx: BarnesContext, provider: MomentProvider = DEFAULT_MOMENTS) -> MultiPoly:
    return _uncleared(cleared_polynomial(j, ctx, provider, X), ctx)


def bb_polynomial_convolution(j: int, ctx: BarnesContext, provider: MomentProvider = DEFAULT_MOMENTS) -> MultiPoly:
    """sum_l C(j, l) B_{j-l}(a) x^l, built on the multinomial number route."""
    out = MultiPoly.const(0)
    for ell in range(j + 1):
        out = out + bb_number_multinomial(j - ell, ctx, provider) * (X ** ell) * binomial(j, ell)
    return out


def bb_polynomial_series(j: int, ctx: BarnesContext) -> MultiPoly:
    """j! [z^j] of e^{xz} prod z/(e^{a_i z}-1); cleared in symbolic mode."""
    s = series_mul(series_exp_linear(X, j), bb_series(ctx, j))
    return s[j].scale(factorial(j))


@lru_cache(maxsize=None)
def norlund_polynomial(j: int, n: int, provider: MomentProvider = DEFAULT_MOMENTS) -> MultiPoly:
    """B_j^{(n)}(x): the a = (1, ..., 1) case; order n = 0 gives x^j."""
    if n < 0:
        raise ValueError("Nörlund order must be nonnegative")
    if n == 0:
        return X ** j
    return bb_polynomial(j, BarnesContext.numeric([1] * n), provider)


def norlund_value(j: int, n: int, x, provider: MomentProvider = DEFAULT_MOMENTS) -> Fraction:
    return norlund_polynomial(j, n, provider).substitute({"x": x}).constant_value()


# --------------------------------------------------------------------------
# dual sequences

def dual_transform(seq: Sequence) -> list:
    """s*_n = sum_k C(n, k) (-1)^k s_k.  Applying it twice gives s back."""
    out = []
    for n in range(len(seq)):
        acc = 0
        for k in range(n + 1):
            c = binomial(n, k)
            acc = acc + (seq[k] * c if k % 2 == 0 else -(seq[k] * c))
        out.append(acc)
    return out


def p_sequence(ctx: BarnesContext, upto: int, provider: MomentProvider = DEFAULT_MOMENTS) -> list:
    """p_k = (-1)^k A^{-k} B_k(a) for k = 0..upto.

    Numeric mode only: the sequence divides by powers of A = sum a_i.  The
    cleared symbolic statement lives in ``identities.check_self_dual``.
    """
    if ctx.is_symbolic:
        raise ValueError("p_sequence needs numeric parameters; use check_self_dual symbolically")
    A = ctx.total().constant_value()
    if A == 0:
        raise ValueError("A = a1 + ... + an must be nonzero")
    out = []
    for k in range(upto + 1):
        b = bb_number_umbral(k, ctx, provider).constant_value()
        out.append((-1) ** k * b / A ** k)
    return out

"""One checker per identity, each comparing two canonical polynomials.

Symbolic checks are polynomial identities in x and a1..an.  Both sides are
multiplied by |a| (and by A = a1 + ... + an where the identity divides by
it), so every quantity stays in the polynomial ring and equality is exact
term-map equality.  Numeric checks (``values=`` given) perform the true
divisions instead; they exercise the paths that clearing bypasses.

Conventions used throughout:

* B_k(...) and 1/k! with k < 0 contribute zero;
* B_k(x; a_L) for empty L is x^k, which at x = 0 is 1 if k = 0 else 0.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import MultiPoly, binomial, factorial
from .barnes import (
    X,
    ZERO,
    BarnesContext,
    cleared_polynomial,
    dual_transform,
    norlund_value,
    p_sequence,
)
from .umbral import (
    DEFAULT_MOMENTS,
    MomentProvider,
    evaluate,
    expand_linear_power,
    umbral_derivative,
    uniform_symbol,
)

T = MultiPoly.var("t")


@dataclass
class IdentityReport:
    identity_id: str
    params: dict
    lhs: MultiPoly
    rhs: MultiPoly
    passed: bool = field(init=False)
    witness: tuple | None = field(init=False)
    value: Fraction | None = None

    def __post_init__(self):
        self.passed = self.lhs == self.rhs
        self.witness = None if self.passed else first_difference(self.lhs, self.rhs)

    @property
    def mode(self) -> str:
        return "numeric" if "a" in self.params else "symbolic"

    def sort_key(self):
        return (self.identity_id, self.mode != "symbolic",
                tuple((k, (0, v, "") if isinstance(v, int) else (1, 0, str(v)))
                      for k, v in self.params.items()))

    def to_record(self) -> dict:
        rec = {
            "identity": self.identity_id,
            "params": {k: (v if isinstance(v, int) else str(v)) for k, v in self.params.items()},
            "passed": self.passed,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }
        if self.value is not None:
            rec["value"] = _fmt(self.value)
        if self.witness is not None:
            mono, lc, rc = self.witness
            rec["witness"] = {"monomial": mono, "lhs": _fmt(lc), "rhs": _fmt(rc)}
        return rec


def _fmt(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def first_difference(lhs: MultiPoly, rhs: MultiPoly):
    """(monomial text, lhs coeff, rhs coeff) for the leading monomial of lhs - rhs."""
    diff = lhs - rhs
    if not diff:
        return None
    mono, _ = diff.terms()[0]
    text = str(MultiPoly.monomial(mono)) if mono else "1"
    return (text, lhs.coefficient(mono), rhs.coefficient(mono))


# --------------------------------------------------------------------------
# shared pieces

def _context(n: int, values) -> BarnesContext:
    if values is None:
        if n < 1:
            raise ValueError("n must be at least 1")
        return BarnesContext.symbolic(n)
    ctx = BarnesContext.numeric(values)
    if ctx.n != n:
        raise ValueError(f"expected {n} parameter values, got {ctx.n}")
    return ctx


def _params(ctx: BarnesContext, **kw) -> dict:
    if not ctx.is_symbolic:
        kw["a"] = ",".join(_fmt(v) for v in ctx.values)
    return kw


def subsets(n: int, size: int | None = None):
    """Position tuples of subsets of range(n) in increasing bitmask order."""
    for mask in range(1 << n):
        subset = tuple(i for i in range(n) if mask >> i & 1)
        if size is None or len(subset) == size:
            yield subset


def _complement(n: int, subset: tuple) -> tuple:
    return tuple(i for i in range(n) if i not in subset)


def _norm(ctx: BarnesContext) -> MultiPoly:
    """The factor every Bernoulli-Barnes value is reported with."""
    return ctx.abs_a() if ctx.is_symbolic else MultiPoly.const(1)


def _prod(polys) -> MultiPoly:
    out = MultiPoly.const(1)
    for p in polys:
        out = out * p
    return out


def bb_term(ctx: BarnesContext, k: int, subset: Sequence[int], shift: MultiPoly,
            provider: MomentProvider) -> MultiPoly:
    """norm(ctx) * B_k(shift; a_subset), using the two conventions above."""
    if k < 0:
        return ZERO
    subset = tuple(subset)
    norm = _norm(ctx)
    if not subset:
        return norm * shift ** k
    sub = ctx.restrict(subset)
    q = cleared_polynomial(k, sub, provider, shift)
    if ctx.is_symbolic:
        params = ctx.params()
        return q * _prod(params[i] for i in _complement(ctx.n, subset))
    return q / sub.abs_a().constant_value()


def _all(ctx):
    return tuple(range(ctx.n))


def _inv_fact(k: int) -> Fraction:
    return Fraction(0) if k < 0 else Fraction(1, factorial(k))


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# --------------------------------------------------------------------------
# difference formula, reflection, general expansion

def check_difference_formula(m: int, n: int, *, values=None,
                             provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """(-1)^m B_m(-x;a) - B_m(x;a) = m! sum_{|L|<n} B_{m-n+|L|}(x;a_L)/(m-n+|L|)!"""
    ctx = _context(n, values)
    full = _all(ctx)
    lhs = _sign(m) * bb_term(ctx, m, full, -X, provider) - bb_term(ctx, m, full, X, provider)
    rhs = ZERO
    for subset in subsets(n):
        ell = len(subset)
        if ell == n:
            continue
        order = m - n + ell
        if order >= 0:
            rhs = rhs + bb_term(ctx, order, subset, X, provider) * _inv_fact(order)
    rhs = rhs * factorial(m)
    return IdentityReport("difference_formula", _params(ctx, m=m, n=n), lhs, rhs)


def check_reflection(m: int, n: int, *, values=None,
                     provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """B_m(x + A; a) = (-1)^m B_m(-x; a)"""
    ctx = _context(n, values)
    full = _all(ctx)
    lhs = bb_term(ctx, m, full, X + ctx.total(), provider)
    rhs = _sign(m) * bb_term(ctx, m, full, -X, provider)
    return IdentityReport("reflection", _params(ctx, m=m, n=n), lhs, rhs)


def _eval_power(shift, weighted, k, provider) -> MultiPoly:
    if k < 0:
        return ZERO
    return evaluate(expand_linear_power(shift, weighted, k), provider)


def check_general_expansion(m: int, n: int, *, values=None,
                            provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """f(x - a.B) = sum_J |a|_{J*} f^{(n-|J|)}(x + (a.B)_J) for f = x^m/m!.

    Built directly from umbral expansions, independent of the cached
    Bernoulli-Barnes polynomials.
    """
    ctx = _context(n, values)
    params = ctx.params()
    weighted = ctx.weighted_symbols()
    lhs = _eval_power(X, [(-c, s) for c, s in weighted], m, provider) * _inv_fact(m)
    rhs = ZERO
    for subset in subsets(n):
        order = m - n + len(subset)
        if order < 0:
            continue
        part = [weighted[i] for i in subset]
        weight = _prod(params[i] for i in _complement(n, subset))
        rhs = rhs + weight * _eval_power(X, part, order, provider) * _inv_fact(order)
    return IdentityReport("general_expansion", _params(ctx, m=m, n=n), lhs, rhs)


def check_shift_equals_negation(m: int, n: int, *, values=None,
                                provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """f(x + A + a.B) = f(x - a.B) for f = x^m"""
    ctx = _context(n, values)
    weighted = ctx.weighted_symbols()
    lhs = _eval_power(X + ctx.total(), weighted, m, provider)
    rhs = _eval_power(X, [(-c, s) for c, s in weighted], m, provider)
    return IdentityReport("shift_negation", _params(ctx, m=m, n=n), lhs, rhs)


# --------------------------------------------------------------------------
# uniform symbol

def check_uniform_ftc(m: int, *, step=None,
                      provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """(x+a)^m - x^m = a * m * eval((x + a U)^(m-1)), i.e. Delta_a f = a f'(x + aU)."""
    a = MultiPoly.var("a") if step is None else MultiPoly.const(Fraction(step))
    lhs = (X + a) ** m - X ** m
    rhs = a * _eval_power(X, [(a, uniform_symbol(1))], m - 1, provider) * m
    params = {"m": m} if step is None else {"m": m, "a": _fmt(Fraction(step))}
    return IdentityReport("uniform_ftc", params, lhs, rhs)


def forward_difference(p: MultiPoly, step: MultiPoly, var: str = "x") -> MultiPoly:
    return p.substitute({var: MultiPoly.var(var) + step}) - p


def check_multi_uniform_difference(m: int, n: int, *, values=None,
                                   provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """prod_i Delta_{a_i} x^m = |a| f^{(n)}(x + a1 U1 + ... + an Un)"""
    ctx = _context(n, values)
    params = ctx.params()
    lhs = X ** m
    for a in params:
        lhs = forward_difference(lhs, a)
    shifted = expand_linear_power(X, [(a, uniform_symbol(i)) for a, i in zip(params, ctx.indices)], m)
    for _ in range(n):
        shifted = umbral_derivative(shifted, "x")
    rhs = ctx.abs_a() * evaluate(shifted, provider)
    return IdentityReport("multi_uniform_difference", _params(ctx, m=m, n=n), lhs, rhs)


# --------------------------------------------------------------------------
# self-duality and symmetry

def check_self_dual(N: int, n: int, *, values=None,
                    provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """p_j = (-1)^j A^{-j} B_j(a) equals its dual for j = 0..N.

    Symbolically, row j is sum_k C(j,k) A^{j-k} P_k = (-1)^j P_j (multiplied
    through by A^j |a|).  The rows are packed into one polynomial as the
    coefficients of t^j.  Numerically, p and its dual transform are compared.
    """
    ctx = _context(n, values)
    lhs = rhs = ZERO
    if ctx.is_symbolic:
        A = ctx.total()
        full = _all(ctx)
        P = [bb_term(ctx, k, full, ZERO, provider) for k in range(N + 1)]
        for j in range(N + 1):
            row = ZERO
            for k in range(j + 1):
                row = row + P[k] * A ** (j - k) * binomial(j, k)
            lhs = lhs + row * T ** j
            rhs = rhs + P[j] * _sign(j) * T ** j
    else:
        seq = p_sequence(ctx, N, provider)
        for j, (dual, orig) in enumerate(zip(dual_transform(seq), seq)):
            lhs = lhs + T ** j * dual
            rhs = rhs + T ** j * orig
    return IdentityReport("self_dual", _params(ctx, N=N, n=n), lhs, rhs)


def check_symmetry_1(l: int, m: int, n: int, *, values=None,
                     provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """(-1)^m sum_k C(m,k) A^{m-k} B_{l+k}(x) = (-1)^l sum_k C(l,k) A^{l-k} B_{m+k}(-x)"""
    ctx = _context(n, values)
    A, full = ctx.total(), _all(ctx)
    lhs = ZERO
    for k in range(m + 1):
        lhs = lhs + bb_term(ctx, l + k, full, X, provider) * A ** (m - k) * binomial(m, k)
    rhs = ZERO
    for k in range(l + 1):
        rhs = rhs + bb_term(ctx, m + k, full, -X, provider) * A ** (l - k) * binomial(l, k)
    return IdentityReport("symmetry_1", _params(ctx, l=l, m=m, n=n),
                          lhs * _sign(m), rhs * _sign(l))


def check_symmetry_2(l: int, m: int, n: int, *, values=None,
                     provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """The derivative companion of symmetry_1:

        (-1)^m/(l+m+2) sum_{k<=m} C(m+1,k)(l+k+1) A^{m+1-k} B_{l+k}(x)
      + (-1)^l/(l+m+2) sum_{k<=l} C(l+1,k)(m+k+1) A^{l+1-k} B_{m+k}(-x)
      = (-1)^{m+1} B_{l+m+1}(x) + (-1)^{l+1} B_{l+m+1}(-x)

    The second sum is taken at -x; with +x the identity already fails for
    n = 1, l = 0, m = 1.
    """
    ctx = _context(n, values)
    A, full = ctx.total(), _all(ctx)
    first = ZERO
    for k in range(m + 1):
        first = first + bb_term(ctx, l + k, full, X, provider) * A ** (m + 1 - k) * (binomial(m + 1, k) * (l + k + 1))
    second = ZERO
    for k in range(l + 1):
        second = second + bb_term(ctx, m + k, full, -X, provider) * A ** (l + 1 - k) * (binomial(l + 1, k) * (m + k + 1))
    lhs = (first * _sign(m) + second * _sign(l)) * Fraction(1, l + m + 2)
    rhs = (bb_term(ctx, l + m + 1, full, X, provider) * _sign(m + 1)
           + bb_term(ctx, l + m + 1, full, -X, provider) * _sign(l + 1))
    return IdentityReport("symmetry_2", _params(ctx, l=l, m=m, n=n), lhs, rhs)


# --------------------------------------------------------------------------
# linear recurrences

def check_odd_recurrence(m: int, n: int, *, values=None,
                         provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """B_{2m+1}(a) = -1/(2(m+1)) sum_{k=0}^{m} C(m+1,k)(m+k+1) A^{m+1-k} B_{m+k}(a)"""
    ctx = _context(n, values)
    A, full = ctx.total(), _all(ctx)
    lhs = bb_term(ctx, 2 * m + 1, full, ZERO, provider)
    rhs = ZERO
    for k in range(m + 1):
        rhs = rhs + bb_term(ctx, m + k, full, ZERO, provider) * A ** (m + 1 - k) * (binomial(m + 1, k) * (m + k + 1))
    rhs = rhs * Fraction(-1, 2 * (m + 1))
    return IdentityReport("odd_recurrence", _params(ctx, m=m, n=n), lhs, rhs)


def check_even_recurrence(m: int, n: int, *, values=None,
                          provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """Corrected even-index recurrence, multiplied through by A:

        A B_{2m}(a) = -A/((m+1)(2m+1)) sum_{k=0}^{m-1} C(m+1,k)(m+k+1) A^{m-k} B_{m+k}(a)
                      + (2m)! sum_{|I|<n} B_{2m+1-n+|I|}(a_I)/(2m+1-n+|I|)!
    """
    if m < 1:
        raise ValueError("the even recurrence needs m >= 1")
    ctx = _context(n, values)
    A, full = ctx.total(), _all(ctx)
    lhs = A * bb_term(ctx, 2 * m, full, ZERO, provider)
    head = ZERO
    for k in range(m):
        head = head + bb_term(ctx, m + k, full, ZERO, provider) * A ** (m - k) * (binomial(m + 1, k) * (m + k + 1))
    head = head * A * Fraction(-1, (m + 1) * (2 * m + 1))
    tail = ZERO
    for subset in subsets(n):
        if len(subset) == n:
            continue
        order = 2 * m + 1 - n + len(subset)
        if order >= 0:
            tail = tail + bb_term(ctx, order, subset, ZERO, provider) * _inv_fact(order)
    rhs = head + tail * factorial(2 * m)
    return IdentityReport("even_recurrence", _params(ctx, m=m, n=n), lhs, rhs)


# --------------------------------------------------------------------------
# palindromic vanishing identities

def main_identity_value(m: int, n: int) -> Fraction:
    return Fraction(1, 2) if m == n == 3 else Fraction(0)


def check_main_identity(m: int, n: int, *, values=None,
                        provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """sum_{j=n-m}^{n} C(n+j-4, j-2)/(m-n+j)! sum_{|J|=j} B_{m-n+j}(a_J) = 1/2 if n=m=3 else 0"""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"m must be odd and positive, got {m}")
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    ctx = _context(n, values)
    lhs = ZERO
    for j in range(max(n - m, 0), n + 1):
        weight = binomial(n + j - 4, j - 2)
        order = m - n + j
        if not weight or order < 0:
            continue
        inner = ZERO
        for subset in subsets(n, j):
            inner = inner + bb_term(ctx, order, subset, ZERO, provider)
        lhs = lhs + inner * (weight * _inv_fact(order))
    norm = _norm(ctx)
    rhs = norm * main_identity_value(m, n)
    value = None
    if not lhs:
        value = Fraction(0)
    elif len(lhs) == 1 and len(norm) == 1:
        (mono, c), = lhs.term_map.items()
        (nmono, nc), = norm.term_map.items()
        if mono == nmono:
            value = c / nc
    return IdentityReport("main_identity", _params(ctx, m=m, n=n), lhs, rhs, value=value)


@dataclass(frozen=True)
class PalindromicWeights:
    alpha: tuple
    name: str = "custom"

    def __post_init__(self):
        alpha = tuple(Fraction(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if not alpha:
            raise ValueError("at least one weight is required")
        if alpha != alpha[::-1]:
            raise ValueError(f"weights {[str(a) for a in alpha]} are not palindromic")

    @property
    def n(self) -> int:
        return len(self.alpha) - 1

    @classmethod
    def ones(cls, n: int) -> "PalindromicWeights":
        return cls((1,) * (n + 1), "ones")

    @classmethod
    def main_identity(cls, n: int) -> "PalindromicWeights":
        """C(n-4, j-2) on 2 <= j <= n-2, zero elsewhere."""
        return cls(tuple(binomial(n - 4, j - 2) if 2 <= j <= n - 2 else 0
                         for j in range(n + 1)), "main")

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "PalindromicWeights":
        half = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n // 2 + 1)]
        full = [half[min(j, n - j)] for j in range(n + 1)]
        return cls(tuple(full), "random")

    def label(self) -> str:
        return f"{self.name}:" + ",".join(_fmt(a) for a in self.alpha)


def check_palindromic_general(weights: PalindromicWeights, m: int, *, values=None,
                              provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """sum_j alpha_j sum_{|J|=j} f((a.B)_J - (a.B)_{J*}) = 0 for odd f = x^m/m!"""
    if m < 0 or m % 2 == 0:
        raise ValueError(f"f = x^m/m! must be odd, got m = {m}")
    n = weights.n
    ctx = _context(n, values)
    weighted = ctx.weighted_symbols()
    lhs = ZERO
    for subset in subsets(n):
        alpha = weights.alpha[len(subset)]
        if not alpha:
            continue
        signed = [(c if i in subset else -c, s) for i, (c, s) in enumerate(weighted)]
        lhs = lhs + _eval_power(ZERO, signed, m, provider) * alpha
    lhs = lhs * _inv_fact(m)
    return IdentityReport("palindromic_general",
                          _params(ctx, m=m, n=n, weights=weights.label()), lhs, ZERO)


# --------------------------------------------------------------------------
# Nörlund recurrence

def check_norlund_recurrence(r: int, p: int, form: int = 1, *,
                             provider: MomentProvider = DEFAULT_MOMENTS) -> IdentityReport:
    """Recurrence between Nörlund values of different orders, 0 <= r <= p-1.

    form 1: B_r^{(p+1)}(p)/r! = sum_{k=1}^{r+1} (1/k) B_{r+1-k}^{(p+1-k)}(p-k)/(r+1-k)!
    form 2: B_r^{(p+1)}(p)/r! - B_r^{(p)}(p-1)/r!
                = sum_{k=1}^{r} 1/(k+1) B_{r-k}^{(p-k)}(p-1-k)/(r-k)!

    Form 2 is form 1 with its k = 1 term moved left and k shifted by one;
    the evaluation point is p-1-k (p+1-k already fails at p = 3, r = 2).
    """
    if not 0 <= r <= p - 1:
        raise ValueError(f"need 0 <= r <= p-1, got r={r}, p={p}")

    def nv(j, order, x):
        return norlund_value(j, order, x, provider) * _inv_fact(j)

    lead = nv(r, p + 1, p)
    if form == 1:
        lhs = lead
        rhs = sum((Fraction(1, k) * nv(r + 1 - k, p + 1 - k, p - k) for k in range(1, r + 2)),
                  Fraction(0))
    elif form == 2:
        lhs = lead - nv(r, p, p - 1)
        rhs = sum((Fraction(1, k + 1) * nv(r - k, p - k, p - 1 - k) for k in range(1, r + 1)),
                  Fraction(0))
    else:
        raise ValueError(f"form must be 1 or 2, got {form}")
    return IdentityReport("norlund_recurrence", {"r": r, "p": p, "form": form},
                          MultiPoly.const(lhs), MultiPoly.const(rhs))

"""Umbral symbols, umbral polynomials and the evaluation map.

A Bernoulli symbol ``B_i`` is a formal letter whose k-th power evaluates to
the Bernoulli number B_k; a uniform symbol ``U_i`` evaluates to 1/(k+1).
Distinct symbols evaluate independently, so moments multiply across them.

Bernoulli numbers follow the generating function z/(e^z - 1), which fixes
B_1 = -1/2.  (Some references use +1/2; that convention is not used here.)
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import MultiPoly, binomial, compositions, multinomial

BERNOULLI = "B"
UNIFORM = "U"


@dataclass(frozen=True, order=True)
class UmbralSymbol:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in (BERNOULLI, UNIFORM):
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("symbol indices are positive integers")

    def __str__(self):
        return f"{self.kind}{self.index}"


def bernoulli_symbol(i: int) -> UmbralSymbol:
    return UmbralSymbol(BERNOULLI, i)


def uniform_symbol(i: int) -> UmbralSymbol:
    return UmbralSymbol(UNIFORM, i)


class UmbralPoly(MultiPoly):
    """Polynomial whose monomials may also contain powers of umbral symbols.

    Symbols print as ``B1``, ``U2`` and sort ahead of ordinary indeterminates,
    e.g. ``B1^2*U1*a2``.
    """

    __slots__ = ()

    @classmethod
    def var(cls, name) -> "UmbralPoly":
        if not isinstance(name, UmbralSymbol):
            MultiPoly._check_var(name)
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def lift(cls, p: MultiPoly) -> "UmbralPoly":
        return cls._raw(dict(p._terms))

    def symbols(self) -> list:
        return sorted({v for mono in self._terms for v, _ in mono
                       if isinstance(v, UmbralSymbol)})

    def to_multipoly(self) -> MultiPoly:
        if self.symbols():
            raise ValueError("polynomial still contains umbral symbols; evaluate it first")
        return MultiPoly._raw(dict(self._terms))


# --------------------------------------------------------------------------
# moments

_bern_lock = threading.Lock()
_bern_table = [Fraction(1)]


def bernoulli_number(k: int) -> Fraction:
    """B_k from sum_{j=0}^{k} C(k+1, j) B_j = 0 (k >= 1), memoized."""
    if k < 0:
        raise ValueError("Bernoulli numbers are indexed from 0")
    table = _bern_table
    if k >= len(table):
        with _bern_lock:
            while len(table) <= k:
                n = len(table)
                s = sum(binomial(n + 1, j) * table[j] for j in range(n))
                table.append(-s / (n + 1))
    return table[k]


def uniform_moment(k: int) -> Fraction:
    if k < 0:
        raise ValueError("moments are indexed from 0")
    return Fraction(1, k + 1)


_DEFAULT_RULES = {BERNOULLI: bernoulli_number, UNIFORM: uniform_moment}


@dataclass(frozen=True)
class MomentProvider:
    """Assigns a rational moment to each (symbol kind, power).

    ``overrides`` replaces individual entries of the built-in tables; it is how
    the mutation tests corrupt a single Bernoulli number.
    """

    kinds: frozenset = frozenset({BERNOULLI, UNIFORM})
    overrides: tuple = field(default=())

    def moment(self, kind: str, k: int) -> Fraction:
        if kind not in self.kinds:
            raise KeyError(f"no moments for symbol kind {kind!r}")
        for (kd, kk), value in self.overrides:
            if kd == kind and kk == k:
                return value
        return _DEFAULT_RULES[kind](k)

    def with_moment(self, kind: str, k: int, value) -> "MomentProvider":
        kept = tuple(o for o in self.overrides if o[0] != (kind, k))
        return MomentProvider(self.kinds, kept + (((kind, k), Fraction(value)),))


DEFAULT_MOMENTS = MomentProvider()
BERNOULLI_MOMENTS = MomentProvider(frozenset({BERNOULLI}))
UNIFORM_MOMENTS = MomentProvider(frozenset({UNIFORM}))


# --------------------------------------------------------------------------
# expansion and evaluation

def _as_umbral(c) -> UmbralPoly:
    if isinstance(c, UmbralPoly):
        return c
    if isinstance(c, MultiPoly):
        return UmbralPoly.lift(c)
    return UmbralPoly.const(c)


def linear_form(constant, weighted_symbols: Iterable[tuple]) -> UmbralPoly:
    out = _as_umbral(constant)
    for coef, sym in weighted_symbols:
        out = out + _as_umbral(coef) * UmbralPoly.var(sym)
    return out


def expand_linear_power(constant, weighted_symbols: Sequence[tuple], k: int) -> UmbralPoly:
    """Expand (c + sum_i c_i S_i)^k by the multinomial theorem."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    parts = [_as_umbral(constant)] + [_as_umbral(c) * UmbralPoly.var(s)
                                      for c, s in weighted_symbols]
    powers = [[UmbralPoly.const(1)] for _ in parts]
    for p, pw in zip(parts, powers):
        for _ in range(k):
            pw.append(pw[-1] * p)
    out: dict = {}
    for comp in compositions(k, len(parts)):
        coef = multinomial(k, comp)
        term = UmbralPoly.const(coef)
        for e, pw in zip(comp, powers):
            if e:
                term = term * pw[e]
                if not term:
                    break
        for m, c in term._terms.items():
            out[m] = out.get(m, 0) + c
    return UmbralPoly._raw({m: c for m, c in out.items() if c})


def evaluate(p: MultiPoly, provider: MomentProvider = DEFAULT_MOMENTS) -> MultiPoly:
    """The eval map: replace each symbol power S^k by its moment m_k."""
    out: dict = {}
    for mono, c in p._terms.items():
        weight = c
        kept = []
        for v, e in mono:
            if isinstance(v, UmbralSymbol):
                weight = weight * provider.moment(v.kind, e)
                if not weight:
                    break
            else:
                kept.append((v, e))
        if weight:
            key = tuple(kept)
            out[key] = out.get(key, 0) + weight
    return MultiPoly._raw({m: c for m, c in out.items() if c})


def umbral_derivative(p: MultiPoly, var: str) -> MultiPoly:
    """Partial derivative in an ordinary indeterminate; symbols act as constants."""
    if isinstance(var, UmbralSymbol):
        raise ValueError(f"cannot differentiate with respect to umbral symbol {var}")
    MultiPoly._check_var(var)
    return p.derivative(var)


__all__ = [
    "BERNOULLI", "UNIFORM", "UmbralSymbol", "UmbralPoly", "MomentProvider",
    "DEFAULT_MOMENTS", "BERNOULLI_MOMENTS", "UNIFORM_MOMENTS",
    "bernoulli_symbol", "uniform_symbol", "bernoulli_number", "uniform_moment",
    "linear_form", "expand_linear_power", "evaluate", "umbral_derivative",
]

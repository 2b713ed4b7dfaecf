"""Exact scalars, sparse multivariate polynomials and truncated power series.

Everything here works over :class:`fractions.Fraction`; nothing is ever
rounded.  Polynomials are stored as a map from monomials to nonzero
coefficients, where a monomial is a tuple of ``(variable, exponent)`` pairs
sorted by variable.  Because zero coefficients are never stored, two
polynomials are mathematically equal exactly when their term maps are equal.
"""
from __future__ import annotations

import re
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[variable, int], ...]


# --------------------------------------------------------------------------
# scalars and combinatorics

def rat_arith(op: str, p: Scalar, q: Scalar | None = None) -> Fraction:
    p = Fraction(p)
    if op == "neg":
        return -p
    q = Fraction(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "div":
        if q == 0:
            raise ZeroDivisionError(f"division of {p} by zero")
        return p / q
    raise ValueError(f"unknown rational operation {op!r}")


_fact_lock = threading.Lock()
_fact_table = [1]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    table = _fact_table
    if n >= len(table):
        with _fact_lock:
            while len(table) <= n:
                table.append(table[-1] * len(table))
    return table[n]


def binomial(n: int, k: int) -> Fraction:
    """C(n, k), zero outside 0 <= k <= n.

    A negative upper index uses the falling-factorial extension
    C(n, k) = n(n-1)...(n-k+1)/k!, which only matters for k >= 0.
    """
    if k < 0:
        return Fraction(0)
    if n >= 0:
        if k > n:
            return Fraction(0)
        return Fraction(factorial(n) // (factorial(k) * factorial(n - k)))
    num = 1
    for i in range(k):
        num *= n - i
    return Fraction(num, factorial(k))


def multinomial(k: int, parts: Iterable[int]) -> Fraction:
    parts = list(parts)
    if any(m < 0 for m in parts) or sum(parts) != k:
        raise ValueError(f"parts {parts} do not form a composition of {k}")
    denom = 1
    for m in parts:
        denom *= factorial(m)
    return Fraction(factorial(k) // denom)


def compositions(k: int, n: int):
    """Yield every tuple of n nonnegative integers summing to k (stars and bars)."""
    if n == 0:
        if k == 0:
            yield ()
        return
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in compositions(k - first, n - 1):
            yield (first,) + rest


# --------------------------------------------------------------------------
# monomials

_NAME_RE = re.compile(r"^([A-Za-z_]+)(\d*)$")


@lru_cache(maxsize=None)
def _var_key(name: str):
    m = _NAME_RE.match(name)
    if m is None:
        return (name, -1)
    letters, digits = m.groups()
    return (letters, int(digits) if digits else -1)


def var_key(v) -> tuple:
    """Sort key for variables: natural order on the printed name (a2 < a10)."""
    return _var_key(str(v))


@lru_cache(maxsize=1 << 18)
def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda item: var_key(item[0])))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_str(m: Monomial) -> str:
    return "*".join(f"{v}^{e}" if e != 1 else f"{v}" for v, e in m)


def grlex_key(m: Monomial, variables: list) -> tuple:
    """Graded-lex key: higher total degree first, then lex on the exponent vector."""
    d = dict(m)
    return (-mono_degree(m), tuple(-d.get(v, 0) for v in variables))


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# --------------------------------------------------------------------------
# polynomials

class MultiPoly:
    """Sparse polynomial over the rationals in named commuting indeterminates.

    Instances are immutable.  Arithmetic operators accept ints and Fractions
    on either side.  Ordinary indeterminates are lowercase names such as
    ``x`` or ``a3``.

    >>> a1, a2 = MultiPoly.var("a1"), MultiPoly.var("a2")
    >>> str((a1 + a2) ** 2)
    'a1^2 + 2*a1*a2 + a2^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict = {}
        for mono, c in (terms or {}).items():
            merged: dict = {}
            for v, e in mono:
                merged[v] = merged.get(v, 0) + e
            key = tuple(sorted(((v, e) for v, e in merged.items() if e),
                               key=lambda item: var_key(item[0])))
            clean[key] = clean.get(key, 0) + Fraction(c)
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        return cls._raw({(): Fraction(c)} if c else {})

    @classmethod
    def var(cls, name) -> "MultiPoly":
        cls._check_var(name)
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, mono: Monomial, c: Scalar = 1) -> "MultiPoly":
        return cls._raw({mono: Fraction(c)} if c else {})

    @staticmethod
    def _check_var(name):
        if not isinstance(name, str) or not name[:1].islower():
            raise ValueError(f"ordinary indeterminates are lowercase names, got {name!r}")

    # -- inspection --------------------------------------------------------

    @property
    def term_map(self) -> dict:
        return dict(self._terms)

    def __iter__(self):
        return iter(self.terms())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def variables(self) -> list:
        vs = {v for mono in self._terms for v, _ in mono}
        return sorted(vs, key=var_key)

    def terms(self) -> list:
        """(monomial, coefficient) pairs in canonical graded-lex order."""
        variables = self.variables()
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0], variables))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((), Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return NotImplemented

    def _result_type(self, other):
        return other.__class__ if isinstance(other, self.__class__) else self.__class__

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return self._result_type(other)._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self.__class__._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return self._result_type(other)._raw({m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar):
        if not c:
            return self.__class__._raw({})
        c = Fraction(c)
        return self.__class__._raw({m: v * c for m, v in self._terms.items()})

    def __truediv__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return self.scale(1 / Fraction(c))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"polynomial power needs a nonnegative integer, got {k!r}")
        result = self.__class__.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution ----------------------------------------

    def derivative(self, var):
        out: dict = {}
        for mono, c in self._terms.items():
            for i, (v, e) in enumerate(mono):
                if v == var:
                    new = mono[:i] + (((v, e - 1),) if e > 1 else ()) + mono[i + 1:]
                    out[new] = out.get(new, 0) + c * e
                    break
        return self.__class__._raw({m: c for m, c in out.items() if c})

    def substitute(self, bindings: Mapping) -> "MultiPoly":
        """Replace indeterminates by rationals or polynomials; others stay symbolic."""
        if not bindings:
            return self
        images = {v: (b if isinstance(b, MultiPoly) else MultiPoly.const(b))
                  for v, b in bindings.items()}
        if all(len(img) <= 1 for img in images.values()):
            return self._substitute_monomials(images)
        power_cache: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in power_cache:
                power_cache[key] = images[v] ** e
            return power_cache[key]

        result = MultiPoly._raw({})
        for mono, c in self._terms.items():
            kept = tuple((v, e) for v, e in mono if v not in images)
            term = self.__class__._raw({kept: c})
            for v, e in mono:
                if v in images:
                    term = term * power(v, e)
            result = result + term
        return result

    def _substitute_monomials(self, images: dict) -> "MultiPoly":
        # every image is zero or a single term c*m, so each term maps to one term
        single = {v: next(iter(img._terms.items()), None) for v, img in images.items()}
        out: dict = {}
        for mono, c in self._terms.items():
            new_mono = ()
            for v, e in mono:
                if v in single:
                    image = single[v]
                    if image is None:
                        c = 0
                        break
                    m, k = image
                    c = c * k ** e
                    for _ in range(e):
                        new_mono = mono_mul(new_mono, m)
                else:
                    new_mono = mono_mul(new_mono, ((v, e),))
            if c:
                out[new_mono] = out.get(new_mono, 0) + c
        return self.__class__._raw({m: c for m, c in out.items() if c})

    # -- serialization -----------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self.terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _fmt_rational(a)
            elif a == 1:
                body = mono_str(mono)
            else:
                body = f"{_fmt_rational(a)}*{mono_str(mono)}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"{self.__class__.__name__}({str(self)!r})"

    def to_latex(self) -> str:
        if not self._terms:
            return "0"

        def var_tex(v):
            m = _NAME_RE.match(str(v))
            letters, digits = m.groups() if m else (str(v), "")
            base = {"B": r"\mathcal{B}", "U": r"\mathcal{U}"}.get(letters, letters)
            return f"{base}_{{{digits}}}" if digits else base

        out = ""
        for i, (mono, c) in enumerate(self.terms()):
            a = abs(c)
            if c < 0:
                out += "-" if i == 0 else " - "
            elif i:
                out += " + "
            if a.denominator != 1:
                coef = rf"\frac{{{a.numerator}}}{{{a.denominator}}}"
            elif a != 1 or not mono:
                coef = str(a.numerator)
            else:
                coef = ""
            factors = "".join(var_tex(v) + (f"^{{{e}}}" if e != 1 else "") for v, e in mono)
            out += coef + (" " if coef and factors else "") + factors
        return out

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Inverse of ``str``: parse the canonical text form."""
        text = text.strip()
        if text == "0":
            return cls._raw({})
        tokens = re.split(r"\s+([+-])\s+", text)
        signs = ["+"] + tokens[1::2]
        bodies = tokens[0::2]
        if bodies[0].startswith("-"):
            signs[0], bodies[0] = "-", bodies[0][1:]
        result = cls._raw({})
        for sign, body in zip(signs, bodies):
            coef = Fraction(1)
            mono: dict = {}
            for factor in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coef *= Fraction(factor)
                    continue
                name, _, exp = factor.partition("^")
                mono[name] = mono.get(name, 0) + (int(exp) if exp else 1)
            key = tuple(sorted(mono.items(), key=lambda item: var_key(item[0])))
            result = result + cls._raw({key: -coef if sign == "-" else coef})
        return result


def poly_arith(op: str, p, q=None):
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return q.scale(p)
    if op == "pow":
        return p ** q
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_substitute(p: MultiPoly, bindings: Mapping) -> MultiPoly:
    return p.substitute(bindings)


def as_poly(c) -> MultiPoly:
    return c if isinstance(c, MultiPoly) else MultiPoly.const(c)


# --------------------------------------------------------------------------
# truncated power series

class TruncatedSeries:
    """Power series in z with polynomial coefficients, kept exactly through z**order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = [as_poly(c) for c in list(coeffs)[: order + 1]]
        cs += [MultiPoly.const(0)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    def __getitem__(self, k: int) -> MultiPoly:
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        body = " + ".join(f"({c})*z^{k}" for k, c in enumerate(self.coeffs) if c)
        return f"TruncatedSeries({body or '0'}, order={self.order})"

    def __add__(self, other):
        _check_orders(self, other)
        return TruncatedSeries([p + q for p, q in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other):
        return series_mul(self, other)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries([p * c for p in self.coeffs], self.order)


def _check_orders(s, t):
    if s.order != t.order:
        raise ValueError(f"truncation orders differ: {s.order} vs {t.order}")


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    _check_orders(s, t)
    n = s.order
    out = []
    for k in range(n + 1):
        acc = MultiPoly.const(0)
        for i in range(k + 1):
            if s.coeffs[i] and t.coeffs[k - i]:
                acc = acc + s.coeffs[i] * t.coeffs[k - i]
        out.append(acc)
    return TruncatedSeries(out, n)


def series_inv(s: TruncatedSeries) -> TruncatedSeries:
    """Reciprocal by back-substitution; the constant term must be a nonzero rational."""
    c0 = s.coeffs[0]
    if not c0.is_constant() or not c0:
        raise ValueError(f"constant term {c0} is not an invertible scalar")
    inv0 = 1 / c0.constant_value()
    out = [MultiPoly.const(inv0)]
    for k in range(1, s.order + 1):
        acc = MultiPoly.const(0)
        for i in range(1, k + 1):
            if s.coeffs[i]:
                acc = acc + s.coeffs[i] * out[k - i]
        out.append(acc.scale(-inv0))
    return TruncatedSeries(out, s.order)


def series_exp_linear(c, order: int) -> TruncatedSeries:
    """e^{cz}: coefficient of z^k is c^k / k!."""
    c = as_poly(c)
    out, power = [], MultiPoly.const(1)
    for k in range(order + 1):
        out.append(power.scale(Fraction(1, factorial(k))))
        power = power * c
    return TruncatedSeries(out, order)


def series_expm1_unit(c, order: int) -> TruncatedSeries:
    """(e^{cz} - 1)/(cz) = sum c^k z^k/(k+1)!, a series with constant term 1."""
    c = as_poly(c)
    out, power = [], MultiPoly.const(1)
    for k in range(order + 1):
        out.append(power.scale(Fraction(1, factorial(k + 1))))
        power = power * c
    return TruncatedSeries(out, order)

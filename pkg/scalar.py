"""Exact Laurent polynomials in s over the rationals.

The loop value is delta = s^2, so every normalisation factor that appears in the
graded algebras (delta^-k, 1/sqrt(delta)^(p+q), sqrt(delta)) is a monomial here.
Coefficients are `Fraction`s, so alternating sums cancel exactly.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Number = Union[int, Fraction]


class Scalar:
    """Immutable Laurent polynomial sum(c_e * s^e) with no zero coefficients stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | Iterable[Tuple[int, Number]] | None = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        canon: Dict[int, Fraction] = {}
        for exp, coeff in items:
            c = canon.get(int(exp), Fraction(0)) + Fraction(coeff)
            if c:
                canon[int(exp)] = c
            else:
                canon.pop(int(exp), None)
        self._terms = canon
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls) -> Scalar:
        return _ZERO

    @classmethod
    def one(cls) -> Scalar:
        return _ONE

    @classmethod
    def s(cls) -> Scalar:
        return cls({1: 1})

    @classmethod
    def monomial(cls, coeff: Number, exp: int) -> Scalar:
        return cls({exp: coeff})

    @classmethod
    def coerce(cls, value: Union[Scalar, Number]) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls({0: value})
        raise TypeError(f"cannot use {type(value).__name__} as a Scalar")

    # inspection

    def items(self):
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero has no exponents")
        return min(self._terms)

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero has no exponents")
        return max(self._terms)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.max_exponent()] if self._terms else Fraction(0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # ring operations

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, 0) + c
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Scalar(out)

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if exp < 0:
            if not self.is_monomial():
                raise ArithmeticError("only monomials are invertible in the Laurent ring")
            (e, c), = self._terms.items()
            return Scalar({e * exp: c ** exp})
        acc, base = _ONE, self
        while exp:
            if exp & 1:
                acc = acc * base
            base = base * base
            exp >>= 1
        return acc

    def shift(self, j: int) -> Scalar:
        """Multiply by s^j."""
        return Scalar({e + j: c for e, c in self._terms.items()})

    # division in Q[s, 1/s]

    def _poly(self):
        """Coefficient list of s^-min * self, constant term first."""
        lo = self.min_exponent()
        out = [Fraction(0)] * (self.max_exponent() - lo + 1)
        for e, c in self._terms.items():
            out[e - lo] = c
        return lo, out

    def divmod(self, other: Scalar) -> Tuple[Scalar, Scalar]:
        """Long division of the polynomial parts after clearing powers of s.

        Returns (q, r) with s^a * self = q * s^b * other + r, where a, b are the
        shifts that make both sides polynomials with nonzero constant term.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Scalar")
        if self.is_zero():
            return _ZERO, _ZERO
        _, num = self._poly()
        _, den = other._poly()
        quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
        num = list(num)
        lead = den[-1]
        for i in range(len(num) - len(den), -1, -1):
            c = num[i + len(den) - 1] / lead
            if c:
                quot[i] = c
                for j, d in enumerate(den):
                    num[i + j] -= c * d
        return Scalar(enumerate(quot)), Scalar(enumerate(num))

    def exact_div(self, other: Scalar) -> Scalar:
        """self / other, raising ArithmeticError when the quotient is not a Laurent polynomial."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Scalar")
        if self.is_zero():
            return _ZERO
        if other.is_monomial():
            (e, c), = other._terms.items()
            return Scalar({x - e: v / c for x, v in self._terms.items()})
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q.shift(self.min_exponent() - other.min_exponent())

    @staticmethod
    def gcd(a: Scalar, b: Scalar) -> Scalar:
        """Monic gcd in Q[s, 1/s], normalised to a polynomial with nonzero constant term."""
        if a.is_zero():
            return b.normalized() if b else _ZERO
        if b.is_zero():
            return a.normalized()
        x, y = a.normalized(), b.normalized()
        while not y.is_zero():
            _, r = x.divmod(y)
            x, y = y, (r.normalized() if r else _ZERO)
        return x

    def normalized(self) -> Scalar:
        """Monic, with lowest exponent 0."""
        if self.is_zero():
            return _ZERO
        lo = self.min_exponent()
        lead = self.leading_coefficient()
        return Scalar({e - lo: c / lead for e, c in self._terms.items()})

    # comparison

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # numeric bridge

    def evaluate(self, s0: float) -> float:
        if not s0 > 0:
            raise ValueError(f"evaluation point must be positive, got {s0}")
        total = 0.0
        for exp, c in self.items():
            total += float(c) * s0 ** exp
        return total

    # text form

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp, c in sorted(self._terms.items(), reverse=True):
            mag = -c if c < 0 else c
            term = f"{mag}*s^{exp}"
            if not parts:
                parts.append(f"-{term}" if c < 0 else term)
            else:
                parts.append(f"- {term}" if c < 0 else f"+ {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"Scalar({self})"

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Inverse of str(); also accepts bare `s`, `s^e` and integer or fraction constants."""
        compact = re.sub(r"\s+", "", text)
        if compact in ("", "0"):
            return _ZERO
        out: Dict[int, Fraction] = {}
        pos = 0
        while pos < len(compact):
            m = _TERM.match(compact, pos)
            if not m or m.end() == pos or (m.group("coeff") is None and m.group("var") is None):
                raise ValueError(f"malformed scalar {text!r} at offset {pos}")
            coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
            if m.group("sign") == "-":
                coeff = -coeff
            if m.group("var"):
                exp = int(m.group("exp")) if m.group("exp") is not None else 1
            else:
                exp = 0
            out[exp] = out.get(exp, 0) + coeff
            pos = m.end()
        return cls(out)


_TERM = re.compile(r"(?P<sign>[+-]?)(?P<coeff>\d+(?:/\d+)?)?(?:\*?(?P<var>s)(?:\^(?P<exp>-?\d+))?)?")

_ZERO = Scalar()
_ONE = Scalar({0: 1})

DELTA = Scalar({2: 1})
S = Scalar({1: 1})


def arithmetic(a: Scalar, b: Scalar, kind: str) -> Scalar:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "neg":
        return -a
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def delta_power(j: int) -> Scalar:
    """delta^j = s^(2j)."""
    return Scalar({2 * j: 1})


def evaluate(x: Scalar, s0: float) -> float:
    return x.evaluate(s0)

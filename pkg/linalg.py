"""Exact linear algebra over Q[s, 1/s] by fraction-free Gauss-Jordan elimination.

Every entry after step r is an r x r minor of the input, so the division by
the previous pivot is exact in the Laurent ring and no fraction field is needed.
At the end all pivot entries equal the last pivot.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from scalar import Scalar

Matrix = List[List[Scalar]]


@dataclass
class Echelon:
    rows: Matrix
    pivots: List[int]
    pivot_value: Scalar

    @property
    def rank(self) -> int:
        return len(self.pivots)


def echelon(matrix: Sequence[Sequence[Scalar]]) -> Echelon:
    rows = [[Scalar.coerce(x) for x in row] for row in matrix]
    if not rows:
        return Echelon([], [], Scalar.one())
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("ragged matrix")
    prev = Scalar.one()
    pivots: List[int] = []
    r = 0
    for c in range(width):
        if r == len(rows):
            break
        found = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        pivot_row = rows[r]
        p = pivot_row[c]
        for i, row in enumerate(rows):
            if i == r:
                continue
            factor = row[c]
            if factor:
                rows[i] = [(p * row[j] - factor * pivot_row[j]).exact_div(prev) for j in range(width)]
            elif p != prev:
                rows[i] = [(p * x).exact_div(prev) for x in row]
        pivots.append(c)
        prev = p
        r += 1
    return Echelon(rows, pivots, prev)


def rank(matrix: Sequence[Sequence[Scalar]]) -> int:
    return echelon(matrix).rank


def _content(values: Sequence[Scalar]) -> Fraction:
    """gcd of all numerators over lcm of all denominators."""
    num, den = 0, 1
    for v in values:
        for _, c in v.items():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, den) if num else Fraction(1)


def primitive(vector: Sequence[Scalar]) -> List[Scalar]:
    """Divide out the common polynomial and rational factor, fix the sign of the first entry."""
    vector = [Scalar.coerce(v) for v in vector]
    nonzero = [v for v in vector if v]
    if not nonzero:
        return vector
    g = Scalar.zero()
    for v in nonzero:
        g = Scalar.gcd(g, v)
    vector = [v.exact_div(g) for v in vector]
    low = min(v.min_exponent() for v in vector if v)
    vector = [v.shift(-low) for v in vector]
    scale = _content(vector)
    first = next(v for v in vector if v)
    if first.leading_coefficient() < 0:
        scale = -scale
    return [v * (1 / scale) for v in vector]


def nullspace(matrix: Sequence[Sequence[Scalar]], width: int | None = None) -> List[List[Scalar]]:
    """A basis of the right kernel, one primitive vector per free column."""
    if not matrix:
        if width is None:
            raise ValueError("width is required for an empty matrix")
        return [[Scalar.one() if i == f else Scalar.zero() for i in range(width)] for f in range(width)]
    ech = echelon(matrix)
    width = len(ech.rows[0])
    pivot_set = set(ech.pivots)
    basis = []
    for f in range(width):
        if f in pivot_set:
            continue
        v = [Scalar.zero()] * width
        v[f] = ech.pivot_value
        for r, c in enumerate(ech.pivots):
            v[c] = -ech.rows[r][f]
        basis.append(primitive(v))
    return basis


def independent_columns(matrix: Sequence[Sequence[Scalar]]) -> List[int]:
    return echelon(matrix).pivots


def columns_to_rows(columns: Sequence[Sequence[Scalar]]) -> Matrix:
    if not columns:
        return []
    return [[col[r] for col in columns] for r in range(len(columns[0]))]

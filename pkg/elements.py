"""Vectors of P_{n,k}: boxes with k strands on each side and 2n on top.

A basis diagram is a `Pairing(0, N)` with N = 2(n + k) whose points are read
clockwise from the bottom-left corner: L1..Lk up the left side (L1 lowest),
T1..T2n along the top, then Rk..R1 down the right side. So L_i sits at index
i - 1, T_p at k + p - 1 and R_i at N - i.
"""
from __future__ import annotations

import functools
import re
from typing import Dict, Iterable, Mapping, Tuple, Union

from scalar import Number, Scalar, delta_power
from tl import Pairing, cap_at, catalan, enumerate_diagrams, glue, is_noncrossing_matching


@functools.lru_cache(maxsize=None)
def box(seq: Tuple[int, ...]) -> Pairing:
    return Pairing(0, len(seq), seq)


def point_label(index: int, n: int, k: int) -> str:
    size = 2 * (n + k)
    if index < k:
        return f"L{index + 1}"
    if index < k + 2 * n:
        return f"T{index - k + 1}"
    return f"R{size - index}"


def point_index(label: str, n: int, k: int) -> int:
    m = re.fullmatch(r"([LTR])(\d+)", label.strip())
    if not m:
        raise ValueError(f"bad boundary label {label!r}")
    side, num = m.group(1), int(m.group(2))
    if side == "L" and 1 <= num <= k:
        return num - 1
    if side == "T" and 1 <= num <= 2 * n:
        return k + num - 1
    if side == "R" and 1 <= num <= k:
        return 2 * (n + k) - num
    raise ValueError(f"label {label!r} out of range for P_{{{n},{k}}}")


def diagram_text(p: Pairing, n: int, k: int) -> str:
    body = ",".join(f"({point_label(i, n, k)},{point_label(j, n, k)})" for i, j in p.pairs())
    return "{" + body + "}"


def diagram_from_text(text: str, n: int, k: int) -> Pairing:
    size = 2 * (n + k)
    seq = [-1] * size
    for a, b in re.findall(r"\(\s*(\w+)\s*,\s*(\w+)\s*\)", text):
        i, j = point_index(a, n, k), point_index(b, n, k)
        if i == j or seq[i] != -1 or seq[j] != -1:
            raise ValueError(f"point used twice in pair ({a},{b})")
        seq[i], seq[j] = j, i
    if not is_noncrossing_matching(seq):
        raise ValueError(f"{text!r} is not a noncrossing matching of P_{{{n},{k}}}")
    return box(tuple(seq))


class Element:
    """An immutable linear combination of P_{n,k} basis diagrams."""

    __slots__ = ("grade", "context", "terms")

    def __init__(self, grade: int, context: int, terms: Mapping[Pairing, Union[Scalar, Number]] | None = None):
        if grade < 0 or context < 0:
            raise ValueError("grade and context must be nonnegative")
        size = 2 * (grade + context)
        clean: Dict[Pairing, Scalar] = {}
        for p, c in (terms or {}).items():
            if p.bottom_count != 0 or p.top_count != size:
                raise ValueError(f"diagram with {p.size} points is not a basis element of P_{{{grade},{context}}}")
            c = Scalar.coerce(c)
            if c:
                clean[p] = c
        self.grade = grade
        self.context = context
        self.terms = clean

    @classmethod
    def zero(cls, n: int, k: int) -> Element:
        return cls(n, k)

    @classmethod
    def basis_vector(cls, p: Pairing, n: int, k: int, coeff: Union[Scalar, Number] = 1) -> Element:
        return cls(n, k, {p: coeff})

    @classmethod
    def unit(cls, k: int) -> Element:
        """The identity of P_{0,k}: every L_i joined straight across to R_i."""
        size = 2 * k
        return cls(0, k, {box(tuple(size - 1 - i for i in range(size))): 1})

    @property
    def size(self) -> int:
        return 2 * (self.grade + self.context)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def coefficient(self, p: Pairing) -> Scalar:
        return self.terms.get(p, Scalar.zero())

    def _check_same_space(self, other: Element):
        if (self.grade, self.context) != (other.grade, other.context):
            raise ValueError(f"P_{{{self.grade},{self.context}}} and P_{{{other.grade},{other.context}}} differ")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same_space(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out[p] + c if p in out else c
        return Element(self.grade, self.context, out)

    def __neg__(self):
        return Element(self.grade, self.context, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        try:
            scalar = Scalar.coerce(scalar)
        except TypeError:
            return NotImplemented
        if not scalar:
            return Element(self.grade, self.context)
        return Element(self.grade, self.context, {p: c * scalar for p, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.grade, self.context, self.terms) == (other.grade, other.context, other.terms)

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            "grade": self.grade,
            "context": self.context,
            "terms": [
                {"pairing": diagram_text(p, self.grade, self.context), "scalar": str(c)}
                for p, c in self.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Element:
        try:
            n, k = int(data["grade"]), int(data["context"])
            terms: Dict[Pairing, Scalar] = {}
            for term in data["terms"]:
                p = diagram_from_text(term["pairing"], n, k)
                terms[p] = terms.get(p, Scalar.zero()) + Scalar.parse(term["scalar"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed element: {exc}") from exc
        return cls(n, k, terms)

    def __str__(self):
        if not self.terms:
            return f"0 in P_{{{self.grade},{self.context}}}"
        return " + ".join(f"({c})*{diagram_text(p, self.grade, self.context)}" for p, c in self.items())

    def __repr__(self):
        return f"Element(grade={self.grade}, context={self.context}, terms={len(self.terms)})"


def basis(n: int, k: int) -> Tuple[Pairing, ...]:
    """The diagram basis of P_{n,k}; there are catalan(n + k) of them."""
    return enumerate_diagrams(0, 2 * (n + k))


def dimension(n: int, k: int) -> int:
    return catalan(n + k)


def linear_map(x: Element, grade: int, fn, context: int | None = None) -> Element:
    """Extend fn(basis seq) -> (seq, loops) linearly, weighting each loop by delta."""
    out: Dict[Pairing, Scalar] = {}
    for p, c in x.terms.items():
        seq, loops = fn(p.seq)
        q = box(seq)
        term = c * delta_power(loops) if loops else c
        out[q] = out[q] + term if q in out else term
    return Element(grade, x.context if context is None else context, out)


@functools.lru_cache(maxsize=None)
def _apply_top_basis(t: Pairing, seq: Tuple[int, ...], k: int) -> Tuple[Tuple[int, ...], int]:
    n2, j2 = t.bottom_count, t.top_count
    size = len(seq)
    wires = [((0, k + p - 1), (1, p - 1)) for p in range(1, n2 + 1)]
    outputs = ([(0, i) for i in range(k)]
               + [(1, n2 + j2 - q) for q in range(1, j2 + 1)]
               + [(0, i) for i in range(k + n2, size)])
    return glue([seq, t.seq], wires, outputs)


def apply_top(t: Pairing, x: Element) -> Element:
    """Glue the diagram t (2n -> 2j) onto the top of x in P_{n,k}."""
    if t.bottom_count != 2 * x.grade or t.top_count % 2:
        raise ValueError(f"cannot apply a {t.bottom_count}→{t.top_count} diagram to grade {x.grade}")
    k = x.context
    return linear_map(x, t.top_count // 2, lambda seq: _apply_top_basis(t, seq, k))


def cap(x: Element, side: str = "left") -> Element:
    """Cap off (T1,T2) on the left or (T2n-1,T2n) on the right."""
    if x.grade == 0:
        raise ValueError("cannot cap a grade 0 element")
    top = 2 * x.grade
    if side == "left":
        return apply_top(cap_at(top, 1), x)
    if side == "right":
        return apply_top(cap_at(top, top - 1), x)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@functools.lru_cache(maxsize=None)
def _include_basis(seq: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
    size = len(seq) + 2
    out = [0] * size
    out[0], out[size - 1] = size - 1, 0
    for i, j in enumerate(seq):
        out[i + 1] = j + 1
    return tuple(out), 0


def include(x: Element) -> Element:
    """P_{n,k} -> P_{n,k+1}: run one more strand underneath everything.

    The new strand is the lowest, so it becomes L1/R1 and old labels move up by one.
    """
    return linear_map(x, x.grade, _include_basis, context=x.context + 1)


@functools.lru_cache(maxsize=None)
def _closure_loops(seq: Tuple[int, ...]) -> int:
    k = len(seq) // 2
    wires = [((0, i), (0, 2 * k - 1 - i)) for i in range(k)]
    _, loops = glue([seq], wires, [])
    return loops


def closure(x: Element) -> Scalar:
    """Markov trace of a grade 0 element: close each L_i around to R_i, divide by delta^k."""
    if x.grade != 0:
        raise ValueError(f"closure needs a grade 0 element, got grade {x.grade}")
    total = Scalar.zero()
    for p, c in x.terms.items():
        total = total + c * delta_power(_closure_loops(p.seq) - x.context)
    return total


@functools.lru_cache(maxsize=None)
def _mirror_basis(seq: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
    size = len(seq)
    return tuple(size - 1 - seq[size - 1 - j] for j in range(size)), 0


def involution(x: Element) -> Element:
    """Mirror every diagram across the vertical axis; rational coefficients stay fixed."""
    return linear_map(x, x.grade, _mirror_basis)


def build_cup(k: int) -> Element:
    """The grade 1 element with (T1,T2) capped and k straight side strands."""
    size = 2 * k + 2
    seq = [0] * size
    for i in range(k):
        seq[i], seq[size - 1 - i] = size - 1 - i, i
    seq[k], seq[k + 1] = k + 1, k
    return Element.basis_vector(box(tuple(seq)), 1, k)


@functools.lru_cache(maxsize=None)
def _xpq_basis(seq: Tuple[int, ...], k: int, n: int, p: int, q: int) -> Tuple[Tuple[int, ...], int]:
    size = len(seq)
    new_size = size + 2 * (p + q)

    def moved(i):
        if i < k:
            return i
        if i < k + 2 * n:
            return i + 2 * p
        return i + 2 * p + 2 * q

    out = [0] * new_size
    for i, j in enumerate(seq):
        out[moved(i)] = moved(j)
    for r in range(p):
        a = k + 2 * r
        out[a], out[a + 1] = a + 1, a
    for r in range(q):
        a = k + 2 * p + 2 * n + 2 * r
        out[a], out[a + 1] = a + 1, a
    return tuple(out), 0


def build_xpq(x: Element, p: int, q: int) -> Element:
    """x_{p,q}: p adjacent cups left of x's top, q to the right, scaled by s^-(p+q)."""
    if p < 0 or q < 0:
        raise ValueError("p and q must be nonnegative")
    if p == q == 0:
        return x
    n, k = x.grade, x.context
    out = linear_map(x, n + p + q, lambda seq: _xpq_basis(seq, k, n, p, q))
    return out * Scalar.monomial(1, -(p + q))


def build_jones(i: int, k: int) -> Element:
    """e_i = (1/delta) * the diagram turning strands i and i+1 back on both sides."""
    if i < 1 or i + 1 > k:
        raise ValueError(f"e_{i} needs at least {i + 1} side strands, context is {k}")
    size = 2 * k
    seq = [0] * size
    for j in range(k):
        seq[j], seq[size - 1 - j] = size - 1 - j, j
    a, b = i - 1, i
    seq[a], seq[b] = b, a
    seq[size - i], seq[size - i - 1] = size - i - 1, size - i
    return Element.basis_vector(box(tuple(seq)), 0, k, delta_power(-1))


def build_alpha(k: int):
    """The nested double cup {(T1,T4),(T2,T3)} in grade 2, included into context k."""
    from graded import GradedElement

    x = Element.basis_vector(box((3, 2, 1, 0)), 2, 0)
    for _ in range(k):
        x = include(x)
    return GradedElement.from_element(x)


def sum_elements(items: Iterable[Element], n: int, k: int) -> Element:
    out: Dict[Pairing, Scalar] = {}
    for x in items:
        if (x.grade, x.context) != (n, k):
            raise ValueError(f"expected P_{{{n},{k}}}, got P_{{{x.grade},{x.context}}}")
        for p, c in x.terms.items():
            out[p] = out[p] + c if p in out else c
    return Element(n, k, out)

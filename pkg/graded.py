"""The graded algebras on the direct sum of the P_{n,k}, k fixed.

Gr_k multiplies with `star` (sum over partial contractions of adjacent top
strands) and carries the orthogonal inner product; Hr_k multiplies by
juxtaposition (`bullet`) and carries the inner product summed over all
Temperley-Lieb closures of the top.
"""
from __future__ import annotations

import functools
import logging
import random
from typing import Dict, Iterable, Mapping, Tuple

import elements
from elements import Element, box
from models import Report
from scalar import Scalar, delta_power
from tl import Pairing, enumerate_diagrams, glue


class GradedElement:
    """A finitely supported map grade -> Element, all in the same context."""

    __slots__ = ("context", "parts")

    def __init__(self, context: int, parts: Mapping[int, Element] | None = None):
        clean: Dict[int, Element] = {}
        for n, x in (parts or {}).items():
            if x.context != context:
                raise ValueError(f"part of context {x.context} in a context {context} element")
            if x.grade != n:
                raise ValueError(f"grade {x.grade} element stored under grade {n}")
            if x:
                clean[n] = x
        self.context = context
        self.parts = clean

    @classmethod
    def from_element(cls, x: Element) -> GradedElement:
        return cls(x.context, {x.grade: x})

    @classmethod
    def from_elements(cls, context: int, xs: Iterable[Element]) -> GradedElement:
        out = cls(context)
        for x in xs:
            out = out + cls.from_element(x)
        return out

    @classmethod
    def unit(cls, k: int) -> GradedElement:
        return cls.from_element(Element.unit(k))

    @classmethod
    def basis_vector(cls, p: Pairing, n: int, k: int) -> GradedElement:
        return cls.from_element(Element.basis_vector(p, n, k))

    def part(self, n: int) -> Element:
        return self.parts.get(n) or Element.zero(n, self.context)

    def grades(self):
        return sorted(self.parts)

    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def _check_context(self, other: GradedElement):
        if self.context != other.context:
            raise ValueError(f"context mismatch: {self.context} vs {other.context}")

    def __add__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        self._check_context(other)
        out = dict(self.parts)
        for n, x in other.parts.items():
            out[n] = out[n] + x if n in out else x
        return GradedElement(self.context, out)

    def __neg__(self):
        return GradedElement(self.context, {n: -x for n, x in self.parts.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        try:
            scalar = Scalar.coerce(scalar)
        except TypeError:
            return NotImplemented
        return GradedElement(self.context, {n: x * scalar for n, x in self.parts.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.context == other.context and self.parts == other.parts

    __hash__ = None

    def to_dict(self) -> dict:
        return {"context": self.context, "parts": [self.parts[n].to_dict() for n in self.grades()]}

    @classmethod
    def from_dict(cls, data: dict) -> GradedElement:
        if "parts" not in data:
            x = Element.from_dict(data)
            return cls.from_element(x)
        try:
            k = int(data["context"])
            xs = [Element.from_dict(part) for part in data["parts"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graded element: {exc}") from exc
        return cls.from_elements(k, xs)

    def __str__(self):
        if not self.parts:
            return "0"
        return " + ".join(f"[{n}] {self.parts[n]}" for n in self.grades())

    def __repr__(self):
        return f"GradedElement(context={self.context}, grades={self.grades()})"


def as_graded(x) -> GradedElement:
    if isinstance(x, GradedElement):
        return x
    if isinstance(x, Element):
        return GradedElement.from_element(x)
    raise TypeError(f"expected an Element or GradedElement, got {type(x).__name__}")


@functools.lru_cache(maxsize=None)
def _contract(a: Tuple[int, ...], b: Tuple[int, ...], k: int, i: int) -> Tuple[Tuple[int, ...], int]:
    """Join a's right side to b's left side and a's rightmost i top points to b's leftmost i."""
    na, nb = len(a), len(b)
    m2, n2 = na - 2 * k, nb - 2 * k
    wires = [((0, na - j), (1, j - 1)) for j in range(1, k + 1)]
    wires += [((0, k + m2 - r - 1), (1, k + r)) for r in range(i)]
    outputs = ([(0, x) for x in range(k + m2 - i)]
               + [(1, x) for x in range(k + i, nb)])
    return glue([a, b], wires, outputs)


def _bilinear(a: GradedElement, b: GradedElement, contractions) -> GradedElement:
    a, b = as_graded(a), as_graded(b)
    a._check_context(b)
    k = a.context
    acc: Dict[int, Dict[Pairing, Scalar]] = {}
    for m, x in a.parts.items():
        for n, y in b.parts.items():
            for i in contractions(m, n):
                grade = m + n - i
                bucket = acc.setdefault(grade, {})
                for p, c in x.terms.items():
                    for q, d in y.terms.items():
                        seq, loops = _contract(p.seq, q.seq, k, i)
                        key = box(seq)
                        term = c * d * delta_power(loops) if loops else c * d
                        bucket[key] = bucket[key] + term if key in bucket else term
    return GradedElement(k, {n: Element(n, k, terms) for n, terms in acc.items()})


def star(a: GradedElement, b: GradedElement) -> GradedElement:
    """The Gr_k product: sum over i of the diagram contracting i adjacent top strands."""
    return _bilinear(a, b, lambda m, n: range(min(2 * m, 2 * n) + 1))


def bullet(a: GradedElement, b: GradedElement) -> GradedElement:
    """The Hr_k product: place side by side."""
    return _bilinear(a, b, lambda m, n: (0,))


def involution(a: GradedElement) -> GradedElement:
    a = as_graded(a)
    return GradedElement(a.context, {n: elements.involution(x) for n, x in a.parts.items()})


@functools.lru_cache(maxsize=None)
def _overlay_loops(p: Tuple[int, ...], q: Tuple[int, ...]) -> int:
    wires = [((0, i), (1, i)) for i in range(len(p))]
    _, loops = glue([p, q], wires, [])
    return loops


def inner_orth(a: GradedElement, b: GradedElement) -> Scalar:
    """<a,b>: grades are orthogonal; within a grade, overlay the diagrams and close everything."""
    a, b = as_graded(a), as_graded(b)
    a._check_context(b)
    k = a.context
    total = Scalar.zero()
    for n, x in a.parts.items():
        y = b.parts.get(n)
        if y is None:
            continue
        for p, c in x.terms.items():
            for q, d in y.terms.items():
                total = total + c * d * delta_power(_overlay_loops(p.seq, q.seq) - k)
    return total


@functools.lru_cache(maxsize=None)
def _closure_sum(seq: Tuple[int, ...], k: int) -> Scalar:
    """delta^-k times the sum over every TL diagram T capping the top of the box."""
    size = len(seq)
    top = size - 2 * k
    side = [((0, j), (0, size - 1 - j)) for j in range(k)]
    total = Scalar.zero()
    for t in enumerate_diagrams(top, 0):
        wires = side + [((0, k + p), (1, p)) for p in range(top)]
        _, loops = glue([seq, t.seq], wires, [])
        total = total + delta_power(loops - k)
    return total


def inner_gjs(a: GradedElement, b: GradedElement) -> Scalar:
    """<<a,b>>: close a juxtaposed with b* by every TL diagram on the top."""
    a, b = as_graded(a), as_graded(b)
    a._check_context(b)
    joined = bullet(a, involution(b))
    total = Scalar.zero()
    for x in joined.parts.values():
        for p, c in x.terms.items():
            total = total + c * _closure_sum(p.seq, a.context)
    return total


def trace(a: GradedElement) -> Scalar:
    """Markov trace of the grade 0 part."""
    a = as_graded(a)
    x = a.parts.get(0)
    return elements.closure(x) if x is not None else Scalar.zero()


def basis_elements(max_grade: int, k: int, min_grade: int = 0):
    for n in range(min_grade, max_grade + 1):
        for p in elements.basis(n, k):
            yield GradedElement.basis_vector(p, n, k)


def random_element(rng: random.Random, k: int, max_grade: int, terms: int = 3) -> GradedElement:
    """A few basis diagrams of grade <= max_grade with small Laurent coefficients."""
    out = GradedElement(k)
    for _ in range(terms):
        n = rng.randint(0, max_grade)
        diagrams = elements.basis(n, k)
        p = diagrams[rng.randrange(len(diagrams))]
        coeff = Scalar({rng.randint(-2, 2): rng.choice((-2, -1, 1, 2)), rng.randint(-2, 2): rng.randint(-1, 1)})
        out = out + GradedElement.from_element(Element.basis_vector(p, n, k, coeff))
    return out


def verify_associativity(M: int, k: int, samples: int = 100, seed: int = 0, sample_grade: int = 2) -> Report:
    """(a*b)*c = a*(b*c) on basis triples of grade sum <= M and on random combinations."""
    report = Report("associativity", {"M": M, "k": k, "samples": samples, "seed": seed})
    pool = list(basis_elements(M, k))
    for a in pool:
        for b in pool:
            if max(a.grades()) + max(b.grades()) > M:
                continue
            ab = star(a, b)
            for c in pool:
                if max(a.grades()) + max(b.grades()) + max(c.grades()) > M:
                    continue
                report.check({"a": a, "b": b, "c": c}, star(ab, c), star(a, star(b, c)))
    rng = random.Random(seed)
    for _ in range(samples):
        a, b, c = (random_element(rng, k, sample_grade) for _ in range(3))
        report.check({"a": a, "b": b, "c": c}, star(star(a, b), c), star(a, star(b, c)))
    logging.info("associativity: %d cases, %d failures", report.cases, len(report.failures))
    return report


def verify_star_structure(samples: int = 100, k: int = 1, seed: int = 0, max_grade: int = 2) -> Report:
    """Identities tying the involution and trace to the orthogonal inner product."""
    report = Report("star-structure", {"samples": samples, "k": k, "seed": seed})
    rng = random.Random(seed)
    for _ in range(samples):
        a, b, c = (random_element(rng, k, max_grade) for _ in range(3))
        pair = {"a": a, "b": b}
        report.check(dict(pair, identity="<a,b> = tr(a*b^)"), inner_orth(a, b), trace(star(a, involution(b))))
        report.check(dict(pair, identity="(a*b)^ = b^*a^"), involution(star(a, b)), star(involution(b), involution(a)))
        report.check(dict(pair, identity="(a.b)^ = b^.a^"), involution(bullet(a, b)), bullet(involution(b), involution(a)))
        report.check(dict(pair, identity="tr(a*b) = tr(b*a)"), trace(star(a, b)), trace(star(b, a)))
        report.check({"a": a, "b": b, "c": c, "identity": "<a*b,c> = <b,a^*c>"},
                     inner_orth(star(a, b), c), inner_orth(b, star(involution(a), c)))
    logging.info("star-structure: %d cases, %d failures", report.cases, len(report.failures))
    return report

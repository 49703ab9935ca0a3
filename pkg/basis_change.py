"""The change of basis X (all epi diagrams) and its inverse Y between Hr_k and Gr_k.

X sends a grade i diagram to the sum over j <= i of every epi diagram 2i -> 2j
glued on top; Y does the same with only the non-nested epi diagrams and the sign
(-1)^(i-j). X is a *-isomorphism from (Hr_k, bullet, <<,>>) onto (Gr_k, star, <,>).
"""
from __future__ import annotations

import functools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

import elements
from elements import Element
from graded import GradedElement, as_graded, basis_elements, bullet, inner_gjs, inner_orth, star
from models import Report
from scalar import Scalar
from tl import (
    Pairing,
    classify,
    compose,
    enumerate_diagrams,
    innermost_turnbacks,
    juxtapose,
    outermost_turnbacks,
)

KINDS = ("X", "Y")


@dataclass(frozen=True)
class BlockMapSpec:
    kind: str
    context: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.context < 0:
            raise ValueError("context must be nonnegative")

    @property
    def filter(self) -> str:
        return "epi" if self.kind == "X" else "non_nested_epi"

    def sign(self, i: int, j: int) -> int:
        if self.kind == "Y" and (i - j) % 2:
            return -1
        return 1


def block(spec: BlockMapSpec, i: int, j: int) -> Tuple[Pairing, ...]:
    """Diagrams of the (j, i) block; empty when j > i."""
    if j > i:
        return ()
    return enumerate_diagrams(2 * i, 2 * j, spec.filter)


@functools.lru_cache(maxsize=None)
def _image(spec: BlockMapSpec, p: Pairing, i: int) -> Dict[int, Element]:
    k = spec.context
    x = Element.basis_vector(p, i, k)
    out: Dict[int, Element] = {}
    for j in range(i + 1):
        part = elements.sum_elements((elements.apply_top(d, x) for d in block(spec, i, j)), j, k)
        if part:
            out[j] = part * spec.sign(i, j)
    return out


def apply(spec: BlockMapSpec, a: GradedElement) -> GradedElement:
    a = as_graded(a)
    if a.context != spec.context:
        raise ValueError(f"{spec.kind} acts in context {spec.context}, element has context {a.context}")
    acc: Dict[int, Dict[Pairing, Scalar]] = {}
    for i, x in a.parts.items():
        for p, c in x.terms.items():
            for j, y in _image(spec, p, i).items():
                bucket = acc.setdefault(j, {})
                for q, d in y.terms.items():
                    term = c * d
                    bucket[q] = bucket[q] + term if q in bucket else term
    k = spec.context
    return GradedElement(k, {j: Element(j, k, terms) for j, terms in acc.items()})


def X(a: GradedElement) -> GradedElement:
    a = as_graded(a)
    return apply(BlockMapSpec("X", a.context), a)


def Y(a: GradedElement) -> GradedElement:
    a = as_graded(a)
    return apply(BlockMapSpec("Y", a.context), a)


def verify_inverse(N: int, k: int) -> Report:
    report = Report("xy-inverse", {"N": N, "k": k})
    for a in basis_elements(N, k):
        report.check({"a": a, "identity": "X(Y(a)) = a"}, X(Y(a)), a)
        report.check({"a": a, "identity": "Y(X(a)) = a"}, Y(X(a)), a)
    logging.info("xy-inverse: %d cases, %d failures", report.cases, len(report.failures))
    return report


def _top_grade(a: GradedElement) -> int:
    return max(a.grades())


def verify_homomorphism(M: int, k: int) -> Report:
    report = Report("homomorphism", {"M": M, "k": k})
    pool = list(basis_elements(M, k))
    for a in pool:
        xa = X(a)
        for b in pool:
            if _top_grade(a) + _top_grade(b) > M:
                continue
            report.check({"a": a, "b": b}, X(bullet(a, b)), star(xa, X(b)))
    logging.info("homomorphism: %d cases, %d failures", report.cases, len(report.failures))
    return report


def verify_isometry(M: int, k: int) -> Report:
    report = Report("isometry", {"M": M, "k": k})
    pool = list(basis_elements(M, k))
    images = [X(a) for a in pool]
    for a, xa in zip(pool, images):
        for b, xb in zip(pool, images):
            if _top_grade(a) + _top_grade(b) > M:
                continue
            report.check({"a": a, "b": b}, inner_gjs(a, b), inner_orth(xa, xb))
    logging.info("isometry: %d cases, %d failures", report.cases, len(report.failures))
    return report


def verify_unitriangular(N: int, k: int) -> Report:
    """X(a) has no part above grade(a), and its top part is a itself."""
    report = Report("unitriangular", {"N": N, "k": k})
    for a in basis_elements(N, k):
        i = _top_grade(a)
        image = X(a)
        report.check({"a": a, "identity": "no higher grades"}, [n for n in image.grades() if n > i], [])
        report.check({"a": a, "identity": "diagonal block"}, image.part(i), a.part(i))
    return report


def verify_binomial_cancellation(imax: int) -> Report:
    """Regroup the XY and YX expansions of each epi diagram and check the counts are binomial.

    D = N.E (N non-nested below, E epi above) with p caps in N happens C(t, p) times,
    t the innermost turn-backs of D; for D = E.N with N above, t counts outermost ones.
    Either way the signed sum over p vanishes.
    """
    report = Report("binomial", {"imax": imax})
    for i in range(1, imax + 1):
        for j in range(i):
            targets = enumerate_diagrams(2 * i, 2 * j, "epi")
            below: Counter = Counter()
            above: Counter = Counter()
            for m in range(j, i + 1):
                for n in enumerate_diagrams(2 * i, 2 * m, "non_nested_epi"):
                    for e in enumerate_diagrams(2 * m, 2 * j, "epi"):
                        d, loops = compose(n, e)
                        if loops == 0:
                            below[(d, i - m)] += 1
                for e in enumerate_diagrams(2 * i, 2 * m, "epi"):
                    for n in enumerate_diagrams(2 * m, 2 * j, "non_nested_epi"):
                        d, loops = compose(e, n)
                        if loops == 0:
                            above[(d, m - j)] += 1
            for d in targets:
                t_in, t_out = innermost_turnbacks(d), outermost_turnbacks(d)
                got_in = [below[(d, p)] for p in range(i - j + 1)]
                got_out = [above[(d, p)] for p in range(i - j + 1)]
                want_in = [math.comb(t_in, p) for p in range(i - j + 1)]
                want_out = [math.comb(t_out, p) for p in range(i - j + 1)]
                report.check({"diagram": d.to_text(), "product": "XY"}, got_in, want_in)
                report.check({"diagram": d.to_text(), "product": "YX"}, got_out, want_out)
                report.check({"diagram": d.to_text(), "identity": "signed sum"},
                             sum((-1) ** p * c for p, c in enumerate(got_in)), 0)
                report.check({"diagram": d.to_text(), "identity": "signed sum, YX"},
                             sum((-1) ** p * c for p, c in enumerate(got_out)), 0)
    return report


def contraction(left: int, right: int, i: int) -> Pairing:
    """left + right bottom points; the i points either side of the split are capped in nested fashion."""
    bottom = left + right
    top = bottom - 2 * i
    seq = [-1] * (bottom + top)
    for r in range(i):
        a, b = left - 1 - r, left + r
        seq[a], seq[b] = b, a
    free = [x for x in range(bottom) if seq[x] == -1]
    for q, x in enumerate(free, start=1):
        t = bottom + top - q
        seq[x], seq[t] = t, x
    return Pairing(bottom, top, tuple(seq))


def verify_epi_splitting(total: int) -> Report:
    """Every epi diagram on 2(m+n) bottom points is T.(L|R) for exactly one epi L, R and contraction T."""
    report = Report("splitting", {"total": total})
    for size in range(total + 1):
        for m in range(size + 1):
            n = size - m
            made: Counter = Counter()
            for m2 in range(m + 1):
                for n2 in range(n + 1):
                    for left in enumerate_diagrams(2 * m, 2 * m2, "epi"):
                        for right in enumerate_diagrams(2 * n, 2 * n2, "epi"):
                            lr = juxtapose(left, right)
                            for i in range(min(2 * m2, 2 * n2) + 1):
                                d, loops = compose(lr, contraction(2 * m2, 2 * n2, i))
                                report.check({"m": m, "n": n, "diagram": d.to_text(), "identity": "epi, no loops"},
                                             (classify(d).is_epi, loops), (True, 0))
                                made[d] += 1
            for j in range(size + 1):
                for d in enumerate_diagrams(2 * size, 2 * j, "epi"):
                    report.check({"m": m, "n": n, "diagram": d.to_text()}, made[d], 1)
    return report


def x_matrix(max_grade: int, k: int):
    """The matrix of X on the diagram basis of grades <= max_grade, columns indexed by inputs."""
    labels = [(n, p) for n in range(max_grade + 1) for p in elements.basis(n, k)]
    index = {label: r for r, label in enumerate(labels)}
    columns = []
    for n, p in labels:
        image = X(GradedElement.basis_vector(p, n, k))
        col = [Scalar.zero()] * len(labels)
        for j, y in image.parts.items():
            for q, c in y.terms.items():
                col[index[(j, q)]] = c
        columns.append(col)
    rows = [[columns[c][r] for c in range(len(labels))] for r in range(len(labels))]
    return labels, rows

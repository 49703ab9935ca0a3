"""Structure of P_{n,k} as a bimodule over the cup: V_n, W_n, v_{p,q}, expectations, Jones projections."""
from __future__ import annotations

import functools
import logging
import random
from dataclasses import dataclass, field
from typing import List, Tuple

import elements
from elements import Element, build_cup, build_jones, build_xpq, cap, include
from graded import GradedElement, as_graded, inner_orth, involution, random_element, star, trace
from linalg import columns_to_rows, independent_columns, nullspace, rank
from models import Report
from scalar import S, Scalar, delta_power
from tl import catalan, glue


@dataclass
class Subspace:
    grade: int
    context: int
    basis: List[Element] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_dict(self) -> dict:
        return {"grade": self.grade, "context": self.context, "basis": [v.to_dict() for v in self.basis]}


def coordinates(x: Element) -> List[Scalar]:
    """Coefficients of x against the diagram basis of its P_{n,k}."""
    return [x.coefficient(p) for p in elements.basis(x.grade, x.context)]


def from_coordinates(values, n: int, k: int) -> Element:
    return Element(n, k, dict(zip(elements.basis(n, k), values)))


def vpq(v: Element, p: int, q: int) -> Element:
    return build_xpq(v, p, q)


def wn_basis(n: int, k: int) -> Subspace:
    """Basis of the span of x_{1,0}, x_{0,1} over the diagram basis x of P_{n-1,k}."""
    if n < 1:
        raise ValueError("W_n is defined for n >= 1")
    spanning = []
    for p in elements.basis(n - 1, k):
        x = Element.basis_vector(p, n - 1, k)
        spanning += [build_xpq(x, 1, 0), build_xpq(x, 0, 1)]
    keep = independent_columns(columns_to_rows([coordinates(x) for x in spanning]))
    return Subspace(n, k, [spanning[c] for c in keep])


@functools.lru_cache(maxsize=None)
def _vn_vectors(n: int, k: int) -> Tuple[Tuple[Scalar, ...], ...]:
    columns = []
    for p in elements.basis(n, k):
        x = Element.basis_vector(p, n, k)
        columns.append(coordinates(cap(x, "left")) + coordinates(cap(x, "right")))
    return tuple(tuple(v) for v in nullspace(columns_to_rows(columns), width=len(columns)))


def vn_basis(n: int, k: int) -> Subspace:
    """The elements killed by capping on either end of the top; all of P_{0,k} when n = 0."""
    if n == 0:
        return Subspace(0, k, [Element.basis_vector(p, 0, k) for p in elements.basis(0, k)])
    return Subspace(n, k, [from_coordinates(v, n, k) for v in _vn_vectors(n, k)])


def _shapes(limit: int):
    return [(p, q) for p in range(limit + 1) for q in range(limit + 1 - p)]


def verify_vn_orthogonality(n: int, k: int, limit: int = 3) -> Report:
    """<v_{p,q}, w_{p',q'}> is <v,w> when the data agree and 0 otherwise.

    Two vectors of P_{0,k} are skipped when their shapes differ: there v_{p,q}
    only depends on p + q.
    """
    report = Report("vpq", {"n": n, "k": k, "limit": limit})
    family = [(m, v) for m in range(n + 1) for v in vn_basis(m, k).basis]
    shapes = _shapes(limit)
    for m, v in family:
        for m2, w in family:
            base = inner_orth(v, w) if m == m2 else Scalar.zero()
            for p, q in shapes:
                left = vpq(v, p, q)
                for p2, q2 in shapes:
                    same = (m, p, q) == (m2, p2, q2)
                    if m == m2 == 0 and not same:
                        continue
                    if m + p + q != m2 + p2 + q2:
                        continue
                    expected = base if same else Scalar.zero()
                    report.check({"v": v, "w": w, "shape": [p, q], "other": [p2, q2]},
                                 inner_orth(left, vpq(w, p2, q2)), expected)
    logging.info("vpq: %d cases, %d failures", report.cases, len(report.failures))
    return report


def _v(v: Element, p: int, q: int) -> GradedElement:
    return as_graded(vpq(v, p, q))


def cup_left_expected(v: Element, p: int, q: int) -> GradedElement:
    if v.grade == 0:
        r = p + q
        if r == 0:
            return _v(v, 1, 0) * S
        return _v(v, r + 1, 0) * S + _v(v, r, 0) + _v(v, r - 1, 0) * S
    if p == 0:
        return _v(v, 1, q) * S + _v(v, 0, q)
    return _v(v, p + 1, q) * S + _v(v, p, q) + _v(v, p - 1, q) * S


def cup_right_expected(v: Element, p: int, q: int) -> GradedElement:
    if v.grade == 0:
        return cup_left_expected(v, p, q)
    if q == 0:
        return _v(v, p, 1) * S + _v(v, p, 0)
    return _v(v, p, q + 1) * S + _v(v, p, q) + _v(v, p, q - 1) * S


def verify_cup_action(n: int, k: int, pmax: int = 3, qmax: int = 3) -> Report:
    """Left and right star-multiplication by the cup on the v_{p,q} family of V_n."""
    report = Report("cup-action", {"n": n, "k": k, "pmax": pmax, "qmax": qmax})
    cup = as_graded(build_cup(k))
    for v in vn_basis(n, k).basis:
        for p in range(pmax + 1):
            for q in range(qmax + 1):
                x = as_graded(vpq(v, p, q))
                report.check({"v": v, "p": p, "q": q, "side": "left"},
                             star(cup, x), cup_left_expected(v, p, q))
                report.check({"v": v, "p": p, "q": q, "side": "right"},
                             star(x, cup), cup_right_expected(v, p, q))
    logging.info("cup-action: %d cases, %d failures", report.cases, len(report.failures))
    return report


def verify_spanning(nmax: int, k: int) -> Report:
    """The v_{p,q} span P_{n,k}, and V_n, W_n are complementary and orthogonal."""
    report = Report("spanning", {"nmax": nmax, "k": k})
    for n in range(nmax + 1):
        family = []
        for m in range(n + 1):
            for v in vn_basis(m, k).basis:
                family += [vpq(v, p, n - m - p) for p in range(n - m + 1)]
        got = rank(columns_to_rows([coordinates(x) for x in family])) if family else 0
        report.check({"n": n, "identity": "rank of v_{p,q}"}, got, catalan(n + k))
        if n == 0:
            continue
        vs, ws = vn_basis(n, k), wn_basis(n, k)
        report.check({"n": n, "identity": "dim V + dim W"}, vs.dimension + ws.dimension, catalan(n + k))
        for v in vs.basis:
            for w in ws.basis:
                report.check({"v": v, "w": w, "identity": "V orthogonal to W"}, inner_orth(v, w), Scalar.zero())
    return report


@functools.lru_cache(maxsize=None)
def _expect_basis(seq: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
    size = len(seq)
    return glue([seq], [((0, 0), (0, size - 1))], [(0, i) for i in range(1, size - 1)])


def conditional_expectation(x: GradedElement) -> GradedElement:
    """Close the lowest side strand around the bottom, weighted by 1/delta."""
    x = as_graded(x)
    if x.context == 0:
        raise ValueError("no side strand to close in context 0")
    k = x.context - 1
    weight = delta_power(-1)
    return GradedElement(k, {n: elements.linear_map(y, n, _expect_basis, context=k) * weight
                             for n, y in x.parts.items()})


def include_graded(x: GradedElement) -> GradedElement:
    x = as_graded(x)
    return GradedElement(x.context + 1, {n: include(y) for n, y in x.parts.items()})


def verify_expectation(k: int, samples: int = 20, seed: int = 0, max_grade: int = 1) -> Report:
    """E(i(a)) = a, tr(E(x)) = tr(x) and E(i(a) x i(b)) = a E(x) b on random elements."""
    report = Report("expectation", {"k": k, "samples": samples, "seed": seed})
    rng = random.Random(seed)
    for _ in range(samples):
        a, b = random_element(rng, k, max_grade), random_element(rng, k, max_grade)
        x = random_element(rng, k + 1, max_grade)
        report.check({"a": a, "identity": "E(i(a)) = a"}, conditional_expectation(include_graded(a)), a)
        report.check({"x": x, "identity": "tr(E(x)) = tr(x)"}, trace(conditional_expectation(x)), trace(x))
        report.check({"a": a, "b": b, "x": x, "identity": "bimodular"},
                     conditional_expectation(star(star(include_graded(a), x), include_graded(b))),
                     star(star(a, conditional_expectation(x)), b))
    return report


def verify_jones(kmax: int) -> Report:
    """Projection, trace and Temperley-Lieb relations of the e_i, and e x e = E(x) e."""
    if kmax < 2:
        raise ValueError("Jones projections need context at least 2")
    report = Report("jones", {"kmax": kmax})
    minus_two = delta_power(-2)
    for k in range(2, kmax + 1):
        es = {i: as_graded(build_jones(i, k)) for i in range(1, k)}
        for i, e in es.items():
            report.check({"k": k, "i": i, "identity": "e* = e"}, involution(e), e)
            report.check({"k": k, "i": i, "identity": "e e = e"}, star(e, e), e)
            report.check({"k": k, "i": i, "identity": "tr(e) = delta^-2"}, trace(e), minus_two)
            for j, f in es.items():
                if abs(i - j) == 1:
                    report.check({"k": k, "i": i, "j": j, "identity": "e f e = delta^-2 e"},
                                 star(star(e, f), e), e * minus_two)
                elif abs(i - j) >= 2:
                    report.check({"k": k, "i": i, "j": j, "identity": "e f = f e"}, star(e, f), star(f, e))
    e = as_graded(build_jones(1, 2))
    report.check({"identity": "E(e) = delta^-2"}, conditional_expectation(e), GradedElement.unit(1) * minus_two)
    for n in range(2):
        for p in elements.basis(n, 1):
            y = GradedElement.basis_vector(p, n, 1)
            lhs = star(star(e, include_graded(y)), e)
            rhs = star(include_graded(include_graded(conditional_expectation(y))), e)
            report.check({"x": y, "identity": "e x e = E(x) e"}, lhs, rhs)
    logging.info("jones: %d cases, %d failures", report.cases, len(report.failures))
    return report


def one_0n(n: int, k: int) -> GradedElement:
    return as_graded(build_xpq(Element.unit(k), 0, n))


def commutator_alpha(n: int, k: int) -> GradedElement:
    alpha = elements.build_alpha(k)
    one = one_0n(n, k)
    return star(alpha, one) - star(one, alpha)


def commutator_gram(nmax: int, k: int) -> List[List[Scalar]]:
    cs = [commutator_alpha(n, k) for n in range(1, nmax + 1)]
    return [[inner_orth(a, b) for b in cs] for a in cs]


def verify_commutator(nmax: int, k: int) -> Report:
    """The commutators [alpha, 1_{0,n}] have a tridiagonal Gram matrix.

    With c_1 = 1 and c_{n+1} = -s c_n the commutator of alpha with the partial
    sum of c_n 1_{0,n} up to N only has a part in grade N + 2.
    """
    report = Report("commutator", {"nmax": nmax, "k": k})
    report.check({"n": 0}, commutator_alpha(0, k), GradedElement(k))
    gram = commutator_gram(nmax, k)
    for m in range(nmax):
        report.check({"m": m + 1, "identity": "nonzero"}, gram[m][m].is_zero(), False)
        for n in range(nmax):
            if abs(m - n) >= 2:
                report.check({"m": m + 1, "n": n + 1, "identity": "tridiagonal"}, gram[m][n], Scalar.zero())
    alpha = elements.build_alpha(k)
    coeff = Scalar.one()
    partial = GradedElement(k)
    for n in range(1, nmax + 1):
        partial = partial + one_0n(n, k) * coeff
        bracket = star(alpha, partial) - star(partial, alpha)
        report.check({"N": n, "identity": "recursion support"}, bracket.grades(), [n + 2])
        coeff = -(S * coeff)
    report.data["gram"] = [[str(x) for x in row] for row in gram]
    logging.info("commutator: %d cases, %d failures", report.cases, len(report.failures))
    return report

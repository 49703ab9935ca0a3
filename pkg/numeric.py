"""Floating-point views of the exact algebra: Gram matrices, positivity, moments, norm probe."""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import pandas as pd

import elements
from basis_change import x_matrix
from elements import build_cup, diagram_text
from graded import GradedElement, as_graded, inner_gjs, inner_orth, star, trace
from models import Report
from scalar import S, Scalar

FORMS = ("orth", "gjs")


@dataclass
class GramMatrix:
    labels: List[str]
    entries: np.ndarray
    delta: float

    def to_dict(self) -> dict:
        return {"labels": self.labels, "delta": self.delta, "entries": self.entries.tolist()}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.entries, index=self.labels, columns=self.labels)


def _labelled_basis(n: int, k: int, form: str) -> List[Tuple[int, object]]:
    grades = [n] if form == "orth" else range(n + 1)
    return [(m, p) for m in grades for p in elements.basis(m, k)]


@functools.lru_cache(maxsize=None)
def exact_gram(n: int, k: int, form: str) -> Tuple[Tuple[str, ...], Tuple[Tuple[Scalar, ...], ...]]:
    """Exact Gram matrix: the diagram basis of P_{n,k} (orth) or of grades <= n (gjs)."""
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    pairing = inner_orth if form == "orth" else inner_gjs
    basis = _labelled_basis(n, k, form)
    vectors = [GradedElement.basis_vector(p, m, k) for m, p in basis]
    labels = tuple(f"{m}:{diagram_text(p, m, k)}" for m, p in basis)
    rows = tuple(tuple(pairing(a, b) for b in vectors) for a in vectors)
    return labels, rows


def evaluate_matrix(rows, s0: float) -> np.ndarray:
    return np.array([[x.evaluate(s0) for x in row] for row in rows], dtype=float).reshape(len(rows), len(rows))


def gram(n: int, k: int, form: str = "orth", s0: float = math.sqrt(2)) -> GramMatrix:
    if not s0 > 0:
        raise ValueError(f"s0 must be positive, got {s0}")
    labels, rows = exact_gram(n, k, form)
    return GramMatrix(list(labels), evaluate_matrix(rows, s0), s0 * s0)


def min_eigenvalue(g: GramMatrix, tol: float = 1e-12, max_sweeps: int = 100) -> float:
    """Smallest eigenvalue by cyclic Jacobi rotations."""
    a = np.array(g.entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > 1e-12 * scale:
        raise ValueError("Gram matrix is not symmetric")
    size = a.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum((a - np.diag(np.diag(a))) ** 2)))
        if off <= tol * scale:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                if abs(a[p, q]) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * col_p - s * col_q, s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * row_p - s * row_q, s * row_p + c * row_q
    else:
        logging.warning("Jacobi iteration did not converge in %d sweeps", max_sweeps)
    return float(np.min(np.diag(a)))


def cup_moment(m: int, k: int = 0) -> Scalar:
    """tr of the m-th star power of the cup."""
    cup = as_graded(build_cup(k))
    power = GradedElement.unit(k)
    for _ in range(m):
        power = star(cup, power)
    return trace(power)


def motzkin_moment(m: int) -> Scalar:
    """Weighted paths 0 -> 0 of length m: up and down weigh s, a level step weighs 1 off the floor."""
    levels = {0: Scalar.one()}
    for _ in range(m):
        nxt = {}
        for h, w in levels.items():
            moves = [(h + 1, w * S)]
            if h > 0:
                moves += [(h - 1, w * S), (h, w)]
            for target, weight in moves:
                nxt[target] = nxt[target] + weight if target in nxt else weight
        levels = nxt
    return levels.get(0, Scalar.zero())


def norm_probe(a: GradedElement, nmax: int, s0: float = math.sqrt(2)) -> List[float]:
    """Norm of left star-multiplication by a, compressed to grades <= N, for N = 1..nmax."""
    a = as_graded(a)
    k = a.context
    out = []
    for top in range(1, nmax + 1):
        labels = [(m, p) for m in range(top + 1) for p in elements.basis(m, k)]
        index = {label: r for r, label in enumerate(labels)}
        size = len(labels)
        coeffs = np.zeros((size, size))
        gram_matrix = np.zeros((size, size))
        for m in range(top + 1):
            _, rows = exact_gram(m, k, "orth")
            block = evaluate_matrix(rows, s0)
            start = index[(m, elements.basis(m, k)[0])]
            gram_matrix[start:start + block.shape[0], start:start + block.shape[0]] = block
        for col, (m, p) in enumerate(labels):
            image = star(a, GradedElement.basis_vector(p, m, k))
            for j, y in image.parts.items():
                if j > top:
                    continue
                for q, c in y.terms.items():
                    coeffs[index[(j, q)], col] = c.evaluate(s0)
        try:
            chol = np.linalg.cholesky(gram_matrix)
        except np.linalg.LinAlgError as exc:
            raise ValueError(f"Gram matrix is not positive definite at s = {s0}") from exc
        # coordinates x have norm |chol^T x|, so conjugate by chol^T
        operator = chol.T @ coeffs @ np.linalg.inv(chol.T)
        out.append(float(np.linalg.svd(operator, compute_uv=False)[0]))
    return out


def verify_moments(mmax: int, k: int = 0) -> Report:
    report = Report("moments", {"mmax": mmax, "k": k})
    for m in range(mmax + 1):
        report.check({"m": m}, cup_moment(m, k), motzkin_moment(m))
    logging.info("moments: %d cases, %d failures", report.cases, len(report.failures))
    return report


def verify_gram(n: int, k: int, s0: float = math.sqrt(2), tolerance: float = 1e-9) -> Report:
    """Positivity of both forms at s0, and the gjs Gram as the X-conjugate of the orth Grams.

    The report data also carries the cup norm probe up to grade n.
    """
    report = Report("gram", {"n": n, "k": k, "s0": s0})
    orth = gram(n, k, "orth", s0)
    gjs = gram(n, k, "gjs", s0)
    low_orth, low_gjs = min_eigenvalue(orth), min_eigenvalue(gjs)
    report.data.update({"min_eigenvalue_orth": low_orth, "min_eigenvalue_gjs": low_gjs, "delta": orth.delta})
    report.check({"form": "orth", "identity": "positive"}, low_orth >= -tolerance, True)
    report.check({"form": "gjs", "identity": "positive"}, low_gjs >= -tolerance, True)

    labels, rows = x_matrix(n, k)
    change = evaluate_matrix(rows, s0)
    joint = np.zeros_like(change)
    start = 0
    for m in range(n + 1):
        block = gram(m, k, "orth", s0).entries
        joint[start:start + block.shape[0], start:start + block.shape[0]] = block
        start += block.shape[0]
    conjugated = change.T @ joint @ change
    gap = float(np.max(np.abs(conjugated - gjs.entries))) if conjugated.size else 0.0
    report.data["conjugation_gap"] = gap
    report.check({"identity": "gjs = X^T orth X"}, gap <= tolerance * max(1.0, float(np.max(np.abs(gjs.entries)))), True)
    if n >= 1:
        try:
            report.data["cup_norm_probe"] = norm_probe(as_graded(build_cup(k)), n, s0)
        except ValueError as exc:
            logging.warning("gram: no norm probe at s0=%s (%s)", s0, exc)
    logging.info("gram: n=%d k=%d min eigenvalues %.3g / %.3g", n, k, low_orth, low_gjs)
    return report

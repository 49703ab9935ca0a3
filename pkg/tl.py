"""Temperley-Lieb diagrams as noncrossing matchings between the sides of a rectangle.

A diagram from b bottom points to t top points is stored, like a crossingless
matching, as an involution `seq` on [0, b+t) read in circular order: indices
[0, b) are B1..Bb left to right, and index b + j is the top point T(t - j), so the
top is read right to left. The matching is noncrossing iff this sequence is a
balanced bracket word.

Every tangle operation in the package reduces to `glue`: take some matchings,
wire some of their points together and trace strands to the points left free.
"""
from __future__ import annotations

import functools
import logging
import math
import re
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

from config import LimitExceeded, get_max_points

Point = Tuple[int, int]


def is_noncrossing_matching(seq: Sequence[int]) -> bool:
    """True if seq is a fixed-point-free involution whose arcs do not interleave."""
    n = len(seq)
    if not all(0 <= seq[i] < n and seq[i] != i and seq[seq[i]] == i for i in range(n)):
        return False
    stack = []
    for i in range(n):
        if i < seq[i]:
            stack.append(seq[i])
        elif not stack or stack.pop() != i:
            return False
    return True


def glue(components: Sequence[Sequence[int]], wires: Iterable[Tuple[Point, Point]],
         outputs: Sequence[Point]) -> Tuple[Tuple[int, ...], int]:
    """Trace strands through wired matchings.

    components are matchings (involutions); a point is (component, index). Every
    point is either wired to exactly one other point or listed in `outputs`.
    Returns the matching induced on the outputs (indexed by their position in
    `outputs`) and the number of closed loops.
    """
    offsets = []
    total = 0
    for comp in components:
        offsets.append(total)
        total += len(comp)
    partner = [0] * total
    for c, comp in enumerate(components):
        off = offsets[c]
        for i, j in enumerate(comp):
            partner[off + i] = off + j

    wire = [-1] * total
    for (c1, i1), (c2, i2) in wires:
        g1, g2 = offsets[c1] + i1, offsets[c2] + i2
        if wire[g1] != -1 or wire[g2] != -1:
            raise ValueError(f"point wired twice: {(c1, i1)} or {(c2, i2)}")
        wire[g1], wire[g2] = g2, g1

    out_pos = [-1] * total
    for k, (c, i) in enumerate(outputs):
        g = offsets[c] + i
        if wire[g] != -1:
            raise ValueError(f"output point {(c, i)} is also wired")
        out_pos[g] = k

    visited = [False] * total
    result = [-1] * len(outputs)
    for k, (c, i) in enumerate(outputs):
        if result[k] != -1:
            continue
        cur = offsets[c] + i
        visited[cur] = True
        while True:
            nxt = partner[cur]
            visited[nxt] = True
            if out_pos[nxt] != -1:
                break
            cur = wire[nxt]
            if cur == -1:
                raise ValueError("dangling point: neither wired nor an output")
            visited[cur] = True
        result[k] = out_pos[nxt]
        result[out_pos[nxt]] = k

    loops = 0
    for g in range(total):
        if visited[g]:
            continue
        loops += 1
        cur = g
        while not visited[cur]:
            visited[cur] = True
            nxt = partner[cur]
            visited[nxt] = True
            cur = wire[nxt]
            if cur == -1:
                raise ValueError("dangling point: neither wired nor an output")
    return tuple(result), loops


@dataclass(frozen=True, order=True)
class Pairing:
    """A TL diagram from bottom_count points to top_count points."""

    bottom_count: int
    top_count: int
    seq: Tuple[int, ...]

    def __post_init__(self):
        if self.bottom_count < 0 or self.top_count < 0:
            raise ValueError("point counts must be nonnegative")
        if len(self.seq) != self.bottom_count + self.top_count:
            raise ValueError(f"matching has {len(self.seq)} entries for {self.bottom_count}+{self.top_count} points")

    @property
    def size(self) -> int:
        return self.bottom_count + self.top_count

    def label(self, index: int) -> str:
        if index < self.bottom_count:
            return f"B{index + 1}"
        return f"T{self.size - index}"

    def index(self, label: str) -> int:
        m = re.fullmatch(r"([BT])(\d+)", label.strip())
        if not m:
            raise ValueError(f"bad point label {label!r}")
        side, num = m.group(1), int(m.group(2))
        if side == "B" and 1 <= num <= self.bottom_count:
            return num - 1
        if side == "T" and 1 <= num <= self.top_count:
            return self.size - num
        raise ValueError(f"label {label!r} out of range for {self.bottom_count}→{self.top_count}")

    def pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.seq) if i < j]

    @classmethod
    def from_pairs(cls, bottom_count: int, top_count: int, pairs: Iterable[Tuple[str, str]]) -> Pairing:
        """Build from labelled pairs; checks the perfect-matching shape but not planarity."""
        probe = cls(bottom_count, top_count, tuple(range(bottom_count + top_count)))
        seq = [-1] * probe.size
        for a, b in pairs:
            i, j = probe.index(a), probe.index(b)
            if i == j or seq[i] != -1 or seq[j] != -1:
                raise ValueError(f"point used twice in pair ({a},{b})")
            seq[i], seq[j] = j, i
        if -1 in seq:
            raise ValueError("not a perfect matching: some points are unmatched")
        return cls(bottom_count, top_count, tuple(seq))

    def to_text(self) -> str:
        body = ",".join(f"({self.label(i)},{self.label(j)})" for i, j in self.pairs())
        return f"{self.bottom_count}→{self.top_count}:{{{body}}}"

    @classmethod
    def from_text(cls, text: str) -> Pairing:
        m = re.fullmatch(r"\s*(\d+)\s*(?:→|->)\s*(\d+)\s*:\s*\{(.*)\}\s*", text)
        if not m:
            raise ValueError(f"malformed pairing {text!r}")
        pairs = re.findall(r"\(\s*(\w+)\s*,\s*(\w+)\s*\)", m.group(3))
        return cls.from_pairs(int(m.group(1)), int(m.group(2)), pairs)

    def __str__(self):
        return self.to_text()


def validate(p: Pairing) -> bool:
    return p.size % 2 == 0 and is_noncrossing_matching(p.seq)


def identity(n: int) -> Pairing:
    return Pairing(n, n, tuple(2 * n - 1 - i for i in range(2 * n)))


def cap_at(n: int, position: int) -> Pairing:
    """n bottom points to n - 2 top points, capping B(position), B(position+1)."""
    if not 1 <= position < n:
        raise ValueError(f"no adjacent pair at B{position} among {n} points")
    bottom = [q for q in range(n) if q not in (position - 1, position)]
    top_count = n - 2
    seq = [-1] * (n + top_count)
    seq[position - 1], seq[position] = position, position - 1
    for r, q in enumerate(bottom):
        t = n + top_count - 1 - r
        seq[q], seq[t] = t, q
    return Pairing(n, top_count, tuple(seq))


def compose(lower: Pairing, upper: Pairing) -> Tuple[Pairing, int]:
    """Stack upper on top of lower, returning the diagram and the number of closed loops."""
    if lower.top_count != upper.bottom_count:
        raise ValueError(f"cannot stack {upper.bottom_count}-point bottom on {lower.top_count}-point top")
    b, m, t = lower.bottom_count, lower.top_count, upper.top_count
    wires = [((0, b + m - p), (1, p - 1)) for p in range(1, m + 1)]
    outputs = [(0, i) for i in range(b)] + [(1, m + j) for j in range(t)]
    seq, loops = glue([lower.seq, upper.seq], wires, outputs)
    return Pairing(b, t, seq), loops


def juxtapose(left: Pairing, right: Pairing) -> Pairing:
    """Place two diagrams side by side, right's labels shifted past left's."""
    bl, tl_ = left.bottom_count, left.top_count
    br, tr = right.bottom_count, right.top_count
    outputs = ([(0, i) for i in range(bl)] + [(1, i) for i in range(br)]
               + [(1, br + j) for j in range(tr)] + [(0, bl + j) for j in range(tl_)])
    seq, _ = glue([left.seq, right.seq], [], outputs)
    return Pairing(bl + br, tl_ + tr, seq)


def adjoint(p: Pairing) -> Pairing:
    """Reflect top and bottom, keeping left-right order."""
    n = p.size
    return Pairing(p.top_count, p.bottom_count, tuple(n - 1 - p.seq[n - 1 - i] for i in range(n)))


class Classification(NamedTuple):
    is_epi: bool
    is_monic: bool
    is_non_nested_epi: bool


def classify(p: Pairing) -> Classification:
    b = p.bottom_count
    epi = all(p.seq[i] < b for i in range(b, p.size))
    monic = all(p.seq[i] >= b for i in range(b))
    non_nested = epi and all(abs(p.seq[i] - i) == 1 for i in range(b) if p.seq[i] < b)
    return Classification(epi, monic, non_nested)


def bottom_caps(p: Pairing) -> List[Tuple[int, int]]:
    b = p.bottom_count
    return [(i, p.seq[i]) for i in range(b) if i < p.seq[i] < b]


def innermost_turnbacks(p: Pairing) -> int:
    """Bottom caps enclosing no other bottom cap; in a planar diagram these are the adjacent ones."""
    return sum(1 for i, j in bottom_caps(p) if j == i + 1)


def outermost_turnbacks(p: Pairing) -> int:
    """Bottom caps not enclosed by any other bottom cap."""
    caps = bottom_caps(p)
    return sum(1 for i, j in caps if not any(a < i and j < b for a, b in caps))


def factorize(p: Pairing) -> Tuple[Pairing, Pairing]:
    """The unique epi-then-monic factorization through the through-strands."""
    b, t = p.bottom_count, p.top_count
    through = [i for i in range(b) if p.seq[i] >= b]
    m = len(through)

    epi = [-1] * (b + m)
    for i in range(b):
        if p.seq[i] < b:
            epi[i] = p.seq[i]
    for r, i in enumerate(through):
        mid = b + m - 1 - r
        epi[i], epi[mid] = mid, i

    monic = [-1] * (m + t)
    for r, i in enumerate(through):
        top = p.seq[i] - b + m
        monic[r], monic[top] = top, r
    for i in range(b, b + t):
        if p.seq[i] >= b:
            monic[i - b + m] = p.seq[i] - b + m
    return Pairing(b, m, tuple(epi)), Pairing(m, t, tuple(monic))


def _matchings(n: int) -> List[Tuple[int, ...]]:
    """All noncrossing matchings of n points, recursing on the partner of the first point."""
    if n == 0:
        return [()]
    out = []
    for j in range(1, n, 2):
        for inner in _matchings(j - 1):
            for outer in _matchings(n - j - 1):
                seq = [0] * n
                seq[0], seq[j] = j, 0
                for a, x in enumerate(inner):
                    seq[a + 1] = x + 1
                for a, x in enumerate(outer):
                    seq[j + 1 + a] = x + j + 1
                out.append(tuple(seq))
    return out


FILTERS = ("all", "epi", "non_nested_epi")


@functools.lru_cache(maxsize=None)
def enumerate_diagrams(b: int, t: int, filter: str = "all") -> Tuple[Pairing, ...]:
    """Every valid diagram b→t passing the filter, in lexicographic order of the matching."""
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; expected one of {FILTERS}")
    if b < 0 or t < 0 or (b + t) % 2:
        raise ValueError(f"no diagrams from {b} to {t} points")
    limit = get_max_points()
    if b + t > limit:
        raise LimitExceeded(f"{b}+{t} points exceeds the enumeration limit {limit}")
    found = []
    for seq in sorted(_matchings(b + t)):
        p = Pairing(b, t, seq)
        if filter == "all":
            found.append(p)
            continue
        cls = classify(p)
        if (filter == "epi" and cls.is_epi) or (filter == "non_nested_epi" and cls.is_non_nested_epi):
            found.append(p)
    logging.debug("enumerated %d diagrams %d→%d (%s)", len(found), b, t, filter)
    return tuple(found)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _involutions(n: int):
    """Every fixed-point-free involution of n points, planar or not."""
    if n % 2:
        return
    seq = [-1] * n

    def fill(start):
        while start < n and seq[start] != -1:
            start += 1
        if start == n:
            yield tuple(seq)
            return
        for j in range(start + 1, n):
            if seq[j] == -1:
                seq[start], seq[j] = j, start
                yield from fill(start + 1)
                seq[start] = seq[j] = -1

    yield from fill(0)


def brute_force_diagrams(b: int, t: int, filter: str = "all") -> Tuple[Pairing, ...]:
    """Diagrams b→t found by testing every involution with validate; independent of enumerate_diagrams."""
    found = []
    for seq in _involutions(b + t):
        p = Pairing(b, t, seq)
        if not validate(p):
            continue
        if filter == "all" or getattr(classify(p), f"is_{filter}"):
            found.append(p)
    return tuple(sorted(found))


def verify_counts(pmax: int = 6, ijmax: int = 6, factor_max: int = 12):
    """Enumeration sizes, filters against brute force, and factorization round trips."""
    from models import Report

    report = Report("counts", {"pmax": pmax, "ijmax": ijmax, "factor_max": factor_max})
    for p in range(pmax + 1):
        report.check({"points": 2 * p, "identity": "catalan"}, len(enumerate_diagrams(2 * p, 0)), catalan(p))
    for total in range(ijmax + 1):
        for i in range(total + 1):
            j = total - i
            for name in FILTERS:
                brute = brute_force_diagrams(2 * i, 2 * j, name)
                report.check({"b": 2 * i, "t": 2 * j, "filter": name}, enumerate_diagrams(2 * i, 2 * j, name), brute)
    for size in range(0, factor_max + 1, 2):
        for b in range(size + 1):
            for d in enumerate_diagrams(b, size - b):
                epi, monic = factorize(d)
                case = {"diagram": d.to_text()}
                report.check(dict(case, identity="round trip"), compose(epi, monic), (d, 0))
                report.check(dict(case, identity="epi then monic"),
                             (classify(epi).is_epi, classify(monic).is_monic), (True, True))
                report.check(dict(case, identity="adjoint swaps epi and monic"),
                             classify(adjoint(d)).is_monic, classify(d).is_epi)
    logging.info("counts: %d cases, %d failures", report.cases, len(report.failures))
    return report

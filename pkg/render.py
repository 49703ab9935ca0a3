"""Drawings of TL diagrams and of the terms of an Element, as text or SVG."""
from __future__ import annotations

import io
from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Arc, PathPatch, Rectangle  # noqa: E402
from matplotlib.path import Path  # noqa: E402

from config import LimitExceeded, get_render_max_points  # noqa: E402
from elements import Element  # noqa: E402
from tl import Pairing  # noqa: E402

FORMATS = ("ascii", "svg")
SPACING = 4


def unfold(p: Pairing, n: int, k: int) -> Pairing:
    """A box diagram of P_{n,k} as a 2k -> 2n diagram: bottom Lk..L1 R1..Rk, top T1..T2n."""
    size = 2 * (n + k)

    def to_box(i):
        if i < k:
            return k - 1 - i
        if i < 2 * k:
            return size - (i - k + 1)
        return k + 2 * n - (i - 2 * k) - 1

    forward = [to_box(i) for i in range(size)]
    back = {b: i for i, b in enumerate(forward)}
    return Pairing(2 * k, 2 * n, tuple(back[p.seq[forward[i]]] for i in range(size)))


def box_labels(n: int, k: int) -> Tuple[List[str], List[str]]:
    bottom = [f"L{k - i}" for i in range(k)] + [f"R{i + 1}" for i in range(k)]
    top = [f"T{j + 1}" for j in range(2 * n)]
    return bottom, top


def _check_size(p: Pairing):
    limit = get_render_max_points()
    if p.size > limit:
        raise LimitExceeded(f"{p.size} points exceeds the render limit {limit}")


def _arcs(p: Pairing):
    """Top caps, bottom caps (as pairs of left-to-right positions) and through strands (bottom, top)."""
    b = p.bottom_count
    top_pos = lambda i: p.size - 1 - i  # noqa: E731
    top_caps, bottom_caps, through = [], [], []
    for i, j in p.pairs():
        if j < b:
            bottom_caps.append((i, j))
        elif i >= b:
            top_caps.append(tuple(sorted((top_pos(i), top_pos(j)))))
        else:
            through.append((i, top_pos(j)))
    return sorted(top_caps), sorted(bottom_caps), sorted(through)


def _levels(caps: Sequence[Tuple[int, int]]) -> Dict[Tuple[int, int], int]:
    """1 for caps enclosing nothing, otherwise one more than the deepest enclosed cap."""
    levels: Dict[Tuple[int, int], int] = {}
    for cap in sorted(caps, key=lambda c: c[1] - c[0]):
        inner = [levels[c] for c in levels if cap[0] < c[0] and c[1] < cap[1]]
        levels[cap] = 1 + max(inner, default=0)
    return levels


def render_ascii(p: Pairing, bottom_labels: Optional[List[str]] = None, top_labels: Optional[List[str]] = None) -> str:
    _check_size(p)
    b, t = p.bottom_count, p.top_count
    bottom_labels = bottom_labels or [f"B{i + 1}" for i in range(b)]
    top_labels = top_labels or [f"T{j + 1}" for j in range(t)]
    top_caps, bottom_caps, through = _arcs(p)
    top_levels, bottom_levels = _levels(top_caps), _levels(bottom_caps)
    top_depth = max(top_levels.values(), default=0)
    bottom_depth = max(bottom_levels.values(), default=0)

    # strands moving right jog higher the further left they start; left-movers the reverse
    right = sorted([s for s in through if s[1] > s[0]], key=lambda s: s[0])
    left = sorted([s for s in through if s[1] < s[0]], key=lambda s: -s[0])
    jogs = right + left
    middle = max(1, len(jogs))

    width = SPACING * max(b, t, 1) + 3
    height = 2 + top_depth + middle + bottom_depth + 2
    grid = [[" "] * width for _ in range(height)]
    x = lambda i: 2 + SPACING * i  # noqa: E731
    top_border, bottom_border = 1, height - 2
    first_mid = top_border + top_depth + 1

    def put(r, c, ch):
        grid[r][c] = ch

    def vline(c, r0, r1):
        for r in range(min(r0, r1), max(r0, r1) + 1):
            if grid[r][c] == " ":
                put(r, c, "|")

    def hline(r, c0, c1):
        for c in range(min(c0, c1) + 1, max(c0, c1)):
            put(r, c, "-")
        put(r, c0, "+")
        put(r, c1, "+")

    for r in range(top_border, bottom_border + 1):
        put(r, 0, "|")
        put(r, width - 1, "|")
    for c in range(width):
        put(top_border, c, "-")
        put(bottom_border, c, "-")
    for r in (top_border, bottom_border):
        put(r, 0, "+")
        put(r, width - 1, "+")

    for (a, c), level in top_levels.items():
        row = top_border + level
        hline(row, x(a), x(c))
        vline(x(a), top_border + 1, row - 1)
        vline(x(c), top_border + 1, row - 1)
    for (a, c), level in bottom_levels.items():
        row = bottom_border - level
        hline(row, x(a), x(c))
        vline(x(a), row + 1, bottom_border - 1)
        vline(x(c), row + 1, bottom_border - 1)
    for bottom, top in through:
        if bottom == top:
            vline(x(top), top_border + 1, bottom_border - 1)
    for r, (bottom, top) in enumerate(jogs):
        row = first_mid + r
        hline(row, x(top), x(bottom))
        vline(x(top), top_border + 1, row - 1)
        vline(x(bottom), row + 1, bottom_border - 1)

    for j in range(t):
        put(top_border, x(j), "o")
    for i in range(b):
        put(bottom_border, x(i), "o")

    def label_row(labels, count):
        row = [" "] * (width + 2)
        for i in range(count):
            text = labels[i]
            start = max(0, x(i) - len(text) // 2)
            for offset, ch in enumerate(text):
                if start + offset < len(row):
                    row[start + offset] = ch
        return "".join(row).rstrip()

    lines = [label_row(top_labels, t)]
    lines += ["".join(row).rstrip() for row in grid[1:height - 1]]
    lines.append(label_row(bottom_labels, b))
    return "\n".join(lines) + "\n"


def render_svg(p: Pairing, bottom_labels: Optional[List[str]] = None, top_labels: Optional[List[str]] = None) -> str:
    _check_size(p)
    b, t = p.bottom_count, p.top_count
    bottom_labels = bottom_labels or [f"B{i + 1}" for i in range(b)]
    top_labels = top_labels or [f"T{j + 1}" for j in range(t)]
    top_caps, bottom_caps, through = _arcs(p)
    width = max(b, t, 1) + 1.0
    height = 3.0

    plt.rcParams["svg.hashsalt"] = "tl-graded"
    plt.rcParams["svg.fonttype"] = "none"
    fig, ax = plt.subplots(figsize=(width, height))
    ax.add_patch(Rectangle((0, 0), width, height, fill=False, linewidth=1.0))
    bx = lambda i: 1.0 + i  # noqa: E731

    for a, c in top_caps:
        span = bx(c) - bx(a)
        ax.add_patch(Arc(((bx(a) + bx(c)) / 2, height), span, min(span, height), theta1=180, theta2=360, linewidth=1.5))
    for a, c in bottom_caps:
        span = bx(c) - bx(a)
        ax.add_patch(Arc(((bx(a) + bx(c)) / 2, 0), span, min(span, height), theta1=0, theta2=180, linewidth=1.5))
    for bottom, top in through:
        verts = [(bx(bottom), 0), (bx(bottom), height / 2), (bx(top), height / 2), (bx(top), height)]
        codes = [Path.MOVETO, Path.CURVE4, Path.CURVE4, Path.CURVE4]
        ax.add_patch(PathPatch(Path(verts, codes), fill=False, linewidth=1.5))

    for i in range(b):
        ax.plot([bx(i)], [0], "o", color="black", markersize=3)
        ax.text(bx(i), -0.25, bottom_labels[i], ha="center", va="top", fontsize=8)
    for j in range(t):
        ax.plot([bx(j)], [height], "o", color="black", markersize=3)
        ax.text(bx(j), height + 0.25, top_labels[j], ha="center", va="bottom", fontsize=8)

    ax.set_xlim(-0.5, width + 0.5)
    ax.set_ylim(-0.8, height + 0.8)
    ax.set_aspect("equal")
    ax.axis("off")
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def render_pairing(p: Pairing, fmt: str = "ascii", **labels) -> str:
    if fmt == "ascii":
        return render_ascii(p, **labels)
    if fmt == "svg":
        return render_svg(p, **labels)
    raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")


def render_element(x: Element, fmt: str = "ascii") -> str:
    """Each term as its coefficient followed by the unfolded box diagram."""
    bottom, top = box_labels(x.grade, x.context)
    if fmt == "svg":
        if len(x.terms) != 1:
            raise ValueError("svg output draws a single diagram; pass an element with one term")
        (p, _), = x.terms.items()
        return render_svg(unfold(p, x.grade, x.context), bottom_labels=bottom, top_labels=top)
    if fmt != "ascii":
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    if not x.terms:
        return "0\n"
    chunks = []
    for p, c in x.items():
        chunks.append(f"({c}) *\n" + render_ascii(unfold(p, x.grade, x.context), bottom_labels=bottom, top_labels=top))
    return "\n".join(chunks)

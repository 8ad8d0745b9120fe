"""Partial harmonious colorings: incremental state, verification, lower
bounds, and the closed-form color-count predictor for tall forests.

A harmonious coloring is a proper vertex coloring in which each unordered
pair of colors appears on at most one edge. The predictor covers forests
whose maximum degree D satisfies 3D >= n+2: the optimum is D+2 when two
non-adjacent maximum-degree vertices exist and D+1 otherwise.
"""

from __future__ import annotations

from math import isqrt

from .forest import Forest


class ColorConflict(Exception):
    """An assignment would repeat a color pair or violate properness."""

    def __init__(self, vertex, color, pair):
        self.vertex = vertex
        self.color = color
        self.pair = pair  # offending unordered color pair (a, b), a <= b
        super().__init__(f"vertex {vertex} color {color} reuses pair {pair}")


class TheoremPreconditionError(ValueError):
    """The forest is not tall enough for the predictor (3D < n+2).

    slack is 3D - (n+2), negative exactly when the precondition fails.
    """

    def __init__(self, slack: int):
        self.slack = slack
        super().__init__(f"precondition 3*maxdeg >= n+2 unmet (slack {slack})")


class PartialColoring:
    """A palette size k and an optional color (< k) per vertex."""

    __slots__ = ("k", "colors")

    def __init__(self, n: int, k: int, colors=None):
        if k < 0:
            raise ValueError("palette size must be non-negative")
        self.k = k
        if colors is None:
            self.colors = [None] * n
        else:
            colors = list(colors)
            if len(colors) != n:
                raise ValueError("color list length does not match vertex count")
            for c in colors:
                if c is not None and not 0 <= c < k:
                    raise ValueError(f"color {c} outside palette of size {k}")
            self.colors = colors

    @property
    def n(self) -> int:
        return len(self.colors)

    def is_total(self) -> bool:
        return all(c is not None for c in self.colors)

    def assigned_count(self) -> int:
        return sum(1 for c in self.colors if c is not None)

    def distinct_colors(self) -> int:
        return len({c for c in self.colors if c is not None})

    def copy(self) -> "PartialColoring":
        return PartialColoring(self.n, self.k, self.colors)

    def __eq__(self, other):
        return (
            isinstance(other, PartialColoring)
            and self.k == other.k
            and self.colors == other.colors
        )

    def __repr__(self):
        return f"PartialColoring(n={self.n}, k={self.k}, assigned={self.assigned_count()})"


class ColorState:
    """Bookkeeping for incremental harmonious extension.

    degree_sum[a] is the sum of full tree degrees over vertices colored a;
    used_pairs holds each unordered color pair consumed by a bichromatic
    edge, keyed as (min, max). Both are exactly reproducible from the
    coloring via from_coloring, and assign keeps them in lockstep.
    """

    __slots__ = ("k", "degree_sum", "used_pairs")

    def __init__(self, k: int):
        self.k = k
        self.degree_sum = [0] * k
        self.used_pairs: set = set()

    @classmethod
    def from_coloring(cls, f: Forest, c: PartialColoring) -> "ColorState":
        state = cls(c.k)
        cols = c.colors
        for v in range(f.n):
            a = cols[v]
            if a is not None:
                state.degree_sum[a] += f.degrees[v]
        for u, v in f.edges():
            a, b = cols[u], cols[v]
            if a is None or b is None:
                continue
            if a == b:
                raise ColorConflict(v, b, (a, b))
            pair = (a, b) if a < b else (b, a)
            if pair in state.used_pairs:
                raise ColorConflict(v, b, pair)
            state.used_pairs.add(pair)
        return state

    def copy(self) -> "ColorState":
        fresh = ColorState(self.k)
        fresh.degree_sum = list(self.degree_sum)
        fresh.used_pairs = set(self.used_pairs)
        return fresh

    def __eq__(self, other):
        return (
            isinstance(other, ColorState)
            and self.k == other.k
            and self.degree_sum == other.degree_sum
            and self.used_pairs == other.used_pairs
        )

    def __repr__(self):
        return f"ColorState(k={self.k}, pairs={len(self.used_pairs)})"


def assign(f: Forest, c: PartialColoring, state: ColorState, v: int, color: int):
    """Color v, updating state incrementally; all-or-nothing on conflict.

    Rejects (ColorConflict, state untouched) when a colored neighbor already
    has this color or any neighbor edge would reuse a consumed pair.
    """
    if c.colors[v] is not None:
        raise ValueError(f"vertex {v} is already colored")
    if not 0 <= color < c.k:
        raise ValueError(f"color {color} outside palette of size {c.k}")
    new_pairs = []
    local = set()
    for u in f.adjacency[v]:
        b = c.colors[u]
        if b is None:
            continue
        if b == color:
            raise ColorConflict(v, color, (color, color))
        pair = (color, b) if color < b else (b, color)
        if pair in state.used_pairs or pair in local:
            raise ColorConflict(v, color, pair)
        local.add(pair)
        new_pairs.append(pair)
    c.colors[v] = color
    state.degree_sum[color] += f.degrees[v]
    state.used_pairs.update(new_pairs)
    return state


def is_harmonious(f: Forest, c: PartialColoring) -> bool:
    """True iff the total coloring is proper with no repeated color pair."""
    cols = c.colors
    for v in range(f.n):
        if cols[v] is None:
            raise ValueError(f"vertex {v} is uncolored")
    seen = set()
    for u, v in f.edges():
        a, b = cols[u], cols[v]
        if a == b:
            return False
        pair = (a, b) if a < b else (b, a)
        if pair in seen:
            return False
        seen.add(pair)
    return True


def lower_bound_degree(f: Forest) -> int:
    """Every graph needs 1 + maxdeg colors (0 vertices need 0, edgeless need 1)."""
    if f.n == 0:
        return 0
    return f.max_degree() + 1


def _nonadjacent_pair_of_degree(f: Forest, k: int) -> bool:
    """Two non-adjacent vertices of degree k (k >= 1)?

    Three vertices of equal degree in a forest always contain a non-adjacent
    pair (no triangles), so only the two-vertex case needs an adjacency look.
    """
    if k < 1:
        return False
    hits = [v for v in range(f.n) if f.degrees[v] == k]
    if len(hits) < 2:
        return False
    if len(hits) > 2:
        return True
    a, b = hits
    return b not in f.adjacency[a]


def lower_bound_nonadjacent(f: Forest) -> int:
    """Best bound from non-adjacent same-degree pairs, combined with degree+1.

    A pair of non-adjacent degree-k vertices (k >= 1) forces k+2 colors: with
    only k+1 the two would share a color class whose incident pairs collide.
    Checked for every degree value, not just the maximum.
    """
    best = lower_bound_degree(f)
    for k in set(f.degrees):
        if k >= 1 and k + 2 > best and _nonadjacent_pair_of_degree(f, k):
            best = k + 2
    return best


def lower_bound_pairs(f: Forest) -> int:
    """Smallest h with h(h-1)/2 >= edge count (each edge burns one pair)."""
    m = f.edge_count
    if m == 0:
        return 0
    h = (1 + isqrt(1 + 8 * m)) // 2
    while h * (h - 1) // 2 < m:
        h += 1
    return h


def predict_h(f: Forest) -> int:
    """Exact optimum for tall forests, in closed form.

    Requires 3*maxdeg >= n+2 (integer arithmetic; raises with the slack
    otherwise). Answer: maxdeg+2 when two non-adjacent maximum-degree
    vertices exist, else maxdeg+1.
    """
    d = f.max_degree()
    slack = 3 * d - (f.n + 2)
    if slack < 0:
        raise TheoremPreconditionError(slack)
    if _nonadjacent_pair_of_degree(f, d):
        return d + 2
    return d + 1


COLORING_FORMAT = "first line 'n k'; then n lines 'v c' in ascending v"


def parse_coloring(text) -> PartialColoring:
    """Parse the coloring file format (total colorings only)."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("ascii")
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise ValueError("empty coloring input")
    head = lines[0].split()
    if len(head) != 2 or not all(p.isdigit() for p in head):
        raise ValueError(f"malformed header: {lines[0]!r}")
    n, k = int(head[0]), int(head[1])
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} assignment lines, found {len(lines) - 1}")
    colors: list = [None] * n
    for i, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ValueError(f"malformed line: {ln!r}")
        v, c = int(parts[0]), int(parts[1])
        if v != i:
            raise ValueError(f"assignments must list vertices 0..n-1 in order, got {v}")
        if not c < k:
            raise ValueError(f"color {c} outside palette of size {k}")
        colors[v] = c
    return PartialColoring(n, k, colors)


def emit_coloring(c: PartialColoring) -> str:
    if not c.is_total():
        raise ValueError("refusing to emit a partial coloring")
    out = [f"{c.n} {c.k}"]
    out.extend(f"{v} {c.colors[v]}" for v in range(c.n))
    return "\n".join(out) + "\n"

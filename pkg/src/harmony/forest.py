"""Forests as validated, immutable adjacency structures, plus the structural
helpers the coloring algorithm leans on: degree orderings, paths, component
joining, and double-broom recognition.

Vertices are dense 0-based integers. Inputs that mention a vertex index at or
above the declared count are rejected rather than remapped, so colorings stay
aligned with the labels the caller supplied.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass


class GraphInputError(ValueError):
    """Malformed, out-of-range, duplicated, self-looping, or cyclic edge input."""


class Forest:
    """Immutable simple acyclic graph on vertices 0..n-1.

    Adjacency lists are sorted tuples and degrees are cached. Construction
    validates simplicity and acyclicity; every Forest in the package is
    well-formed by the time anyone sees it.
    """

    __slots__ = ("n", "adjacency", "degrees", "_edge_count")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise GraphInputError("vertex count must be non-negative")
        adj: list[list[int]] = [[] for _ in range(n)]
        # Union-find over the declared vertex range catches cycles as we add.
        parent = list(range(n))

        def find(x: int) -> int:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        seen = set()
        count = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"vertex index out of range in edge ({u}, {v})")
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphInputError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            ru, rv = find(u), find(v)
            if ru == rv:
                raise GraphInputError(f"cycle detected when adding edge ({u}, {v})")
            parent[ru] = rv
            adj[u].append(v)
            adj[v].append(u)
            count += 1
        self.n = n
        self.adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        self.degrees = tuple(len(nbrs) for nbrs in self.adjacency)
        self._edge_count = count

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def edges(self):
        """Yield edges as (u, v) with u < v, in ascending order."""
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest member."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = []
            stack = [s]
            seen[s] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comp.sort()
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self._edge_count == self.n - 1

    def with_edges(self, extra) -> "Forest":
        return Forest(self.n, list(self.edges()) + list(extra))

    def with_pendant(self, v: int) -> "Forest":
        """New forest with one extra vertex (index n) attached to v."""
        if not 0 <= v < self.n:
            raise ValueError(f"no vertex {v}")
        return Forest(self.n + 1, list(self.edges()) + [(v, self.n)])

    def __eq__(self, other):
        return (
            isinstance(other, Forest)
            and self.n == other.n
            and self.adjacency == other.adjacency
        )

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        return f"Forest(n={self.n}, m={self._edge_count})"


def parse_edge_list(text) -> Forest:
    """Parse the package's edge-list format into a Forest.

    First non-comment line is "n m"; then m lines "u v" with 0 <= u < v < n.
    Lines starting with '#' are comments; blank lines are ignored.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise GraphInputError(f"edge list is not ASCII: {exc}") from None
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphInputError("empty input")

    def two_ints(line: str) -> tuple[int, int]:
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphInputError(f"malformed line: {line!r}")
        return int(parts[0]), int(parts[1])

    n, m = two_ints(lines[0])
    if len(lines) - 1 != m:
        raise GraphInputError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        u, v = two_ints(ln)
        if u >= v:
            raise GraphInputError(f"malformed line (need u < v): {ln!r}")
        edges.append((u, v))
    return Forest(n, edges)


def emit_edge_list(f: Forest) -> str:
    """Serialize a Forest in the format parse_edge_list accepts (round-trips)."""
    out = [f"{f.n} {f.edge_count}"]
    out.extend(f"{u} {v}" for u, v in f.edges())
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class DegreeOrdering:
    """Vertices sorted by non-increasing degree, ties by ascending index.

    t is the number of non-leaf vertices (degree >= 2); they occupy the first
    t positions of order. t == 0 when every vertex is a leaf or isolated.
    """

    order: tuple[int, ...]
    t: int


def degree_ordering(f: Forest) -> DegreeOrdering:
    order = sorted(range(f.n), key=lambda v: (-f.degrees[v], v))
    t = sum(1 for d in f.degrees if d >= 2)
    return DegreeOrdering(tuple(order), t)


def path_between(f: Forest, a: int, b: int) -> list[int]:
    """Unique path from a to b, endpoints included."""
    if not (0 <= a < f.n and 0 <= b < f.n):
        raise ValueError(f"no such vertices: {a}, {b}")
    if a == b:
        return [a]
    prev = {a: a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in f.adjacency[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if b not in prev:
        raise ValueError(f"vertices {a} and {b} are in different components")
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def connect_forest(f: Forest) -> Forest:
    """Join a disconnected forest into a single tree without touching its
    maximum degree.

    Components are merged in ascending order of their smallest vertex; each
    added edge joins the smallest-index vertex of current degree <= 1 on each
    side (a leaf or isolated vertex), so no endpoint ever climbs past degree 2
    and the set of maximum-degree vertices, and adjacency between them, is
    unchanged. Connected inputs come back as-is.
    """
    comps = f.components()
    if len(comps) <= 1:
        return f
    if f.max_degree() < 3:
        raise ValueError("connect_forest needs maximum degree >= 3")
    cur_deg = list(f.degrees)
    # Heap of candidate attachment points in the growing tree; entries go
    # stale when a vertex gets joined twice, so validity is re-checked on pop.
    acc: list[int] = []
    for v in comps[0]:
        if cur_deg[v] <= 1:
            heapq.heappush(acc, v)
    new_edges = []
    for comp in comps[1:]:
        a = None
        while acc:
            cand = heapq.heappop(acc)
            if cur_deg[cand] <= 1:
                a = cand
                break
        if a is None:  # a tree always has a leaf, so this cannot happen
            raise AssertionError("no eligible attachment point")
        b = min(v for v in comp if cur_deg[v] <= 1)
        new_edges.append((min(a, b), max(a, b)))
        cur_deg[a] += 1
        cur_deg[b] += 1
        if cur_deg[a] <= 1:
            heapq.heappush(acc, a)
        for v in comp:
            if cur_deg[v] <= 1:
                heapq.heappush(acc, v)
    return f.with_edges(new_edges)


def is_double_broom(f: Forest):
    """Witness path when the tree is two leaf clusters joined by a bare path.

    Returns the path p_1..p_q of non-leaf vertices when the non-leaves induce
    a path whose internal vertices have degree exactly 2 in f (so leaves hang
    only off the path's endpoints), else None. Stars (q=1) and bare paths
    qualify. Oriented so deg(p_1) >= deg(p_q), ties toward the smaller index.
    P_2 has no non-leaf vertex and returns None.
    """
    if not f.is_tree():
        raise ValueError("is_double_broom expects a tree")
    nonleaf = [v for v in range(f.n) if f.degrees[v] >= 2]
    if not nonleaf:
        return None
    in_set = [False] * f.n
    for v in nonleaf:
        in_set[v] = True
    if len(nonleaf) == 1:
        return (nonleaf[0],)
    ends = []
    for v in nonleaf:
        ideg = sum(1 for u in f.adjacency[v] if in_set[u])
        if ideg > 2:
            return None
        if ideg == 1:
            ends.append(v)
        # Internal non-leaves of the induced path must be bare in f itself.
        if ideg == 2 and f.degrees[v] != 2:
            return None
    if len(ends) != 2:
        return None
    # Walk the induced path from one end; non-leaves of a tree always induce
    # a connected subtree, so hitting the other end means we saw everyone.
    start, stop = ends
    path = [start]
    prev = -1
    while path[-1] != stop:
        nxt = [u for u in f.adjacency[path[-1]] if in_set[u] and u != prev]
        if len(nxt) != 1:
            return None
        prev = path[-1]
        path.append(nxt[0])
    if len(path) != len(nonleaf):
        return None
    d_first, d_last = f.degrees[path[0]], f.degrees[path[-1]]
    if (d_first, -path[0]) < (d_last, -path[-1]):
        path.reverse()
    return tuple(path)

"""Instance builders: the sharpness family, labeled-tree codes and
enumeration, seeded random tall trees, and double brooms.
"""

from __future__ import annotations

import heapq
import itertools
import random
from collections import Counter

from .coloring import _nonadjacent_pair_of_degree
from .forest import Forest


def build_t_delta(delta: int) -> Forest:
    """The extremal family: a 4-vertex path v1..v4 (vertices 0..3) carrying
    delta-1 leaves on v1, delta-2 on v2, and delta-2 on v4.

    Order is 3*delta - 1, one short of the tall-forest threshold, with the
    two maximum-degree vertices adjacent; it still needs delta+2 colors.
    """
    if delta < 3:
        raise ValueError("delta must be at least 3")
    edges = [(0, 1), (1, 2), (2, 3)]
    nxt = 4
    for hub, count in ((0, delta - 1), (1, delta - 2), (3, delta - 2)):
        for _ in range(count):
            edges.append((hub, nxt))
            nxt += 1
    return Forest(nxt, edges)


def prufer_decode(code) -> Forest:
    """Tree on len(code)+2 vertices from its code (smallest-leaf rule)."""
    code = list(code)
    n = len(code) + 2
    if n < 2:
        raise ValueError("code must describe a tree on at least 2 vertices")
    for x in code:
        if not 0 <= x < n:
            raise ValueError(f"code symbol {x} out of range for n={n}")
    deg = [1] * n
    for x in code:
        deg[x] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in code:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    a = heapq.heappop(leaves)
    b = heapq.heappop(leaves)
    edges.append((min(a, b), max(a, b)))
    return Forest(n, edges)


def prufer_encode(f: Forest) -> tuple[int, ...]:
    """Code of a labeled tree; inverse of prufer_decode."""
    if not f.is_tree() or f.n < 2:
        raise ValueError("prufer_encode expects a tree on at least 2 vertices")
    n = f.n
    deg = list(f.degrees)
    alive = [set(nbrs) for nbrs in f.adjacency]
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        nbr = next(iter(alive[leaf]))
        code.append(nbr)
        alive[nbr].discard(leaf)
        alive[leaf].clear()
        deg[nbr] -= 1
        deg[leaf] = 0
        if deg[nbr] == 1:
            heapq.heappush(leaves, nbr)
    return tuple(code)


def enumerate_trees(n: int, predicate=None):
    """Yield every labeled tree on n vertices (n**(n-2) of them), optionally
    filtered. Hard-capped at n <= 9; beyond that the count is unreasonable.
    """
    if not 2 <= n <= 9:
        raise ValueError("enumerate_trees supports 2 <= n <= 9")
    if n == 2:
        t = Forest(2, [(0, 1)])
        if predicate is None or predicate(t):
            yield t
        return
    for code in itertools.product(range(n), repeat=n - 2):
        t = prufer_decode(code)
        if predicate is None or predicate(t):
            yield t


def random_theorem_instance(
    n: int, delta: int, want_nonadjacent: bool = False, seed: int = 0
) -> Forest:
    """Seeded random tree with maximum degree exactly delta, 3*delta >= n+2,
    and a non-adjacent maximum-degree pair iff want_nonadjacent.

    Construction plants the hub degrees directly in a random tree code
    (vertex 0, and vertex 1 when a pair is wanted, appear delta-1 times),
    repairs degree overflows among the rest, and rejection-resamples until
    the pair status matches. Deterministic per (arguments, seed); sampled
    for constraint satisfaction, not uniformly over all qualifying trees.
    """
    if delta < 3:
        raise ValueError("delta must be at least 3")
    if 3 * delta < n + 2:
        raise ValueError(f"3*delta >= n+2 needed, got delta={delta}, n={n}")
    if n < delta + 1:
        raise ValueError("n must be at least delta+1 to realize the degree")
    if want_nonadjacent and n < 2 * delta + 1:
        raise ValueError("a non-adjacent maximum-degree pair needs n >= 2*delta+1")
    rng = random.Random(seed)
    hubs = (0, 1) if want_nonadjacent else (0,)
    pool = [v for v in range(n) if v not in hubs]  # free symbols
    free = (n - 2) - len(hubs) * (delta - 1)
    for _ in range(1000):
        code = [h for h in hubs for _ in range(delta - 1)]
        code.extend(rng.choice(pool) for _ in range(free))
        rng.shuffle(code)
        for _ in range(100):  # repair: cap non-hub degrees at delta
            counts = Counter(code)
            bad = sorted(
                s for s, cnt in counts.items() if s not in hubs and cnt > delta - 1
            )
            if not bad:
                break
            s = bad[0]
            spots = [i for i, x in enumerate(code) if x == s]
            code[rng.choice(spots)] = rng.choice(pool)
        else:
            continue
        t = prufer_decode(code)
        if t.max_degree() != delta:
            continue
        if _nonadjacent_pair_of_degree(t, delta) == want_nonadjacent:
            return t
    raise ValueError("resampling cap exceeded; constraints look unsatisfiable")


def build_double_broom(q: int, d1: int, d2: int | None = None) -> Forest:
    """Path of q vertices (0..q-1) with d1-1 extra leaves on vertex 0 and
    d2-1 on vertex q-1, so the endpoint degrees come out d1 and d2.

    q=1 builds the star K_{1,d1} (d2, if given, must agree). Internal path
    vertices are bare by construction. Requires d1 >= d2 >= 1.
    """
    if q < 1:
        raise ValueError("path length q must be at least 1")
    if q == 1:
        if d2 is not None and d2 != d1:
            raise ValueError("a single-vertex path has one hub; d2 must match d1")
        if d1 < 1:
            raise ValueError("d1 must be at least 1")
        return Forest(1 + d1, [(0, i) for i in range(1, d1 + 1)])
    if d2 is None:
        raise ValueError("d2 is required when q >= 2")
    if not d1 >= d2 >= 1:
        raise ValueError("need d1 >= d2 >= 1")
    edges = [(i, i + 1) for i in range(q - 1)]
    nxt = q
    for _ in range(d1 - 1):
        edges.append((0, nxt))
        nxt += 1
    for _ in range(d2 - 1):
        edges.append((q - 1, nxt))
        nxt += 1
    return Forest(nxt, edges)

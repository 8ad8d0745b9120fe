"""Exhaustive harmonious-colorability decision and minimum search.

Deliberately small and dumb so it can serve as the referee for everything
else: plain backtracking over vertices in BFS order, no clever structure
reuse from the constructive side. Intended for n up to ~25.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import PartialColoring, lower_bound_nonadjacent, lower_bound_pairs
from .forest import Forest


class SearchBudgetExceeded(Exception):
    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search budget exhausted after {nodes} nodes")


@dataclass
class ExactResult:
    h: int | None
    witness: PartialColoring | None
    nodes_explored: int
    timed_out: bool
    lower_bound: int  # best proven bound; equals h when not timed out


def _bfs_order(f: Forest):
    """Visit order rooted at a maximum-degree vertex per component, plus the
    BFS parent of each position (-1 for roots). In a forest every non-root
    vertex has exactly one earlier neighbor: its parent."""
    order: list[int] = []
    parent: list[int] = []
    seen = [False] * f.n
    for comp in f.components():
        root = max(comp, key=lambda v: (f.degrees[v], -v))
        seen[root] = True
        order.append(root)
        parent.append(-1)
        head = len(order) - 1
        while head < len(order):
            x = order[head]
            head += 1
            for y in f.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    order.append(y)
                    parent.append(x)
    return order, parent


_SAT, _UNSAT, _TIMEOUT = 0, 1, 2


def _search(f: Forest, k: int, budget: int):
    """Returns (status, witness colors or None, nodes used).

    Prunes with: pair reuse / properness; the class degree bound (in any
    harmonious k-coloring the colors of a class meet at most k-1 edges, so
    sum of degrees per class <= k-1); and symmetry breaking (a new color may
    only be introduced as 1 + the largest color used so far).
    """
    n = f.n
    if n == 0:
        return _SAT, [], 0
    order, parent_of = _bfs_order(f)
    deg = f.degrees
    cap = k - 1
    colors = [-1] * n
    class_deg = [0] * k
    pair_used = bytearray(k * k)
    cand = [0] * (n + 1)
    maxu = [-1] * (n + 1)
    nodes = 0
    i = 0
    while True:
        if i == n:
            return _SAT, list(colors), nodes
        v = order[i]
        p = parent_of[i]
        pc = colors[p] if p >= 0 else -1
        dv = deg[v]
        limit = maxu[i] + 1
        if limit > cap:
            limit = cap
        c = cand[i]
        choice = -1
        while c <= limit:
            if class_deg[c] + dv <= cap:
                if p < 0:
                    choice = c
                    break
                if c != pc:
                    key = c * k + pc if c < pc else pc * k + c
                    if not pair_used[key]:
                        choice = c
                        break
            c += 1
        if choice < 0:
            cand[i] = 0
            i -= 1
            if i < 0:
                return _UNSAT, None, nodes
            u = order[i]
            cu = colors[u]
            colors[u] = -1
            class_deg[cu] -= deg[u]
            pp = parent_of[i]
            if pp >= 0:
                ppc = colors[pp]
                key = cu * k + ppc if cu < ppc else ppc * k + cu
                pair_used[key] = 0
            continue
        nodes += 1
        if nodes > budget:
            return _TIMEOUT, None, nodes
        colors[v] = choice
        class_deg[choice] += dv
        if p >= 0:
            key = choice * k + pc if choice < pc else pc * k + choice
            pair_used[key] = 1
        maxu[i + 1] = maxu[i] if maxu[i] >= choice else choice
        cand[i] = choice + 1
        cand[i + 1] = 0
        i += 1


def is_colorable_k(f: Forest, k: int, budget: int = 10**8) -> bool:
    """Does a harmonious k-coloring of f exist?

    Raises SearchBudgetExceeded once more than budget placements have been
    tried, which is distinct from a proven False.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if lower_bound_pairs(f) > k:
        return False
    status, _, nodes = _search(f, k, budget)
    if status == _TIMEOUT:
        raise SearchBudgetExceeded(nodes)
    return status == _SAT


def exact_h(f: Forest, budget: int = 10**8) -> ExactResult:
    """Minimum number of colors in any harmonious coloring of f.

    Searches upward from max(lower_bound_nonadjacent, lower_bound_pairs);
    n distinct colors always work, so the walk terminates. The budget caps
    total placements across all attempted k; on exhaustion the result has
    timed_out set and carries the best proven lower bound instead of h.
    """
    k = max(lower_bound_nonadjacent(f), lower_bound_pairs(f))
    total = 0
    while True:
        if lower_bound_pairs(f) > k:
            k += 1
            continue
        status, witness, nodes = _search(f, k, budget - total)
        total += nodes
        if status == _SAT:
            return ExactResult(
                h=k,
                witness=PartialColoring(f.n, k, witness),
                nodes_explored=total,
                timed_out=False,
                lower_bound=k,
            )
        if status == _TIMEOUT:
            return ExactResult(
                h=None, witness=None, nodes_explored=total, timed_out=True, lower_bound=k
            )
        k += 1

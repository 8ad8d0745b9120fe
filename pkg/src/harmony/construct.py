"""Optimal harmonious coloring of tall forests (3*max_degree >= n+2).

The predicted optimum is max_degree+2 when two non-adjacent maximum-degree
vertices exist and max_degree+1 otherwise. Routing: tiny maximum degree by
lookup; a disconnected forest is first joined into a tree with the same
maximum degree and pair status; the +2 palette is reached by coloring the
tree plus one pendant with the +1 machinery and dropping the pendant; the
remaining trees split by degree profile into a double-broom search, three
explicit initial patterns, and a capped greedy sweep.

The greedy sweep is the workhorse and also the only route that can fail in
principle (it should not on inputs meeting the height condition): failures
retry with seeded tie-breaking and finally quarantine to exhaustive search
on small inputs, with every such event counted on the result.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum

from .coloring import (
    ColorState,
    PartialColoring,
    _nonadjacent_pair_of_degree,
    assign,
    is_harmonious,
    predict_h,
)
from .exact import _SAT, _search
from .forest import (
    Forest,
    connect_forest,
    degree_ordering,
    is_double_broom,
    path_between,
)


class CaseTag(str, Enum):
    SmallDelta = "SmallDelta"
    ForestReduction = "ForestReduction"
    Pendant = "Pendant"
    Case0 = "Case0"
    Case1 = "Case1"
    Case2t3 = "Case2t3"
    Case2t4 = "Case2t4"
    Case2t4Special = "Case2t4Special"
    Case3 = "Case3"
    Case4 = "Case4"


class GreedyStuck(Exception):
    """The sweep found a vertex with no eligible color."""

    def __init__(self, vertex, state, message: str | None = None):
        self.vertex = vertex
        self.state = state
        super().__init__(message or f"no eligible color for vertex {vertex}")


class ConstructionDefect(RuntimeError):
    """A state the case analysis rules out; indicates a bug, not bad input."""


@dataclass(frozen=True)
class GreedyConfig:
    palette_size: int | None = None
    seed: int | None = None
    max_retries: int = 8

    @property
    def degree_cap(self) -> int:
        # one color class may carry at most palette_size-1 of total degree:
        # each edge at the class consumes a distinct pair involving its color
        if self.palette_size is None:
            raise ValueError("palette_size is not set")
        return self.palette_size - 1


@dataclass
class ColoringResult:
    coloring: PartialColoring
    colors_used: int
    case_trace: list = field(default_factory=list)
    verified: bool = False
    fallbacks: int = 0


def initial_star_coloring(t: Forest, v: int, k: int):
    """Color v with 0 and its neighbors, ascending, with 1..k-1."""
    if t.degrees[v] != k - 1:
        raise ValueError(f"vertex {v} has degree {t.degrees[v]}, need {k - 1}")
    c = PartialColoring(t.n, k)
    state = ColorState(k)
    assign(t, c, state, v, 0)
    for color, u in enumerate(t.adjacency[v], start=1):
        assign(t, c, state, u, color)
    return c, state


def _smallest_eligible(a, du, k, cap, used, ds, ptr):
    # ptr[a] skips a prefix known permanently ineligible against parent
    # color a; only contiguously dead-or-used colors may advance it
    g = ptr[a]
    advancing = True
    while g < k:
        if g == a or ds[g] + 1 > cap or ((g, a) if g < a else (a, g)) in used:
            if advancing:
                ptr[a] = g + 1
        elif ds[g] + du > cap:
            advancing = False
        else:
            return g
        g += 1
    return None


def greedy_extend(t: Forest, c: PartialColoring, state: ColorState,
                  cfg: GreedyConfig, on_assign=None) -> PartialColoring:
    """Grow a partial coloring over the rest of the tree.

    Uncolored vertices enter a frontier when a neighbor gets colored
    (scanning initially colored vertices in ascending order first) and are
    processed non-leaves before leaves, then first-discovered first. Each
    takes the smallest color that is proper at its colored neighbor, keeps
    every color pair fresh, and respects the class degree cap; with a seed
    the choice is uniform over eligible colors instead. Raises GreedyStuck
    when a frontier vertex has no eligible color.
    """
    k = cfg.palette_size
    if k != c.k:
        raise ValueError("palette_size disagrees with the coloring")
    cap = cfg.degree_cap
    deg = t.degrees
    cols = c.colors
    used = state.used_pairs
    ds = state.degree_sum
    rng = random.Random(f"sweep:{cfg.seed}") if cfg.seed is not None else None
    ptr = [0] * k
    parent = [-1] * t.n
    seen = [False] * t.n
    heavy: deque = deque()
    light: deque = deque()

    def discover_from(w):
        for u in t.adjacency[w]:
            if cols[u] is None and not seen[u]:
                seen[u] = True
                parent[u] = w
                (heavy if deg[u] >= 2 else light).append(u)

    for w in range(t.n):
        if cols[w] is not None:
            discover_from(w)
    while heavy or light:
        u = heavy.popleft() if heavy else light.popleft()
        a = cols[parent[u]]
        if rng is None:
            g = _smallest_eligible(a, deg[u], k, cap, used, ds, ptr)
        else:
            elig = [
                g for g in range(k)
                if g != a and ds[g] + deg[u] <= cap
                and ((g, a) if g < a else (a, g)) not in used
            ]
            g = rng.choice(elig) if elig else None
        if g is None:
            raise GreedyStuck(u, state)
        assign(t, c, state, u, g)
        if on_assign is not None:
            on_assign(u, g)
        discover_from(u)
    return c


def _pair(a, b):
    return (a, b) if a < b else (b, a)


def color_case0(t: Forest, path) -> PartialColoring:
    """Double broom: backtrack over path colors, then fill both leaf pools.

    A full path assignment survives only if each endpoint color still has
    enough fresh pair partners for its pool, jointly when the endpoint
    colors share a fresh pair (one pool must then cede that partner).
    """
    k = predict_h(t)
    path = list(path)
    q = len(path)
    on_path = set(path)
    if len(on_path) != q:
        raise ValueError("path repeats a vertex")
    l_first = [u for u in t.adjacency[path[0]] if u not in on_path]
    l_last = [u for u in t.adjacency[path[-1]] if u not in on_path] if q >= 2 else []
    d_first, d_last = len(l_first), len(l_last)
    if q + d_first + d_last != t.n:
        raise ValueError("path is not the spine of this tree")
    if (q - 1) + d_first + d_last > k * (k - 1) // 2:
        raise GreedyStuck(None, None, "more edges than color pairs")

    colors = [-1] * q
    used: set = set()
    used_at = [0] * k  # pairs consumed per color, by path edges
    cand = [0] * (q + 1)
    maxu = [0] * (q + 1)  # highest color on the prefix, plus one

    def acceptable(i, g):
        if i > 0:
            prev = colors[i - 1]
            if g == prev or _pair(g, prev) in used:
                return False
            burn0 = used_at[colors[0]] + (colors[0] == g) + (colors[0] == prev)
        else:
            burn0 = 0
        if (k - 1) - burn0 < d_first:
            return False
        if i == q - 1 and q >= 2:
            a0, aq = colors[0], g
            prev = colors[i - 1]
            at = lambda x: used_at[x] + (x == g) + (x == prev)
            if a0 == aq:
                return (k - 1) - at(a0) >= d_first + d_last
            avail0 = (k - 1) - at(a0)
            availq = (k - 1) - at(aq)
            # the candidate edge itself may consume the endpoint pair
            shared = 1 if (_pair(a0, aq) not in used
                           and _pair(a0, aq) != _pair(g, prev)) else 0
            return (
                avail0 >= d_first
                and availq >= d_last
                and avail0 + availq - shared >= d_first + d_last
            )
        return True

    i = 0
    while i < q:
        limit = min(k - 1, maxu[i])  # first use of a new color: lowest unused
        g = cand[i]
        while g <= limit and not acceptable(i, g):
            g += 1
        if g > limit:
            cand[i] = 0
            i -= 1
            if i < 0:
                raise GreedyStuck(None, None, "path colors exhausted")
            if i > 0:
                used.discard(_pair(colors[i], colors[i - 1]))
                used_at[colors[i]] -= 1
                used_at[colors[i - 1]] -= 1
            colors[i] = -1
            continue
        colors[i] = g
        if i > 0:
            used.add(_pair(g, colors[i - 1]))
            used_at[g] += 1
            used_at[colors[i - 1]] += 1
        cand[i] = g + 1
        cand[i + 1] = 0
        maxu[i + 1] = max(maxu[i], g + 1)
        i += 1

    a0, aq = colors[0], colors[-1]
    avail0 = [g for g in range(k) if g != a0 and _pair(a0, g) not in used]
    if q == 1 or a0 == aq:
        if len(avail0) < d_first + d_last:
            raise ConstructionDefect("leaf pool undercounted at acceptance")
        pick0 = avail0[:d_first]
        pickq = avail0[d_first:d_first + d_last]
    else:
        availq = [g for g in range(k) if g != aq and _pair(aq, g) not in used]
        if _pair(a0, aq) not in used:
            # the shared pair may serve one pool only; cede where affordable
            if len(avail0) - 1 >= d_first:
                avail0 = [g for g in avail0 if g != aq]
            elif len(availq) - 1 >= d_last:
                availq = [g for g in availq if g != a0]
            else:
                raise ConstructionDefect("joint leaf pool undercounted")
        pick0 = avail0[:d_first]
        if aq in pick0:
            availq = [g for g in availq if g != a0]
        pickq = availq[:d_last]
    if len(pick0) < d_first or len(pickq) < d_last:
        raise ConstructionDefect("leaf pool ran dry after acceptance")

    out = PartialColoring(t.n, k)
    st = ColorState(k)
    for v, g in zip(path, colors):
        assign(t, out, st, v, g)
    for v, g in zip(sorted(l_first), pick0):
        assign(t, out, st, v, g)
    for v, g in zip(sorted(l_last), pickq):
        assign(t, out, st, v, g)
    return out


def _nonleaf_prefix(t, count):
    ordering = degree_ordering(t)
    if ordering.t != count:
        raise ValueError(f"expected exactly {count} non-leaves, found {ordering.t}")
    return list(ordering.order[:count])


def color_case2_t3(t: Forest) -> PartialColoring:
    """Three non-leaves. They induce a path; color it 0,1,2 with the lower
    degree endpoint last, then give each hub's leaves the lowest colors
    outside its own prefix of the path colors.
    """
    k = t.max_degree() + 1
    w = _nonleaf_prefix(t, 3)
    if min(t.degrees[x] for x in w) < k - 2:
        raise ValueError("third non-leaf degree below the dispatch threshold")
    wset = set(w)
    mid = [x for x in w if sum(1 for y in t.adjacency[x] if y in wset) == 2]
    if len(mid) != 1:
        raise ValueError("non-leaves do not induce a path")
    ends = sorted((x for x in w if x != mid[0]),
                  key=lambda x: (-t.degrees[x], x))
    w1, w2, w3 = ends[0], mid[0], ends[1]
    c = PartialColoring(t.n, k)
    st = ColorState(k)
    for v, g in ((w1, 0), (w2, 1), (w3, 2)):
        assign(t, c, st, v, g)
    for v, banned in ((w1, (0, 1)), (w2, (0, 1, 2)), (w3, (0, 1, 2))):
        avail = [g for g in range(k) if g not in banned]
        leaves = [u for u in t.adjacency[v] if u not in wset]
        if len(leaves) > len(avail):
            raise ValueError(f"hub {v} carries more leaves than spare colors")
        for u, g in zip(leaves, avail):
            assign(t, c, st, u, g)
    return c


def color_case2_t4(t: Forest) -> PartialColoring:
    coloring, _ = _color_case2_t4_impl(t)
    return coloring


def _color_case2_t4_impl(t: Forest):
    """Four non-leaves, degrees (D, D-1, D-1, 2) for D = max degree.

    After ordering them u0..u3 so that u2 touches u0 or u1 (swapping the
    two middle ones achieves this), color ui with i and give the leaves of
    ui the lowest colors above i not already on a non-leaf neighbor of ui.
    The one unorderable shape, D=3 with all three degree-2 hubs carrying a
    leaf, is the 7-vertex spider and gets its coloring spelled out.
    """
    d = t.max_degree()
    k = d + 1
    u = _nonleaf_prefix(t, 4)
    want = (d, d - 1, d - 1, 2)
    got = tuple(t.degrees[x] for x in u)
    if got != want:
        raise ValueError(f"non-leaf degrees {got} do not fit the profile {want}")
    wset = set(u)
    wnbrs = {x: {y for y in t.adjacency[x] if y in wset} for x in u}
    leaves_of = {x: [y for y in t.adjacency[x] if y not in wset] for x in u}

    if d == 3:
        bare = [x for x in u[1:] if not leaves_of[x]]
        if bare:
            last = bare[0]
            u = [u[0]] + [x for x in u[1:] if x != last] + [last]
        else:
            star = (
                wnbrs[u[0]] == set(u[1:])
                and all(wnbrs[x] == {u[0]} for x in u[1:])
                and all(len(leaves_of[x]) == 1 for x in u[1:])
                and not leaves_of[u[0]]
            )
            if not star:
                raise ConstructionDefect("leafy degree-2 hubs off the spider shape")
            c = PartialColoring(t.n, k)
            st = ColorState(k)
            for v, g in zip(u, range(4)):
                assign(t, c, st, v, g)
            for hub, g in zip(u[1:], (2, 3, 1)):
                assign(t, c, st, leaves_of[hub][0], g)
            return c, True

    if not (wnbrs[u[2]] & {u[0], u[1]}):
        u[1], u[2] = u[2], u[1]
    if not (wnbrs[u[2]] & {u[0], u[1]}):
        raise ConstructionDefect("third hub isolated from the first two")

    index_of = {x: i for i, x in enumerate(u)}
    c = PartialColoring(t.n, k)
    st = ColorState(k)
    for x, i in index_of.items():
        assign(t, c, st, x, i)
    for x, i in index_of.items():
        banned = set(range(i + 1)) | {index_of[y] for y in wnbrs[x]}
        avail = [g for g in range(k) if g not in banned]
        if len(leaves_of[x]) > len(avail):
            raise ConstructionDefect(f"hub {x} has more leaves than spare colors")
        for v, g in zip(leaves_of[x], avail):
            assign(t, c, st, v, g)
    return c, False


def initial_coloring_case4(t: Forest):
    """Second-highest degree is max-1: color the path between the two top
    hubs 0,1,2,..., the other non-leaf neighbors of the top hub with the
    following colors, and its leaves with the lowest colors not yet used
    around it. The sweep finishes the rest.
    """
    d = t.max_degree()
    k = d + 1
    order = degree_ordering(t).order
    v, u2 = order[0], order[1]
    if t.degrees[v] != d or t.degrees[u2] != d - 1:
        raise ValueError("top two degrees do not fit this route")
    if t.n >= 3 and t.degrees[order[2]] > d - 2:
        raise ValueError("third degree too high for this route")
    path = path_between(t, v, u2)
    q = len(path)
    nonleaf_nbrs = [x for x in t.adjacency[v] if t.degrees[x] >= 2]
    p = len(nonleaf_nbrs)
    if q + p > d + 2:
        raise ConstructionDefect("path plus branch count exceeds the palette")
    c = PartialColoring(t.n, k)
    st = ColorState(k)
    for i, x in enumerate(path):
        assign(t, c, st, x, i)
    others = [x for x in nonleaf_nbrs if x != path[1]]
    for g, x in enumerate(others, start=q):
        assign(t, c, st, x, g)
    taken = {0, 1} | set(range(q, q + len(others)))
    avail = [g for g in range(k) if g not in taken]
    leaf_nbrs = [x for x in t.adjacency[v] if t.degrees[x] == 1]
    if len(leaf_nbrs) > len(avail):
        raise ConstructionDefect("hub leaves outnumber the spare colors")
    for x, g in zip(leaf_nbrs, avail):
        assign(t, c, st, x, g)
    return c, st


def small_delta_color(f: Forest) -> PartialColoring:
    """Lookup for paths and dust: any forest with max degree <= 2 on at
    most 4 vertices (larger ones violate the height condition anyway).
    """
    if f.max_degree() > 2:
        raise ValueError("route reserved for maximum degree at most 2")
    if f.n > 4:
        raise ValueError("lookup covers at most 4 vertices")
    colors = [0] * f.n
    pair_templates = deque([(0, 1), (0, 2)])
    for comp in f.components():
        if len(comp) == 1:
            colors[comp[0]] = 0
        elif len(comp) == 2:
            a, b = comp
            ca, cb = pair_templates.popleft()
            colors[a], colors[b] = ca, cb
        else:
            ends = [v for v in comp if f.degrees[v] == 1]
            walk = [min(ends)]
            prev = -1
            while len(walk) < len(comp):
                nxt = next(x for x in f.adjacency[walk[-1]] if x != prev)
                prev = walk[-1]
                walk.append(nxt)
            for x, g in zip(walk, (0, 1, 2, 0)):
                colors[x] = g
    k = max(colors, default=-1) + 1
    return PartialColoring(f.n, k, colors)


def classify_case(t: Forest) -> CaseTag:
    """Dispatch a tree with max degree >= 3, tall enough, and without a
    non-adjacent maximum-degree pair, onto its construction route.
    """
    if not t.is_tree():
        raise ValueError("classification expects a tree")
    d = t.max_degree()
    if d < 3:
        raise ValueError("maximum degree below 3 takes the lookup route")
    predict_h(t)  # height condition
    if _nonadjacent_pair_of_degree(t, d):
        raise ValueError("non-adjacent maximum-degree pair takes the pendant route")
    broom = is_double_broom(t)
    if broom is not None and len(broom) >= 2:
        return CaseTag.Case0
    order = degree_ordering(t).order
    d2 = t.degrees[order[1]]
    d3 = t.degrees[order[2]]
    if d3 >= d - 1:
        nonleaves = degree_ordering(t).t
        if nonleaves == 3:
            return CaseTag.Case2t3
        if nonleaves == 4:
            return CaseTag.Case2t4
        raise ConstructionDefect(
            f"three high degrees but {nonleaves} non-leaves")
    if d2 == d:
        return CaseTag.Case3
    if d2 == d - 1:
        return CaseTag.Case4
    return CaseTag.Case1


def _greedy_route(tree, k, cfg, build_initial):
    """Run the sweep, retrying with derived seeds, then (small trees only)
    hand the palette to exhaustive search. Returns (coloring, fallbacks).
    """
    base = cfg if cfg is not None else GreedyConfig()
    bound = replace(base, palette_size=k)
    fallbacks = 0
    stuck = None
    for attempt in range(bound.max_retries + 1):
        acfg = bound
        if attempt > 0:
            fallbacks += 1
            acfg = replace(bound, seed=(base.seed or 0) * 1000003 + attempt)
        try:
            c, st = build_initial()
            return greedy_extend(tree, c, st, acfg), fallbacks
        except GreedyStuck as exc:
            stuck = exc
    if tree.n <= 20:
        fallbacks += 1
        status, cols, _ = _search(tree, k, 10 ** 8)
        if status == _SAT:
            return PartialColoring(tree.n, k, cols), fallbacks
    raise stuck


def _pendant_route(t, cfg):
    d = t.max_degree()
    if not _nonadjacent_pair_of_degree(t, d):
        raise ValueError("pendant route needs a non-adjacent maximum-degree pair")
    v = min(x for x in range(t.n) if t.degrees[x] == d)
    sup = t.with_pendant(v)
    k = d + 2
    coloring, fallbacks = _greedy_route(
        sup, k, cfg, lambda: initial_star_coloring(sup, v, k))
    return PartialColoring(t.n, k, coloring.colors[: t.n]), fallbacks


def color_with_pendant(t: Forest, cfg: GreedyConfig | None = None) -> PartialColoring:
    """Tree with two non-adjacent maximum-degree vertices: hang a pendant
    on the lowest-index one, color the supertree with max degree + 2
    colors starting from that star, and forget the pendant.
    """
    coloring, _ = _pendant_route(t, cfg)
    return coloring


def harmonious_color(f: Forest, cfg: GreedyConfig | None = None) -> ColoringResult:
    """Optimal harmonious coloring of a forest with 3*max_degree >= n+2.

    Raises TheoremPreconditionError otherwise. The result records the
    route taken, the self-check outcome, and how often the sweep needed a
    reseed or exhaustive rescue (0 in deterministic operation).
    """
    k = predict_h(f)
    d = f.max_degree()
    trace = []
    fallbacks = 0
    if d <= 2:
        c = small_delta_color(f)
        trace.append(CaseTag.SmallDelta)
    else:
        t = f
        if not f.is_connected():
            t = connect_forest(f)
            trace.append(CaseTag.ForestReduction)
        if _nonadjacent_pair_of_degree(t, d):
            c, fallbacks = _pendant_route(t, cfg)
            trace.append(CaseTag.Pendant)
        else:
            tag = classify_case(t)
            if tag is CaseTag.Case0:
                c = color_case0(t, is_double_broom(t))
                trace.append(tag)
            elif tag is CaseTag.Case2t3:
                c = color_case2_t3(t)
                trace.append(tag)
            elif tag is CaseTag.Case2t4:
                c, special = _color_case2_t4_impl(t)
                trace.append(CaseTag.Case2t4Special if special else tag)
            else:
                hub = degree_ordering(t).order[0]
                if tag is CaseTag.Case4:
                    build = lambda: initial_coloring_case4(t)
                else:
                    build = lambda: initial_star_coloring(t, hub, k)
                c, fallbacks = _greedy_route(t, k, cfg, build)
                trace.append(tag)
    if c.k != k:
        raise ConstructionDefect(f"palette came out {c.k}, predicted {k}")
    verified = is_harmonious(f, c)
    used = c.distinct_colors()
    if not verified or used != k:
        raise ConstructionDefect(
            f"self-check failed: harmonious={verified}, used {used} of {k}")
    return ColoringResult(
        coloring=c, colors_used=used, case_trace=trace,
        verified=verified, fallbacks=fallbacks)

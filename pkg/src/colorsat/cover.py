"""t-partite covers and the cover weight ``f``.

A cover of a graph ``H`` is a family of complete multipartite graphs, each
with at most ``t`` parts over ``V(H)``, whose edges together contain
``E(H)``. Its weight is the sum of all part sizes; ``f(H)`` is the minimum
weight. A cover is equivalently a matrix with a row per vertex and a column
per member, entry ``*`` or a part label, in which every edge of ``H`` has
its endpoints labeled differently in some column. The weight is then the
number of non-``*`` entries.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from itertools import combinations

from .family import rainbow_two_path_exists
from .graph import EdgeColoredGraph, complete_graph

DEFAULT_GUARD = 10


class MalformedCoverError(ValueError):
    pass


class HypothesisViolation(ValueError):
    def __init__(self, non_edge):
        self.non_edge = non_edge
        super().__init__(f"non-edge {non_edge} has no rainbow 2-path")


class GuardExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TPartiteGraph:
    parts: tuple[frozenset, ...]

    @classmethod
    def of(cls, *parts) -> "TPartiteGraph":
        return cls(tuple(frozenset(p) for p in parts))

    @property
    def weight(self) -> int:
        return sum(len(p) for p in self.parts)

    def overlapping(self) -> bool:
        seen = set()
        for p in self.parts:
            if seen & p:
                return True
            seen |= p
        return False

    def covers(self, u: int, v: int) -> bool:
        pu = pv = None
        for i, p in enumerate(self.parts):
            if u in p:
                pu = i
            if v in p:
                pv = i
        return pu is not None and pv is not None and pu != pv

    def edges(self) -> set[tuple[int, int]]:
        out = set()
        for a, b in combinations(range(len(self.parts)), 2):
            for x in self.parts[a]:
                for y in self.parts[b]:
                    out.add((min(x, y), max(x, y)))
        return out

    def to_list(self) -> list[list[int]]:
        return [sorted(p) for p in self.parts]


@dataclass
class TPartiteCover:
    members: list[TPartiteGraph]
    target: EdgeColoredGraph
    t: int

    @property
    def weight(self) -> int:
        return sum(m.weight for m in self.members)

    def to_dict(self) -> dict:
        return {"t": self.t, "weight": self.weight, "members": [m.to_list() for m in self.members]}


def cover_is_valid(cover: TPartiteCover) -> bool:
    for m in cover.members:
        if m.overlapping():
            raise MalformedCoverError(f"member {m.to_list()} has overlapping parts")
        if sum(1 for p in m.parts if p) > cover.t:
            raise MalformedCoverError(f"member {m.to_list()} has more than t={cover.t} nonempty parts")
    covered = set()
    for m in cover.members:
        covered |= m.edges()
    return all((u, v) in covered for u, v, _ in cover.target.edges())


def saturated_to_cover(g: EdgeColoredGraph) -> TPartiteCover:
    """The cover ``{G_v}`` of the complement, with parts ``Gamma_i(v)``.

    Requires every non-edge to have a rainbow 2-path; its weight is ``2 e(G)``.
    """
    for u, v in g.non_edges():
        if not rainbow_two_path_exists(g, u, v):
            raise HypothesisViolation((u, v))
    members = [TPartiteGraph(tuple(frozenset(g.neighbors(v, c)) for c in range(1, g.t + 1))) for v in range(g.n)]
    return TPartiteCover(members, g.complement(), g.t)


def star_cover(h: EdgeColoredGraph, ordering=None, t: int = 2) -> TPartiteCover:
    """Partition ``E(H)`` into stars from each vertex to its later neighbours.

    Weight is exactly ``e(H) + n``.
    """
    ordering = list(range(h.n)) if ordering is None else list(ordering)
    if sorted(ordering) != list(range(h.n)):
        raise ValueError("ordering must be a permutation of the vertices")
    pos = {v: i for i, v in enumerate(ordering)}
    members = []
    for v in ordering:
        later = frozenset(x for x in h.neighbors(v) if pos[x] > pos[v])
        members.append(TPartiteGraph((frozenset([v]), later) + (frozenset(),) * (t - 2)))
    return TPartiteCover(members, h, t)


def _tree_sizes(t: int, n: int, memo: dict) -> tuple[int, tuple[int, ...]]:
    """Cheapest way to split ``n`` vertices into 2..t groups, applied
    recursively; returns the total weight and the top-level group sizes."""
    if n <= 1:
        return 0, (n,)
    if (t, n) in memo:
        return memo[(t, n)]
    best = None

    def rec(left, parts, cap):
        nonlocal best
        if left == 0:
            if len(parts) >= 2:
                w = n + sum(_tree_sizes(t, p, memo)[0] for p in parts)
                if best is None or w < best[0]:
                    best = (w, tuple(parts))
            return
        if len(parts) == t:
            return
        for p in range(min(cap, left), 0, -1):
            rec(left - p, parts + [p], p)

    rec(n, [], n - 1)
    memo[(t, n)] = best
    return best


def split_cover(h: EdgeColoredGraph, t: int = 2) -> TPartiteCover:
    """Heuristic cover by recursive splitting.

    The vertices touching an edge are split into at most ``t`` groups
    (sizes chosen as for a complete graph, vertices placed where they have
    the fewest neighbours), one member separates the groups, and each group
    is handled the same way. Optimal on complete graphs.
    """
    memo: dict = {}
    members = []
    stack = [list(range(h.n))]
    while stack:
        vs = stack.pop()
        inside = _mask(vs)
        active = [v for v in vs if h.neighbor_mask(v) & inside]
        if not active:
            continue
        _, sizes = _tree_sizes(t, len(active), memo)
        active.sort(key=lambda v: (-(h.neighbor_mask(v) & inside).bit_count(), v))
        groups: list[list[int]] = [[] for _ in sizes]
        masks = [0] * len(sizes)
        for v in active:
            nb = h.neighbor_mask(v)
            open_ = [i for i in range(len(sizes)) if len(groups[i]) < sizes[i]]
            i = min(open_, key=lambda i: ((nb & masks[i]).bit_count(), i))
            groups[i].append(v)
            masks[i] |= 1 << v
        parts = []
        for i, grp in enumerate(groups):
            others = inside & ~masks[i]
            parts.append(frozenset(v for v in grp if h.neighbor_mask(v) & others))
        members.append(TPartiteGraph(tuple(parts) + (frozenset(),) * (t - len(parts))))
        stack.extend(reversed(groups))
    return TPartiteCover(members, h, t)


def kn_lower_bound(n: int, t: int) -> float:
    if t < 2:
        raise ValueError("need t >= 2")
    if n < 1:
        raise ValueError("need n >= 1")
    return n * math.log(n) / math.log(t)


def kn_bound_holds(value: int, n: int, t: int) -> bool:
    """Exact form of ``value >= n log n / log t``, i.e. ``t**value >= n**n``."""
    return t ** value >= n ** n


def kraft_minimum(t: int, floors) -> int:
    """Minimum of ``sum d_v`` over integers ``d_v >= floors[v]`` with
    ``sum t**(-d_v) <= 1``."""
    d = list(floors)
    if len(d) <= 1:
        return sum(d)
    top = max(d) + len(d) + 1
    scale = t ** top
    terms = [t ** (top - x) for x in d]
    total = sum(terms)
    while total > scale:
        i = min(range(len(d)), key=d.__getitem__)
        total -= terms[i] - terms[i] // t
        terms[i] //= t
        d[i] += 1
    return sum(d)


def _clique_partition(h: EdgeColoredGraph) -> list[list[int]]:
    """Greedy partition of V(H) into cliques, largest-degree vertices first."""
    left = set(range(h.n))
    parts = []
    while left:
        v = max(left, key=lambda x: ((h.neighbor_mask(x) & _mask(left)).bit_count(), -x))
        q = [v]
        cand = [x for x in sorted(left) if x != v and h.has_edge(v, x)]
        cand.sort(key=lambda x: -(h.neighbor_mask(x) & _mask(left)).bit_count())
        for x in cand:
            if all(h.has_edge(x, y) for y in q):
                q.append(x)
        parts.append(q)
        left -= set(q)
    return parts


def _bit_iter(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


@dataclass
class CoverResult:
    value: int | None  # None when nothing within the budget exists
    cover: TPartiteCover | None
    nodes: int
    elapsed: float
    lower_bound: int = 0
    stats: dict = field(default_factory=dict)


class _Search:
    def __init__(self, h: EdgeColoredGraph, t: int, best: int, incumbent, use_kraft: bool = True):
        self.h = h
        self.use_kraft = use_kraft
        self.t = t
        self.n = h.n
        self.edges = [(u, v) for u, v, _ in h.edges()]
        self.nbrs = [[] for _ in range(h.n)]
        for i, (u, v) in enumerate(self.edges):
            self.nbrs[u].append((v, i))
            self.nbrs[v].append((u, i))
        self.covered = [0] * len(self.edges)
        self.cols: list[list[int]] = []
        self.maxlab: list[int] = []
        self.deg = [0] * h.n
        self.weight = 0
        self.best = best
        self.best_cols = incumbent
        self.nodes = 0
        self.cliques = [q for q in _clique_partition(h) if len(q) > 1]
        in_clique = {v for q in self.cliques for v in q}
        self.singles = [v for v in range(h.n) if v not in in_clique]

    def _set(self, j: int, w: int, lab: int) -> None:
        col = self.cols[j]
        col[w] = lab
        for x, ei in self.nbrs[w]:
            if col[x] and col[x] != lab:
                self.covered[ei] += 1
        self.deg[w] += 1
        self.weight += 1

    def _unset(self, j: int, w: int) -> None:
        col = self.cols[j]
        lab = col[w]
        for x, ei in self.nbrs[w]:
            if col[x] and col[x] != lab:
                self.covered[ei] -= 1
        col[w] = 0
        self.deg[w] -= 1
        self.weight -= 1

    def lower_bound(self) -> int:
        deg = self.deg
        # every uncovered edge needs a new entry at one endpoint; on a clique
        # of uncovered edges those endpoints form a vertex cover
        adj = [0] * self.n
        for i, (u, v) in enumerate(self.edges):
            if not self.covered[i]:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        fresh = 0
        left = 0
        for v in range(self.n):
            if adj[v]:
                left |= 1 << v
        while left:
            v = max(_bit_iter(left), key=lambda x: (adj[x] & left).bit_count())
            q = 1
            cand = adj[v] & left
            left &= ~(1 << v)
            while cand:
                x = max(_bit_iter(cand), key=lambda y: (adj[y] & cand).bit_count())
                q += 1
                cand &= adj[x]
                left &= ~(1 << x)
            fresh += q - 1
        bound = self.weight + fresh
        if self.use_kraft:
            kraft = sum(deg[v] for v in self.singles)
            for q in self.cliques:
                kraft += kraft_minimum(self.t, [deg[v] for v in q])
            bound = max(bound, kraft)
        return bound

    def _options(self, u: int, v: int):
        t = self.t
        opts = []
        for j, col in enumerate(self.cols):
            a, b = col[u], col[v]
            m = self.maxlab[j]
            top = min(m + 1, t)
            if a and b:
                continue
            if a:
                opts.extend((1, j, ((v, lab),)) for lab in range(1, top + 1) if lab != a)
            elif b:
                opts.extend((1, j, ((u, lab),)) for lab in range(1, top + 1) if lab != b)
            else:
                for la in range(1, top + 1):
                    top2 = min(max(m, la) + 1, t)
                    for lb in range(1, top2 + 1):
                        if lb != la:
                            opts.append((2, j, ((u, la), (v, lb))))
        opts.sort(key=lambda o: o[0])
        opts.append((2, len(self.cols), ((u, 1), (v, 2))))
        return opts

    def run(self) -> None:
        self.nodes += 1
        try:
            ei = self.covered.index(0)
        except ValueError:
            if self.weight < self.best:
                self.best = self.weight
                self.best_cols = [list(c) for c in self.cols]
            return
        if self.lower_bound() >= self.best:
            return
        u, v = self.edges[ei]
        for _, j, entries in self._options(u, v):
            fresh = j == len(self.cols)
            if fresh:
                self.cols.append([0] * self.n)
                self.maxlab.append(0)
            old = self.maxlab[j]
            for w, lab in entries:
                self._set(j, w, lab)
                if lab > self.maxlab[j]:
                    self.maxlab[j] = lab
            self.run()
            for w, _ in entries:
                self._unset(j, w)
            self.maxlab[j] = old
            if fresh:
                self.cols.pop()
                self.maxlab.pop()


def _cover_from_columns(h: EdgeColoredGraph, t: int, cols) -> TPartiteCover:
    members = []
    for col in cols:
        parts = tuple(frozenset(v for v in range(h.n) if col[v] == lab) for lab in range(1, t + 1))
        if sum(1 for p in parts if p) >= 2:
            members.append(TPartiteGraph(parts))
    return TPartiteCover(members, h, t)


def _columns_from_cover(cover: TPartiteCover, n: int) -> list[list[int]]:
    cols = []
    for m in cover.members:
        col = [0] * n
        for lab, p in enumerate(m.parts, start=1):
            for v in p:
                col[v] = lab
        cols.append(col)
    return cols


def exact_cover_weight(h: EdgeColoredGraph, t: int, budget: int | None = None, guard: int | None = None,
                       force: bool = False, upper: TPartiteCover | None = None,
                       kraft: bool = True) -> CoverResult:
    """Exact ``f(H)`` by branch-and-bound, with an optimal cover.

    Branches on the lexicographically least uncovered edge over every way
    to separate its endpoints in an existing or a new member. Bounds: a
    Kraft-type bound on a clique partition of ``H`` and a matching bound on
    the uncovered edges. With ``budget`` only covers of weight at most
    ``budget`` are sought; ``value`` is ``None`` if there are none.
    ``kraft=False`` drops the Kraft-type bound, so that the result does not
    lean on the ``K_n`` lower bound it may be used to check.
    """
    if t < 2:
        raise ValueError("need t >= 2")
    if guard is None:
        guard = int(os.environ.get("COLORSAT_GUARD", DEFAULT_GUARD))
    if h.n > guard and not force:
        raise GuardExceeded(f"n={h.n} exceeds exact-cover guard {guard}")
    start = time.perf_counter()
    if h.num_edges == 0:
        return CoverResult(0, TPartiteCover([], h, t), 1, time.perf_counter() - start)
    seeds = [star_cover(h, t=t), split_cover(h, t)]
    if upper is not None and cover_is_valid(upper):
        seeds.append(upper)
    seed = min((c for c in seeds if cover_is_valid(c)), key=lambda c: c.weight)
    if budget is not None and seed.weight > budget:
        best, incumbent = budget + 1, None
    else:
        best, incumbent = seed.weight, _columns_from_cover(seed, h.n)
    s = _Search(h, t, best, incumbent, use_kraft=kraft)
    root_lb = s.lower_bound()
    if root_lb < s.best:
        s.run()
    elapsed = time.perf_counter() - start
    if s.best_cols is None:
        return CoverResult(None, None, s.nodes, elapsed, root_lb)
    cover = _cover_from_columns(h, t, s.best_cols)
    return CoverResult(cover.weight, cover, s.nodes, elapsed, root_lb, {"seed": seed.weight, "kraft": kraft})


@dataclass
class CoverBoundReport:
    n: int
    t: int
    f_complement: int
    f_complete: int
    e_plus_n: int
    holds: bool
    slack: int  # f(complement) - (f(K_n) - (e(H) + n))

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def complement_cover_bound(h: EdgeColoredGraph, t: int, guard: int | None = None) -> CoverBoundReport:
    """Check ``f(complement of H) >= f(K_n) - (e(H) + n)`` with exact values."""
    fc = exact_cover_weight(h.complement(), t, guard=guard).value
    fk = exact_cover_weight(complete_graph(h.n), t, guard=guard).value
    e_n = h.num_edges + h.n
    slack = fc - (fk - e_n)
    return CoverBoundReport(h.n, t, fc, fk, e_n, slack >= 0, slack)

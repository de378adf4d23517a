"""Forbidden families of colored copies of a host graph, and containment.

A family is a host graph ``H`` plus the number ``r`` of distinct colors a
copy must carry: monochromatic is ``r = 1``, rainbow is ``r = e(H)``. The
color count is taken over the embedded copy's edges only.

Containment uses a backtracking embedding search. Triangles and stars
``K_{1,s}`` have dedicated fast paths which the test-suite cross-checks
against the generic matcher.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from pathlib import Path

from . import kernels
from .graph import (
    DuplicateEdgeError,
    EdgeColoredGraph,
    _bits,
    complete_graph,
    disjoint_copies,
    path_graph,
    star_graph,
)


class FamilyError(ValueError):
    pass


class HostTooLargeError(FamilyError):
    pass


@dataclass(frozen=True)
class ForbiddenFamily:
    host: EdgeColoredGraph
    colors: int  # exact number of distinct colors on a member
    host_name: str = field(default="H", compare=False)

    def __post_init__(self):
        e = self.host.num_edges
        if e == 0:
            raise FamilyError("host graph has no edges")
        if not 1 <= self.colors <= e:
            raise FamilyError(f"need 1 <= r <= e(H) = {e}, got r = {self.colors}")

    @property
    def name(self) -> str:
        e = self.host.num_edges
        if self.colors == 1:
            rule = "mono"
        elif self.colors == e:
            rule = "rainbow"
        else:
            rule = f"exact{self.colors}"
        return f"{rule}({self.host_name})"

    @property
    def is_triangle(self) -> bool:
        return self.host.n == 3 and self.host.num_edges == 3

    @property
    def star_size(self) -> int | None:
        """``s`` when the host is ``K_{1,s}``, else ``None``."""
        h = self.host
        if h.n < 2 or h.num_edges != h.n - 1:
            return None
        if max(h.degrees()) == h.n - 1:
            return h.n - 1
        return None

    @property
    def clique_size(self) -> int | None:
        h = self.host
        return h.n if h.num_edges == comb(h.n, 2) else None

    def __str__(self) -> str:
        return self.name


def monochromatic(host: EdgeColoredGraph, host_name: str = "H") -> ForbiddenFamily:
    return ForbiddenFamily(host.uncolored(), 1, host_name)


def rainbow(host: EdgeColoredGraph, host_name: str = "H") -> ForbiddenFamily:
    return ForbiddenFamily(host.uncolored(), host.num_edges, host_name)


def exactly(r: int, host: EdgeColoredGraph, host_name: str = "H") -> ForbiddenFamily:
    return ForbiddenFamily(host.uncolored(), r, host_name)


_HOST_PATTERNS = [
    (re.compile(r"^K1,(\d+)$"), lambda m: star_graph(int(m.group(1)))),
    (re.compile(r"^(\d+)K(\d+)$"), lambda m: disjoint_copies(int(m.group(1)), complete_graph(int(m.group(2))))),
    (re.compile(r"^K(\d+)$"), lambda m: complete_graph(int(m.group(1)))),
    (re.compile(r"^P(\d+)$"), lambda m: path_graph(int(m.group(1)))),
]


def parse_host(text: str) -> EdgeColoredGraph:
    text = text.strip()
    for pat, build in _HOST_PATTERNS:
        m = pat.match(text)
        if m:
            return build(m)
    if text.endswith(".ecg") and Path(text).exists():
        from .ecg import read_ecg

        return read_ecg(text).uncolored()
    raise FamilyError(f"unknown host {text!r}")


_FAMILY_RE = re.compile(r"^\s*(mono|rainbow|exact(\d+))\s*\((.+)\)\s*$")


def parse_family(text: str) -> ForbiddenFamily:
    """Parse ``mono(K3)``, ``rainbow(3K2)``, ``exact2(K1,3)``, ..."""
    m = _FAMILY_RE.match(text)
    if not m:
        raise FamilyError(f"cannot parse family {text!r}")
    rule, r, host_text = m.group(1), m.group(2), m.group(3).strip()
    host = parse_host(host_text)
    name = Path(host_text).stem if host_text.endswith(".ecg") else host_text
    if rule == "mono":
        return monochromatic(host, name)
    if rule == "rainbow":
        return rainbow(host, name)
    return exactly(int(r), host, name)


# -- generic matcher ----------------------------------------------------------

def _plan(host: EdgeColoredGraph, first: tuple = ()):
    """Host vertex order (most already-placed neighbours first, then degree)
    with back-adjacency as indices into the order."""
    nh = host.n
    hdeg = host.degrees()
    order = list(first)
    placed = set(order)
    while len(order) < nh:
        best = max(
            (v for v in range(nh) if v not in placed),
            key=lambda v: (sum(1 for w in order if host.has_edge(v, w)), hdeg[v], -v),
        )
        order.append(best)
        placed.add(best)
    back = [[j for j in range(i) if host.has_edge(order[i], order[j])] for i in range(nh)]
    return order, back, [hdeg[v] for v in order]


@lru_cache(maxsize=256)
def _cached_plan(host: EdgeColoredGraph, first: tuple):
    return _plan(host, first)


def _embed(g: EdgeColoredGraph, host: EdgeColoredGraph, r: int, first: tuple = (), images: tuple = ()):
    order, back, hdeg = _cached_plan(host, first)
    nh = len(order)
    total = host.num_edges
    img = [None] * nh
    counts: dict[int, int] = {}
    used = 0
    placed = 0
    for i, x in enumerate(images):
        for j in back[i]:
            c = g.color(x, img[j])
            if not c:
                return None
            counts[c] = counts.get(c, 0) + 1
            placed += 1
        img[i] = x
        used |= 1 << x
    if len(counts) > r or len(counts) + (total - placed) < r:
        return None
    full = (1 << g.n) - 1
    degs = g.degrees()

    def rec(i, used, placed):
        if i == nh:
            return len(counts) == r
        if back[i]:
            cand = full
            for j in back[i]:
                cand &= g.neighbor_mask(img[j])
        else:
            cand = full
        cand &= ~used
        need = hdeg[i]
        for x in _bits(cand):
            if degs[x] < need:
                continue
            added = []
            for j in back[i]:
                c = g.color(x, img[j])
                counts[c] = counts.get(c, 0) + 1
                added.append(c)
            p2 = placed + len(added)
            d = len(counts)
            if d <= r and d + (total - p2) >= r:
                img[i] = x
                if rec(i + 1, used | (1 << x), p2):
                    return True
            for c in added:
                counts[c] -= 1
                if not counts[c]:
                    del counts[c]
        return False

    if rec(len(images), used, placed):
        return {order[i]: img[i] for i in range(nh)}
    return None


@lru_cache(maxsize=64)
def _arc_orbit_reps(host: EdgeColoredGraph) -> tuple:
    """One representative per orbit of directed host edges under Aut(H)."""
    arcs = [(u, v) for u, v, _ in host.edges()] + [(v, u) for u, v, _ in host.edges()]
    if host.n > 8:
        return tuple(arcs)
    edges = {(u, v) for u, v, _ in host.edges()}
    autos = []
    for p in permutations(range(host.n)):
        if all(((p[u], p[v]) if p[u] < p[v] else (p[v], p[u])) in edges for u, v in edges):
            autos.append(p)
    reps = []
    covered = set()
    for a in arcs:
        if a in covered:
            continue
        reps.append(a)
        for p in autos:
            covered.add((p[a[0]], p[a[1]]))
    return tuple(reps)


def find_member_generic(g: EdgeColoredGraph, fam: ForbiddenFamily):
    return _embed(g, fam.host, fam.colors)


# -- fast paths ---------------------------------------------------------------

def _color_counts(g: EdgeColoredGraph, v: int) -> dict[int, int]:
    out = {}
    for c in range(1, g.t + 1):
        k = g.neighbor_mask(v, c).bit_count()
        if k:
            out[c] = k
    return out


def _star_at(g: EdgeColoredGraph, v: int, s: int, r: int):
    """Leaves of an ``s``-star at ``v`` with exactly ``r`` colors, or None."""
    counts = _color_counts(g, v)
    if r > s or len(counts) < r:
        return None
    top = sorted(counts, key=lambda c: (-counts[c], c))[:r]
    if sum(counts[c] for c in top) < s:
        return None
    leaves = [g.neighbors(v, c)[0] for c in top]
    pool = [x for c in top for x in g.neighbors(v, c)[1:]]
    return leaves + pool[: s - r]


def _star_through(counts: dict[int, int], c: int, s: int, r: int) -> bool:
    """Can ``s - 1`` existing edges plus a new color-``c`` edge form an
    ``s``-star with exactly ``r`` colors?"""
    m = s - 1
    others = sorted((k for a, k in counts.items() if a != c), reverse=True)
    need = r - 1
    # existing picks avoid color c
    if need == 0:
        if m == 0:
            return True
    elif need <= len(others) and need <= m and sum(others[:need]) >= m:
        return True
    # existing picks include color c
    if counts.get(c, 0) >= 1 and r <= m and need <= len(others):
        if counts[c] + sum(others[:need]) >= m:
            return True
    return False


def find_member(g: EdgeColoredGraph, fam: ForbiddenFamily):
    """An embedding ``host vertex -> G vertex`` of a member of ``fam``, or None."""
    if fam.is_triangle:
        tri = kernels.tri_find(g.n, g.matrix, g.t, fam.colors)
        return None if tri is None else dict(enumerate(tri))
    s = fam.star_size
    if s is not None:
        center = next(v for v in range(fam.host.n) if fam.host.degree(v) == s) if s > 1 else 0
        for v in range(g.n):
            leaves = _star_at(g, v, s, fam.colors)
            if leaves is not None:
                hleaves = [x for x in range(fam.host.n) if x != center]
                emb = {center: v}
                emb.update(zip(hleaves, leaves))
                return emb
        return None
    return find_member_generic(g, fam)


def contains_member(g: EdgeColoredGraph, fam: ForbiddenFamily) -> bool:
    return find_member(g, fam) is not None


def _creates_triangle(g: EdgeColoredGraph, u: int, v: int, c: int, r: int) -> bool:
    mu = [g.neighbor_mask(u, a) for a in range(g.t + 1)]
    mv = [g.neighbor_mask(v, b) for b in range(g.t + 1)]
    if not mu[0] & mv[0]:
        return False
    for a in range(1, g.t + 1):
        if not mu[a]:
            continue
        for b in range(1, g.t + 1):
            if mu[a] & mv[b]:
                if 1 + (a != c) + (b != c and b != a) == r:
                    return True
    return False


def creates_member_generic(g: EdgeColoredGraph, u: int, v: int, c: int, fam: ForbiddenFamily) -> bool:
    g2 = g.add_edge(u, v, c)
    for a, b in _arc_orbit_reps(fam.host):
        if _embed(g2, fam.host, fam.colors, (a, b), (u, v)) is not None:
            return True
    return False


def creates_member_on_add(g: EdgeColoredGraph, u: int, v: int, c: int, fam: ForbiddenFamily) -> bool:
    """Whether adding ``uv`` in color ``c`` creates a member; only copies
    through the new edge are searched."""
    if g.has_edge(u, v):
        raise DuplicateEdgeError(f"({u}, {v}) is already an edge")
    if fam.is_triangle:
        return _creates_triangle(g, u, v, c, fam.colors)
    s = fam.star_size
    if s is not None:
        r = fam.colors
        return _star_through(_color_counts(g, u), c, s, r) or _star_through(_color_counts(g, v), c, s, r)
    return creates_member_generic(g, u, v, c, fam)


def rainbow_two_path_exists(g: EdgeColoredGraph, u: int, v: int) -> bool:
    """Some ``x`` with ``ux`` and ``xv`` edges of different colors."""
    if u == v:
        raise ValueError("u and v must differ")
    nv = g.neighbor_mask(v)
    for a in range(1, g.t + 1):
        mu = g.neighbor_mask(u, a)
        if mu and mu & nv & ~g.neighbor_mask(v, a):
            return True
    return False


def _restricted_growth(m: int, k: int):
    """Colorings of ``m`` items with exactly ``k`` colors, up to renaming."""
    out = [0] * m

    def rec(i, used):
        if m - i < k - used:
            return
        if i == m:
            if used == k:
                yield tuple(x + 1 for x in out)
            return
        for c in range(min(used + 1, k)):
            out[i] = c
            yield from rec(i + 1, max(used, c + 1))

    yield from rec(0, 0)


def member_edges_have_rainbow_paths(fam: ForbiddenFamily, max_edges: int = 12) -> bool:
    """Exhaustive check: every member has, for each edge ``uv``, a rainbow
    2-path ``u-x-v`` inside the member."""
    h = fam.host
    edges = [(u, v) for u, v, _ in h.edges()]
    if len(edges) > max_edges:
        raise HostTooLargeError(f"e(H) = {len(edges)} exceeds exhaustive limit {max_edges}")
    for coloring in _restricted_growth(len(edges), fam.colors):
        member = EdgeColoredGraph(h.n, fam.colors, [(u, v, c) for (u, v), c in zip(edges, coloring)])
        for u, v in edges:
            if not rainbow_two_path_exists(member, u, v):
                return False
    return True


def family_member_edge_has_rainbow_path(fam: ForbiddenFamily) -> bool:
    """Whether every member edge lies on a rainbow 2-path of the member.

    For ``C_c(K_k)`` this holds iff ``c >= C(k-1, 2) + 2``; other hosts are
    decided exhaustively.
    """
    k = fam.clique_size
    if k is not None and k >= 3:
        return fam.colors >= comb(k - 1, 2) + 2
    return member_edges_have_rainbow_paths(fam)


def copies_through(g: EdgeColoredGraph, host: EdgeColoredGraph, u: int, v: int, limit: int | None = None) -> list[frozenset]:
    """Distinct edge sets of uncolored host copies in ``G + uv`` that use ``uv``.

    ``G`` colors are ignored. Stops after ``limit`` copies when given.
    """
    g2 = g.uncolored()
    if not g2.has_edge(u, v):
        g2 = g2.add_edge(u, v, 1)
    found: set[frozenset] = set()
    order_cache = {}
    for a, b in _arc_orbit_reps(host):
        key = (a, b)
        if key not in order_cache:
            order_cache[key] = _cached_plan(host, key)
        order, back, hdeg = order_cache[key]
        nh = len(order)
        img = [None] * nh
        img[0], img[1] = u, v
        full = (1 << g2.n) - 1

        def rec(i, used):
            if limit is not None and len(found) >= limit:
                return
            if i == nh:
                es = frozenset(
                    (min(img[i2], img[j]), max(img[i2], img[j])) for i2 in range(nh) for j in back[i2]
                )
                found.add(es)
                return
            cand = full
            for j in back[i]:
                cand &= g2.neighbor_mask(img[j])
            cand &= ~used
            for x in _bits(cand):
                img[i] = x
                rec(i + 1, used | (1 << x))

        rec(2, (1 << u) | (1 << v))
        if limit is not None and len(found) >= limit:
            break
    return list(found)

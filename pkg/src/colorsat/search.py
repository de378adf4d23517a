"""Exhaustive search for exact saturation numbers.

Colored graphs are generated by canonical augmentation: a child ``C = P + e``
of a canonical parent ``P`` is kept only when ``C - e`` is isomorphic to
``C - e*``, where ``e*`` is the last edge of ``C``'s canonical encoding.
Every class is then produced from exactly one parent class; duplicates
from one parent are merged by key. Only F-free graphs are grown, which is
sound because F-freeness is inherited by subgraphs.
"""

from __future__ import annotations

import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .canon import PALETTE, canon_matrix, canonical_key, make_key, matrix_from_encoding, normalize_mode
from .cover import GuardExceeded
from .family import ForbiddenFamily, copies_through, creates_member_on_add, find_member
from .graph import EdgeColoredGraph, GraphError
from .saturation import check_palette, saturation_report

DEFAULT_WITNESS_LIMIT = 20
DEGSEQ_GUARD = 10


def enumeration_guard(t: int) -> int:
    """Largest ``n`` enumerated without ``force``; ``COLORSAT_GUARD`` overrides."""
    env = os.environ.get("COLORSAT_GUARD")
    if env:
        return int(env)
    if t <= 1:
        return 9
    return {2: 8, 3: 7}.get(t, 6)


def _check_guard(n: int, t: int, force: bool) -> None:
    g = enumeration_guard(t)
    if n > g and not force:
        raise GuardExceeded(f"n={n} exceeds the enumeration guard {g} for t={t} (use force or COLORSAT_GUARD)")


# -- canonical augmentation -------------------------------------------------------

def _invariant(g: EdgeColoredGraph) -> tuple:
    """Cheap isomorphism invariant, also stable under palette permutation."""
    sig = []
    for v in range(g.n):
        per = sorted(g.neighbor_mask(v, c).bit_count() for c in range(1, g.t + 1))
        sig.append((g.degree(v), tuple(per)))
    return tuple(sorted(sig))


def _last_pair(n: int, enc: bytes) -> tuple[int, int]:
    k = len(enc) - 1
    while enc[k] == 0:
        k -= 1
    # invert the row-major upper-triangle index
    i = 0
    while k >= n - 1 - i:
        k -= n - 1 - i
        i += 1
    return i, i + 1 + k


def _top_color(g: EdgeColoredGraph, palette: bool) -> int:
    if not palette:
        return g.t
    return min(g.t, max(g.colors_used(), default=0) + 1)


def _free_extensions(g: EdgeColoredGraph, fam: ForbiddenFamily | None, palette: bool):
    top = _top_color(g, palette)
    out = []
    for u, v in g.non_edges():
        for c in range(1, top + 1):
            if fam is None or not creates_member_on_add(g, u, v, c, fam):
                out.append((u, v, c))
    return out


def _children(g: EdgeColoredGraph, key: bytes, inv: tuple, extensions, palette: bool, stats: dict):
    """Accepted children of the canonical graph ``g`` as ``(key, matrix)``."""
    n, t = g.n, g.t
    seen = {}
    for u, v, c in extensions:
        child = g.add_edge(u, v, c)
        enc, lab, _ = canon_matrix(n, t, child.matrix, palette)
        ckey = make_key(n, t, enc, palette)
        if ckey in seen:
            stats["duplicates"] += 1
            continue
        i, j = _last_pair(n, enc)
        a, b = lab[i], lab[j]
        if (min(a, b), max(a, b)) != (u, v):
            rest = child.remove_edge(a, b)
            if _invariant(rest) != inv:
                stats["rejected"] += 1
                continue
            renc, _, _ = canon_matrix(n, t, rest.matrix, palette)
            if make_key(n, t, renc, palette) != key:
                stats["rejected"] += 1
                continue
        seen[ckey] = matrix_from_encoding(n, enc)
    return list(seen.items())


def _expand_chunk(args):
    n, t, chunk, fam, palette, grow = args
    stats = {"duplicates": 0, "rejected": 0, "pruned": 0}
    saturated = []
    kids = []
    for key, mat in chunk:
        g = EdgeColoredGraph.from_matrix(n, t, mat)
        ext = _free_extensions(g, fam, palette)
        stats["pruned"] += (comb(n, 2) - g.num_edges) * _top_color(g, palette) - len(ext)
        # with palette symmetry, trying one unused color stands for all of them
        if fam is not None and not ext:
            saturated.append((key, mat))
        if grow:
            kids.extend(_children(g, key, _invariant(g), ext, palette, stats))
    return saturated, kids, stats


def _root(n: int, t: int, palette: bool):
    g = EdgeColoredGraph(n, t)
    enc, _, _ = canon_matrix(n, t, g.matrix, palette)
    return make_key(n, t, enc, palette), g.matrix


def _chunks(items: list, parts: int) -> list[list]:
    size = max(1, -(-len(items) // parts))
    return [items[i:i + size] for i in range(0, len(items), size)]


class _Levels:
    """Level-by-level canonical augmentation, optionally on a process pool."""

    def __init__(self, n: int, t: int, fam: ForbiddenFamily | None, palette: bool, jobs: int = 1):
        self.n, self.t, self.fam, self.palette = n, t, fam, palette
        self.jobs = max(1, jobs)
        self.pool = ProcessPoolExecutor(self.jobs) if self.jobs > 1 else None
        self.stats = {"enumerated": 0, "duplicates": 0, "rejected": 0, "pruned": 0, "levels": []}

    def close(self) -> None:
        if self.pool is not None:
            self.pool.shutdown()

    def step(self, frontier: list, grow: bool = True):
        """Return ``(saturated graphs in frontier, next frontier)``, both sorted by key."""
        n, t = self.n, self.t
        if self.pool is None:
            results = [_expand_chunk((n, t, frontier, self.fam, self.palette, grow))]
        else:
            jobs = [(n, t, c, self.fam, self.palette, grow) for c in _chunks(frontier, self.jobs * 4)]
            results = list(self.pool.map(_expand_chunk, jobs))
        saturated, kids = [], []
        for sat, ch, st in results:
            saturated.extend(sat)
            kids.extend(ch)
            for k, v in st.items():
                self.stats[k] += v
        # children of different parents are never isomorphic, so no merge is needed
        kids.sort()
        saturated.sort()
        return saturated, kids


def enumerate_colored_graphs(n: int, t: int, edge_count: int, mode: str = PALETTE,
                             free_of: ForbiddenFamily | None = None, force: bool = False,
                             jobs: int = 1):
    """Yield one canonical representative per isomorphism class of ``t``-colored
    graphs on ``n`` vertices with ``edge_count`` edges (``free_of`` restricts
    to graphs containing no member of that family)."""
    if n < 0 or t < 1:
        raise GraphError(f"need n >= 0 and t >= 1, got n={n}, t={t}")
    _check_guard(n, t, force)
    palette = normalize_mode(mode) == PALETTE
    if not 0 <= edge_count <= comb(n, 2):
        return
    if free_of is not None and find_member(EdgeColoredGraph(n, t), free_of) is not None:
        return
    levels = _Levels(n, t, free_of, palette, jobs)
    try:
        frontier = [_root(n, t, palette)]
        for _ in range(edge_count):
            _, frontier = levels.step(frontier)
    finally:
        levels.close()
    for _, mat in frontier:
        yield EdgeColoredGraph.from_matrix(n, t, mat)


def count_classes(n: int, t: int, mode: str = PALETTE, free_of: ForbiddenFamily | None = None,
                  force: bool = False) -> list[int]:
    """Number of classes at every edge count ``0..C(n,2)``."""
    palette = normalize_mode(mode) == PALETTE
    _check_guard(n, t, force)
    levels = _Levels(n, t, free_of, palette)
    counts = []
    frontier = [_root(n, t, palette)]
    for _ in range(comb(n, 2) + 1):
        counts.append(len(frontier))
        if not frontier:
            continue
        _, frontier = levels.step(frontier)
    return counts


def naive_class_count(n: int, t: int, edge_count: int, mode: str = PALETTE) -> int:
    """Enumerate every colored graph and dedupe by brute-force key. Tiny ``n`` only."""
    from itertools import combinations, product

    from .canon import brute_force_key

    pairs = list(combinations(range(n), 2))
    keys = set()
    for chosen in combinations(pairs, edge_count):
        for cols in product(range(1, t + 1), repeat=edge_count):
            g = EdgeColoredGraph(n, t, [(u, v, c) for (u, v), c in zip(chosen, cols)])
            keys.add(brute_force_key(g, mode))
    return len(keys)


# -- exact saturation numbers --------------------------------------------------------

@dataclass
class SearchResult:
    n: int
    t: int
    family: str
    sat_value: int | None  # None: no saturated graph at any edge count
    witnesses: list = field(default_factory=list)
    witness_count: int = 0
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "family": self.family,
            "sat_value": self.sat_value if self.sat_value is not None else "none",
            "witness_count": self.witness_count,
            "witnesses": [[list(e) for e in g.edges()] for g in self.witnesses],
            "stats": self.stats,
        }


def compute_sat(n: int, t: int, fam: ForbiddenFamily, jobs: int = 1, force: bool = False,
                witness_limit: int = DEFAULT_WITNESS_LIMIT, mode: str = PALETTE,
                verify: bool = True) -> SearchResult:
    """Exact ``sat_t(n, F)``: the first edge count at which some F-free
    graph has no F-free one-edge extension.

    Levels are explored in order of edge count, so the first saturated
    level is the minimum. Only colors up to one more than the largest used
    are tried as extensions, which loses nothing because every supported
    family is invariant under palette permutation.
    """
    start = time.perf_counter()
    check_palette(EdgeColoredGraph(n, t), fam)
    _check_guard(n, t, force)
    palette = normalize_mode(mode) == PALETTE
    levels = _Levels(n, t, fam, palette, jobs)
    frontier = [_root(n, t, palette)] if find_member(EdgeColoredGraph(n, t), fam) is None else []
    value, found = None, []
    try:
        for k in range(comb(n, 2) + 1):
            if not frontier:
                break
            levels.stats["enumerated"] += len(frontier)
            levels.stats["levels"].append(len(frontier))
            saturated, _ = levels.step(frontier, grow=False)
            if saturated:
                value, found = k, saturated
                break
            _, frontier = levels.step(frontier)
    finally:
        levels.close()
    witnesses = [EdgeColoredGraph.from_matrix(n, t, mat) for _, mat in found[:witness_limit]]
    if verify:
        for w in witnesses:
            rep = saturation_report(w, fam, witness_cap=1)
            if not rep.is_saturated:
                raise AssertionError(f"search produced a non-saturated witness: {rep.to_dict()}")
    stats = dict(levels.stats)
    stats["elapsed"] = round(time.perf_counter() - start, 3)
    stats["jobs"] = levels.jobs
    return SearchResult(n, t, fam.name, value, witnesses, len(found), stats)


# -- degree sequences ----------------------------------------------------------------

class NonGraphicalError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeSequence:
    values: tuple

    def __post_init__(self):
        vals = tuple(int(x) for x in self.values)
        if any(x < 0 for x in vals):
            raise NonGraphicalError(f"negative degree in {vals}")
        object.__setattr__(self, "values", tuple(sorted(vals, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "DegreeSequence":
        try:
            return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))
        except ValueError:
            raise NonGraphicalError(f"cannot parse degree sequence {text!r}") from None

    @property
    def n(self) -> int:
        return len(self.values)

    def is_graphical(self) -> bool:
        """Erdős–Gallai."""
        d = self.values
        if sum(d) % 2:
            return False
        n = len(d)
        for k in range(1, n + 1):
            lhs = sum(d[:k])
            rhs = k * (k - 1) + sum(min(x, k) for x in d[k:])
            if lhs > rhs:
                return False
        return True

    def __str__(self) -> str:
        return ",".join(map(str, self.values))


def havel_hakimi(seq: DegreeSequence) -> EdgeColoredGraph:
    """One uncolored realization; vertex ``i`` gets degree ``seq.values[i]``."""
    if not seq.is_graphical():
        raise NonGraphicalError(f"({seq}) is not graphical")
    left = list(seq.values)
    edges = []
    while True:
        order = sorted(range(len(left)), key=lambda i: (-left[i], i))
        v = order[0]
        d = left[v]
        if d == 0:
            break
        left[v] = 0
        for x in order[1:d + 1]:
            left[x] -= 1
            edges.append((min(v, x), max(v, x), 1))
    return EdgeColoredGraph(seq.n, 1, edges)


def realizations(seq: DegreeSequence) -> list[EdgeColoredGraph]:
    """Every uncolored realization up to isomorphism.

    Double-edge switches connect all realizations of a degree sequence, so
    a breadth-first walk from the Havel–Hakimi graph reaches each class.
    """
    start = havel_hakimi(seq)
    seen = {canonical_key(start): start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        edges = [(u, v) for u, v, _ in g.edges()]
        for i, (a, b) in enumerate(edges):
            for c, d in edges[i + 1:]:
                for x, y in ((c, d), (d, c)):
                    # replace ab, xy with ax, by
                    if len({a, b, x, y}) < 4 or g.has_edge(a, x) or g.has_edge(b, y):
                        continue
                    h = g.remove_edge(a, b).remove_edge(c, d).add_edge(min(a, x), max(a, x), 1)
                    h = h.add_edge(min(b, y), max(b, y), 1)
                    k = canonical_key(h)
                    if k not in seen:
                        seen[k] = h
                        queue.append(h)
    return [seen[k] for k in sorted(seen)]


def copies_needed(fam: ForbiddenFamily, t: int) -> int:
    """Host copies a non-edge must lie in (uncolored) before all ``t`` colors
    on it can complete a member.

    A copy whose other edges carry ``s`` distinct colors completes a member
    for ``s`` added colors when ``s = r`` and for ``t - s`` when ``s = r - 1``.
    """
    r, others = fam.colors, fam.host.num_edges - 1
    best = 0
    if 1 <= r <= others:
        best = max(best, r)
    if r == 1 and others == 0:
        best = max(best, t)
    if 1 <= r - 1 <= others:
        best = max(best, t - r + 1)
    if best == 0:
        return 1 << 30
    return -(-t // best)


@dataclass
class DegreeSearchResult:
    sequence: str
    t: int
    family: str
    found: bool
    witness: EdgeColoredGraph | None
    realizations: int
    screened_out: int
    colorings: int
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "sequence": self.sequence,
            "t": self.t,
            "family": self.family,
            "result": "found" if self.found else "none",
            "witness": [list(e) for e in self.witness.edges()] if self.witness else None,
            "realizations": self.realizations,
            "screened_out": self.screened_out,
            "colorings": self.colorings,
            "elapsed": round(self.elapsed, 3),
        }


def _edge_order(g: EdgeColoredGraph, needs: dict) -> list[tuple[int, int]]:
    """Edge order that completes the requirements of some non-edge as early as possible."""
    order, placed = [], set()
    pending = {p: set(es) for p, es in needs.items()}
    while pending:
        p = min(pending, key=lambda q: (len(pending[q] - placed), q))
        for e in sorted(pending.pop(p) - placed):
            placed.add(e)
            order.append(e)
    order.extend(e for e in ((u, v) for u, v, _ in g.edges()) if e not in placed)
    return order


def _color_realization(g: EdgeColoredGraph, t: int, fam: ForbiddenFamily, copies: dict, counter: list):
    needs = {p: frozenset(e for cp in cs for e in cp if e != p) for p, cs in copies.items()}
    order = _edge_order(g, needs)
    pos = {e: i for i, e in enumerate(order)}
    ready = [[] for _ in range(len(order) + 1)]
    for p, es in needs.items():
        ready[max((pos[e] + 1 for e in es), default=0)].append(p)
    empty = EdgeColoredGraph(g.n, t)
    if not all(creates_member_on_add(empty, a, b, col, fam) for a, b in ready[0] for col in range(1, t + 1)):
        return None

    def rec(i, h, top):
        if i == len(order):
            return h
        u, v = order[i]
        for c in range(1, min(t, top + 1) + 1):
            counter[0] += 1
            if creates_member_on_add(h, u, v, c, fam):
                continue
            h2 = h.add_edge(u, v, c)
            if all(creates_member_on_add(h2, a, b, col, fam) for a, b in ready[i + 1] for col in range(1, t + 1)):
                got = rec(i + 1, h2, max(top, c))
                if got is not None:
                    return got
        return None

    return rec(0, empty, 0)


def search_degree_sequence(seq: DegreeSequence, t: int, fam: ForbiddenFamily, force: bool = False,
                           guard: int | None = None, screen: bool = True) -> DegreeSearchResult:
    """Look for a saturated coloring of some realization of ``seq``.

    Each uncolored realization is first screened: every non-edge must lie
    in enough host copies (see :func:`copies_needed`). Survivors are
    colored edge by edge, colors up to one past the largest used, pruning
    as soon as a member appears or a non-edge whose copies are all colored
    can be added in some color without creating one. ``screen=False``
    skips the copy-count screen (slower; used to cross-check it).
    """
    start = time.perf_counter()
    if not seq.is_graphical():
        raise NonGraphicalError(f"({seq}) is not graphical")
    guard = int(os.environ.get("COLORSAT_GUARD", DEGSEQ_GUARD)) if guard is None else guard
    if seq.n > guard and not force:
        raise GuardExceeded(f"n={seq.n} exceeds the degree-sequence guard {guard}")
    check_palette(EdgeColoredGraph(seq.n, t), fam)
    reals = realizations(seq)
    need = copies_needed(fam, t) if screen else 0
    screened = 0
    counter = [0]
    for g in reals:
        copies = {}
        ok = True
        for u, v in g.non_edges():
            cs = copies_through(g, fam.host, u, v)
            if len(cs) < need:
                ok = False
                break
            copies[(u, v)] = cs
        if not ok:
            screened += 1
            continue
        w = _color_realization(g, t, fam, copies, counter)
        if w is not None:
            rep = saturation_report(w, fam, witness_cap=1)
            if not rep.is_saturated:
                raise AssertionError("degree-sequence search produced a non-saturated graph")
            return DegreeSearchResult(str(seq), t, fam.name, True, w, len(reals), screened, counter[0],
                                      time.perf_counter() - start)
    return DegreeSearchResult(str(seq), t, fam.name, False, None, len(reals), screened, counter[0],
                              time.perf_counter() - start)


# -- convexity bound ------------------------------------------------------------------

class InfeasibleSequenceError(ValueError):
    pass


def max_pairs_sum(caps, total: int, floor: int = 0) -> tuple[int, list[int]]:
    """Maximize ``sum C(x_i, 2)`` over integers ``floor <= x_i <= caps[i]``
    with ``sum x_i = total``.

    Start everything at ``floor`` and pour the rest into the largest caps
    first. The result majorizes every feasible sequence, so it maximizes
    any convex separable objective.
    """
    caps = list(caps)
    if any(c < floor for c in caps):
        raise InfeasibleSequenceError(f"some cap is below the floor {floor}")
    if not floor * len(caps) <= total <= sum(caps):
        raise InfeasibleSequenceError(f"total {total} outside [{floor * len(caps)}, {sum(caps)}]")
    x = [floor] * len(caps)
    left = total - floor * len(caps)
    for i in sorted(range(len(caps)), key=lambda i: (-caps[i], i)):
        add = min(left, caps[i] - floor)
        x[i] += add
        left -= add
    return sum(comb(v, 2) for v in x), x


def max_pairs_sum_brute(caps, total: int, floor: int = 0) -> int | None:
    """Exhaustive oracle for :func:`max_pairs_sum`; ``None`` if infeasible."""
    caps = list(caps)
    best = None
    suffix = [0] * (len(caps) + 1)
    for i in range(len(caps) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]

    def rec(i, left, acc):
        nonlocal best
        if i == len(caps):
            if left == 0 and (best is None or acc > best):
                best = acc
            return
        rest = len(caps) - i - 1
        for v in range(floor, caps[i] + 1):
            r = left - v
            if r < floor * rest:
                break
            if r > suffix[i + 1]:
                continue
            rec(i + 1, r, acc + comb(v, 2))

    rec(0, total, 0)
    return best

"""Explicit saturated (or bound-witnessing) colored graphs.

Each ``build_*`` returns an :class:`EdgeColoredGraph`; :func:`construct`
wraps one with a certificate recording the closed-form edge count it claims.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations
from math import comb

from .family import ForbiddenFamily, exactly, rainbow
from .graph import EdgeColoredGraph, complete_graph, disjoint_copies, star_graph

RED, BLUE = 1, 2


class ConstructionError(ValueError):
    pass


def build_prop3(n: int, t: int = 2) -> EdgeColoredGraph:
    """``K_{2,n-2}``: vertex 0 joined in red and vertex 1 in blue to ``2..n-1``."""
    if n < 5:
        raise ConstructionError(f"need n >= 5, got {n}")
    if t < 2:
        raise ConstructionError(f"need t >= 2, got {t}")
    edges = [(0, x, RED) for x in range(2, n)] + [(1, x, BLUE) for x in range(2, n)]
    return EdgeColoredGraph(n, t, edges)


def build_thm9(n: int, t: int) -> EdgeColoredGraph:
    """``K_{2,n-2}``: vertex 0 red to all of ``2..n-1``; vertex 1 blue to
    ``2..n-2`` and red to ``n-1``."""
    if n < 9 or t < 3:
        raise ConstructionError(f"need n >= 9 and t >= 3, got n={n}, t={t}")
    edges = [(0, x, RED) for x in range(2, n)]
    edges += [(1, x, BLUE) for x in range(2, n - 1)] + [(1, n - 1, RED)]
    return EdgeColoredGraph(n, t, edges)


def round_robin(m: int) -> list[list[tuple[int, int]]]:
    """The ``m - 1`` perfect matchings of the circle 1-factorization of ``K_m``."""
    if m % 2 or m < 2:
        raise ConstructionError(f"need a positive even order, got {m}")
    q = m - 1
    rounds = []
    for i in range(q):
        match = [(min(i, q), max(i, q))]
        for j in range(1, m // 2):
            a, b = (i + j) % q, (i - j) % q
            match.append((min(a, b), max(a, b)))
        rounds.append(match)
    return rounds


def matching_pack_split(n: int) -> tuple[int, int]:
    """``n = 2k + r`` with ``r`` in ``{1, 2}``."""
    r = 2 if n % 2 == 0 else 1
    return (n - r) // 2, r


def build_matching_pack(n: int, t: int, s: int) -> EdgeColoredGraph:
    """``t`` edge-disjoint perfect matchings (colors ``1..t``) on ``2k``
    vertices, plus a ``K_r`` in color 1 on the last ``r`` vertices."""
    if not t >= s - 1 >= 2:
        raise ConstructionError(f"need t >= s - 1 >= 2, got t={t}, s={s}")
    k, r = matching_pack_split(n)
    if k < 1 or 2 * k - 1 < t:
        raise ConstructionError(f"K_{2 * k} has no {t} disjoint perfect matchings (n={n})")
    edges = []
    for c, match in enumerate(round_robin(2 * k)[:t], start=1):
        edges.extend((a, b, c) for a, b in match)
    if r == 2:
        edges.append((2 * k, 2 * k + 1, 1))
    return EdgeColoredGraph(n, t, edges)


def base_clique_coloring(k1: int, colors: int) -> dict[tuple[int, int], int]:
    """Color ``K_{k1}`` with exactly ``colors`` colors: the first ``colors - 1``
    edges in lexicographic order get ``1..colors-1``, the rest get ``colors``."""
    pairs = list(combinations(range(k1), 2))
    if not 1 <= colors <= len(pairs):
        raise ConstructionError(f"K_{k1} cannot be colored with exactly {colors} colors")
    return {p: (i + 1 if i < colors - 1 else colors) for i, p in enumerate(pairs)}


def hsp_core_size(k: int, c: int, t: int) -> int:
    return comb(t, c - 1) * (k - 2)


def hsp_edge_bound(n: int, k: int, c: int, t: int) -> int:
    core = hsp_core_size(k, c, t)
    return core * (n - core) + comb(core, 2)


def build_hsp_union(n: int, k: int, c: int, t: int, complete: bool = True) -> EdgeColoredGraph:
    """Union over all ``(c-1)``-subsets ``S`` of ``[t]`` of ``K_{k-2} v I``.

    Each ``S`` gets its own ``K_{k-2}`` core; the independent set ``I`` (the
    last ``p = n - C(t, c-1)(k-2)`` vertices) is shared. Every vertex of
    ``I`` copies the colors of the duplicated clique vertex. With
    ``complete`` the union is greedily saturated for ``C_c(K_k)``.
    """
    if k < 3 or t < c or c < 2 or c > comb(k - 1, 2) + 1:
        raise ConstructionError(f"need k >= 3, 2 <= c <= C(k-1,2)+1, t >= c; got k={k}, c={c}, t={t}")
    core = hsp_core_size(k, c, t)
    p = n - core
    if p < 1:
        raise ConstructionError(f"n={n} leaves no room for the independent set (core has {core} vertices)")
    base = base_clique_coloring(k - 1, c - 1)
    dup = k - 2  # the clique vertex being duplicated
    independent = range(core, n)
    edges = []
    for j, subset in enumerate(combinations(range(1, t + 1), c - 1)):
        off = j * (k - 2)
        relabel = {i + 1: col for i, col in enumerate(subset)}
        for (a, b), col in base.items():
            if b < dup:
                edges.append((off + a, off + b, relabel[col]))
        for a in range(k - 2):
            col = relabel[base[(a, dup)]]
            edges.extend((off + a, x, col) for x in independent)
    g = EdgeColoredGraph(n, t, edges)
    if complete:
        from .saturation import greedy_saturate

        g = greedy_saturate(g, hsp_family(k, c))
    return g


def hsp_family(k: int, c: int) -> ForbiddenFamily:
    return exactly(c, complete_graph(k), f"K{k}")


def build_rainbow_matching_blocks(p: int, n: int, t: int) -> EdgeColoredGraph:
    """``p/2`` disjoint ``K_5`` blocks, each rainbow in colors ``1..10``."""
    if p < 2 or p % 2:
        raise ConstructionError(f"need p even and positive, got {p}")
    if n < 5 * p // 2 or t < 10:
        raise ConstructionError(f"need n >= 5p/2 and t >= 10, got n={n}, t={t}")
    edges = []
    for b in range(p // 2):
        off = 5 * b
        for col, (x, y) in enumerate(combinations(range(5), 2), start=1):
            edges.append((off + x, off + y, col))
    return EdgeColoredGraph(n, t, edges)


# -- certificates ---------------------------------------------------------------

@dataclass
class Certificate:
    name: str
    params: dict
    formula: str
    claimed_edges: int
    bound: str = "exact"  # "exact" or "at-most"

    def check(self, g: EdgeColoredGraph) -> bool:
        if self.bound == "exact":
            return g.num_edges == self.claimed_edges
        return g.num_edges <= self.claimed_edges

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Construction:
    graph: EdgeColoredGraph
    certificate: Certificate
    family: ForbiddenFamily


CONSTRUCTIONS = ("prop3", "thm9", "matching-pack", "hsp-union", "rainbow-k5-blocks")


def construct(name: str, **params) -> Construction:
    """Build a named construction together with its certificate and target family."""
    name = {"prop3-k2n2": "prop3", "thm9-k2n2": "thm9"}.get(name, name)
    if name == "prop3":
        n, t = params["n"], params.get("t", 2)
        return Construction(build_prop3(n, t), Certificate(name, {"n": n, "t": t}, "2n-4", 2 * n - 4),
                            exactly(2, complete_graph(3), "K3"))
    if name == "thm9":
        n, t = params["n"], params["t"]
        return Construction(build_thm9(n, t), Certificate(name, {"n": n, "t": t}, "2n-4", 2 * n - 4),
                            exactly(2, complete_graph(3), "K3"))
    if name == "matching-pack":
        n, t, s = params["n"], params["t"], params.get("s", 3)
        k, r = matching_pack_split(n)
        return Construction(build_matching_pack(n, t, s),
                            Certificate(name, {"n": n, "t": t, "s": s}, "t*k + C(r,2)", t * k + comb(r, 2)),
                            exactly(s - 1, star_graph(s), f"K1,{s}"))
    if name == "hsp-union":
        n, k, c, t = params["n"], params["k"], params["c"], params["t"]
        return Construction(build_hsp_union(n, k, c, t),
                            Certificate(name, {"n": n, "k": k, "c": c, "t": t},
                                        "C(t,c-1)(k-2)(n-C(t,c-1)(k-2)) + C(C(t,c-1)(k-2),2)",
                                        hsp_edge_bound(n, k, c, t), "at-most"),
                            hsp_family(k, c))
    if name == "rainbow-k5-blocks":
        p, n, t = params["p"], params["n"], params.get("t", 10)
        return Construction(build_rainbow_matching_blocks(p, n, t),
                            Certificate(name, {"p": p, "n": n, "t": t}, "5p", 5 * p),
                            rainbow(disjoint_copies(p + 1, complete_graph(2)), f"{p + 1}K2"))
    raise ConstructionError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")


def check_duplication(g: EdgeColoredGraph, core: list[int], twins: list[int]) -> bool:
    """Every vertex in ``twins`` sees ``core`` with identical colors."""
    if not twins:
        return True
    ref = [g.color(twins[0], a) for a in core]
    return all(g.color(x, a) == ref[i] for x in twins for i, a in enumerate(core)) and all(ref)

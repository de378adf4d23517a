import math
import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from colorsat.constructions import build_prop3, build_thm9
from colorsat.cover import (
    GuardExceeded, HypothesisViolation, MalformedCoverError, TPartiteCover, TPartiteGraph,
    complement_cover_bound, cover_is_valid, exact_cover_weight, kn_bound_holds, kn_lower_bound,
    kraft_minimum, saturated_to_cover, split_cover, star_cover,
)
from colorsat.graph import EdgeColoredGraph, complete_graph, empty_graph, path_graph
from colorsat.search import compute_sat
from colorsat.family import parse_family

from conftest import graphs, random_graph


def members(n, t):
    """Every t-partite member on n vertices up to part order, with >= 2 nonempty parts."""
    out = set()
    for assign in product(range(t + 1), repeat=n):  # 0 = unused
        parts = [frozenset(v for v in range(n) if assign[v] == i) for i in range(1, t + 1)]
        parts = tuple(sorted((p for p in parts if p), key=sorted))
        if len(parts) >= 2:
            out.add(parts)
    return [TPartiteGraph(p) for p in out]


def brute_f(h, t, max_weight):
    """Smallest cover weight <= max_weight by exhaustive search over member multisets."""
    need = {(u, v) for u, v, _ in h.edges()}
    pool = sorted(members(h.n, t), key=lambda m: m.weight)
    edges = [m.edges() for m in pool]
    best = [None]

    def rec(i, covered, w):
        if covered >= need:
            if best[0] is None or w < best[0]:
                best[0] = w
            return
        for j in range(i, len(pool)):
            nw = w + pool[j].weight
            if nw > max_weight or (best[0] is not None and nw >= best[0]):
                break
            if edges[j] - covered:
                rec(j, covered | edges[j], nw)

    rec(0, frozenset(), 0)
    return best[0]


def test_single_member_covers_k2():
    cover = TPartiteCover([TPartiteGraph.of({0}, {1})], complete_graph(2), 2)
    assert cover_is_valid(cover) and cover.weight == 2


def test_bipartite_member_misses_edge_of_k3():
    cover = TPartiteCover([TPartiteGraph.of({0}, {1, 2})], complete_graph(3), 2)
    assert not cover_is_valid(cover)


def test_overlapping_parts_rejected():
    with pytest.raises(MalformedCoverError):
        cover_is_valid(TPartiteCover([TPartiteGraph.of({0, 1}, {1})], complete_graph(2), 2))


def test_too_many_parts_rejected():
    with pytest.raises(MalformedCoverError):
        cover_is_valid(TPartiteCover([TPartiteGraph.of({0}, {1}, {2})], complete_graph(3), 2))


def test_reduction_needs_rainbow_paths():
    # the red/blue K_{2,n-2} is saturated, but twins see both hubs in one color each
    with pytest.raises(HypothesisViolation) as info:
        saturated_to_cover(build_prop3(11))
    assert info.value.non_edge == (2, 3)
    with pytest.raises(HypothesisViolation):
        saturated_to_cover(build_thm9(9, 3))


def test_reduction_on_single_vertex():
    cover = saturated_to_cover(empty_graph(1, 2))
    assert cover.weight == 0 and cover_is_valid(cover)


@pytest.mark.parametrize("n,t", [(4, 3), (5, 3), (5, 4)])
def test_reduction_on_rainbow_triangle_witnesses(n, t):
    fam = parse_family("rainbow(K3)")
    res = compute_sat(n, t, fam, witness_limit=5)
    assert res.witnesses
    for g in res.witnesses:
        cover = saturated_to_cover(g)
        assert cover_is_valid(cover)
        assert cover.weight == 2 * g.num_edges
        assert exact_cover_weight(g.complement(), t).value <= 2 * g.num_edges


@pytest.mark.parametrize("h,w", [(path_graph(3), 5), (empty_graph(4), 4), (complete_graph(3), 6)])
def test_star_cover_examples(h, w):
    cover = star_cover(h)
    assert cover_is_valid(cover) and cover.weight == w


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=8, max_t=1), st.data())
def test_star_cover_weight_identity(h, data):
    order = data.draw(st.permutations(range(h.n)))
    cover = star_cover(h, order)
    assert cover_is_valid(cover)
    assert cover.weight == h.num_edges + h.n


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9, max_t=1), st.integers(2, 4))
def test_split_cover_valid(h, t):
    cover = split_cover(h, t)
    assert cover_is_valid(cover)


def test_exact_small_examples():
    assert exact_cover_weight(complete_graph(2), 2).value == 2
    assert exact_cover_weight(empty_graph(5), 2).value == 0


@pytest.mark.parametrize("t", [2, 3])
def test_exact_k4_matches_exhaustive(t):
    res = exact_cover_weight(complete_graph(4), t)
    assert cover_is_valid(res.cover) and res.cover.weight == res.value
    assert brute_f(complete_graph(4), t, 12) == res.value


def test_exact_matches_exhaustive_on_random_graphs():
    rng = random.Random(41)
    for _ in range(25):
        h = random_graph(rng, rng.randint(2, 5), 1, rng.random())
        t = rng.choice([2, 3])
        res = exact_cover_weight(h, t)
        assert res.value == brute_f(h, t, h.num_edges + h.n)
        assert res.value == exact_cover_weight(h, t, kraft=False).value


def test_exact_budget():
    res = exact_cover_weight(complete_graph(4), 2, budget=5)
    assert res.value is None and res.cover is None


def test_exact_guard():
    with pytest.raises(GuardExceeded):
        exact_cover_weight(complete_graph(11), 2)


@pytest.mark.parametrize("n,t,want", [(4, 2, 8.0), (1, 2, 0.0), (1, 5, 0.0), (9, 3, 18.0)])
def test_kn_lower_bound(n, t, want):
    assert kn_lower_bound(n, t) == pytest.approx(want)


def test_kn_bound_exact_form():
    assert kn_bound_holds(8, 4, 2) and not kn_bound_holds(7, 4, 2)
    assert kn_bound_holds(18, 9, 3) and not kn_bound_holds(17, 9, 3)


@pytest.mark.parametrize("t", [2, 3])
def test_kn_values_meet_bound_and_grow_slowly(t):
    prev = 0
    for n in range(2, 7):
        f = exact_cover_weight(complete_graph(n), t).value
        assert f >= math.ceil(kn_lower_bound(n, t) - 1e-9)
        assert f <= prev + n
        prev = f


def test_kraft_minimum():
    assert kraft_minimum(2, [0, 0, 0, 0]) == 8
    assert kraft_minimum(3, [0] * 9) == 18
    assert kraft_minimum(2, [3, 0]) == 4


def test_complement_bound_empty():
    rep = complement_cover_bound(empty_graph(4), 2)
    assert rep.f_complement == rep.f_complete and rep.e_plus_n == 4
    assert rep.holds and rep.slack == 4


def test_complement_bound_one_edge():
    h = EdgeColoredGraph(4, 1, [(0, 1, 1)])
    rep = complement_cover_bound(h, 2)
    assert rep.holds and rep.e_plus_n == 5
    assert rep.f_complement == exact_cover_weight(h.complement(), 2).value


def test_complement_of_k4_minus_edge():
    h = complete_graph(4).remove_edge(0, 1)
    rep = complement_cover_bound(h, 2)
    assert rep.f_complement == exact_cover_weight(EdgeColoredGraph(4, 1, [(0, 1, 1)]), 2).value == 2


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6, max_t=1, min_n=2), st.integers(2, 3))
def test_complement_bound_holds(h, t):
    assert complement_cover_bound(h, t).holds

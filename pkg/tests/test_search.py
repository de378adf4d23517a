from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from colorsat.canon import brute_force_key, canonical_key
from colorsat.cover import GuardExceeded
from colorsat.family import exactly, find_member_generic, monochromatic, parse_family, rainbow_two_path_exists
from colorsat.graph import EdgeColoredGraph, complete_graph, star_graph
from colorsat.saturation import InfeasibleFamilyError, is_saturated, saturation_report
from colorsat.search import (
    DegreeSequence, InfeasibleSequenceError, NonGraphicalError, compute_sat, copies_needed,
    count_classes, enumerate_colored_graphs, enumeration_guard, havel_hakimi, max_pairs_sum,
    max_pairs_sum_brute, naive_class_count, realizations, search_degree_sequence,
)

C2K3 = parse_family("exact2(K3)")


def brute_sat(n, t, fam):
    """Fewest edges over every saturated t-coloring on n vertices."""
    pairs = list(combinations(range(n), 2))
    best = None
    for cols in product(range(t + 1), repeat=len(pairs)):
        e = sum(1 for c in cols if c)
        if best is not None and e >= best:
            continue
        g = EdgeColoredGraph(n, t, [(u, v, c) for (u, v), c in zip(pairs, cols) if c])
        if is_saturated(g, fam):
            best = e
    return best


def test_two_vertices_one_edge_palette():
    assert len(list(enumerate_colored_graphs(2, 2, 1, mode="palette"))) == 1
    assert len(list(enumerate_colored_graphs(2, 2, 1, mode="vertex"))) == 2


def test_uncolored_three_vertices():
    assert sum(len(list(enumerate_colored_graphs(3, 1, e))) for e in range(4)) == 4
    assert count_classes(3, 1) == [1, 1, 1, 1]


@pytest.mark.parametrize("mode", ["palette", "vertex"])
def test_triangle_colorings_match_naive(mode):
    got = list(enumerate_colored_graphs(3, 2, 3, mode=mode))
    assert len(got) == naive_class_count(3, 2, 3, mode)


@pytest.mark.parametrize("n,t", [(4, 2), (4, 3), (5, 2)])
@pytest.mark.parametrize("mode", ["palette", "vertex"])
def test_representatives_are_distinct_and_complete(n, t, mode):
    for e in range(comb(n, 2) + 1):
        reps = list(enumerate_colored_graphs(n, t, e, mode=mode))
        keys = {canonical_key(g, mode) for g in reps}
        assert len(keys) == len(reps)
        assert all(g.num_edges == e for g in reps)
        if n == 4:
            assert len(reps) == naive_class_count(n, t, e, mode)


def test_free_restriction():
    fam = C2K3
    reps = list(enumerate_colored_graphs(4, 2, 4, free_of=fam))
    assert reps and all(find_member_generic(g, fam) is None for g in reps)
    allreps = list(enumerate_colored_graphs(4, 2, 4))
    assert len(reps) == sum(1 for g in allreps if find_member_generic(g, fam) is None)


def test_out_of_range_edge_count():
    assert list(enumerate_colored_graphs(3, 2, 4)) == []


def test_enumeration_guard(monkeypatch):
    monkeypatch.delenv("COLORSAT_GUARD", raising=False)
    assert [enumeration_guard(t) for t in (1, 2, 3, 4)] == [9, 8, 7, 6]
    with pytest.raises(GuardExceeded):
        list(enumerate_colored_graphs(9, 2, 1))
    monkeypatch.setenv("COLORSAT_GUARD", "3")
    with pytest.raises(GuardExceeded):
        compute_sat(4, 2, C2K3)


def test_sat_of_mono_edge():
    res = compute_sat(3, 1, monochromatic(complete_graph(2), "K2"))
    assert res.sat_value == 0
    assert res.witnesses[0].num_edges == 0


@pytest.mark.parametrize("n,t,fam", [
    (3, 2, C2K3), (4, 2, C2K3), (5, 2, C2K3), (4, 3, C2K3),
    (4, 2, monochromatic(complete_graph(3), "K3")), (4, 3, parse_family("rainbow(K3)")),
    (4, 2, exactly(1, star_graph(3), "K1,3")), (4, 3, exactly(2, star_graph(3), "K1,3")),
])
def test_sat_matches_exhaustive(n, t, fam):
    assert compute_sat(n, t, fam).sat_value == brute_sat(n, t, fam)


def test_sat_six_vertices_two_colors():
    res = compute_sat(6, 2, C2K3)
    assert res.sat_value == 8
    assert res.witness_count >= len(res.witnesses) > 0
    for g in res.witnesses:
        rep = saturation_report(g, C2K3)
        assert rep.is_saturated and g.num_edges == res.sat_value


def test_witnesses_are_distinct_classes():
    res = compute_sat(6, 2, C2K3, witness_limit=100)
    keys = {canonical_key(g, "palette") for g in res.witnesses}
    assert len(keys) == len(res.witnesses)


@pytest.mark.parametrize("n,t", [(4, 3), (5, 3)])
def test_rainbow_paths_on_rainbow_triangle_witnesses(n, t):
    res = compute_sat(n, t, parse_family("rainbow(K3)"), witness_limit=100)
    for g in res.witnesses:
        assert all(rainbow_two_path_exists(g, u, v) for u, v in g.non_edges())


def test_parallel_matches_serial():
    a = compute_sat(6, 2, C2K3, jobs=1, witness_limit=100)
    b = compute_sat(6, 2, C2K3, jobs=2, witness_limit=100)
    assert a.sat_value == b.sat_value and a.witness_count == b.witness_count
    assert [g.edges() for g in a.witnesses] == [g.edges() for g in b.witnesses]
    assert a.stats["levels"] == b.stats["levels"]


def test_palette_too_small_for_family():
    with pytest.raises(InfeasibleFamilyError):
        compute_sat(4, 2, parse_family("rainbow(K3)"))


def test_result_serializes():
    d = compute_sat(4, 2, C2K3).to_dict()
    assert d["sat_value"] == 4 and d["family"] == "exact2(K3)"


# -- degree sequences --

def test_degree_sequence_parse_and_sort():
    seq = DegreeSequence.parse("2, 7,7,2,2,2,2,2,2")
    assert seq.values == (7, 7, 2, 2, 2, 2, 2, 2, 2) and seq.n == 9
    assert str(seq) == "7,7,2,2,2,2,2,2,2"


@pytest.mark.parametrize("vals,ok", [((3, 3, 3, 3), True), ((3, 3, 1, 1), False), ((1, 1, 1), False),
                                     ((4, 1, 1, 1), False), ((0,), True), ((2, 2, 2), True)])
def test_graphical(vals, ok):
    assert DegreeSequence(vals).is_graphical() == ok


def test_non_graphical_errors():
    with pytest.raises(NonGraphicalError):
        DegreeSequence((3, -1))
    with pytest.raises(NonGraphicalError):
        DegreeSequence.parse("3,x")
    with pytest.raises(NonGraphicalError):
        search_degree_sequence(DegreeSequence((3, 3, 1, 1)), 3, C2K3)


def test_havel_hakimi_realizes():
    seq = DegreeSequence((7, 6, 3, 2, 2, 2, 2, 2, 2))
    g = havel_hakimi(seq)
    assert tuple(sorted(g.degrees(), reverse=True)) == seq.values


def _uncolored_classes(seq):
    n = seq.n
    pairs = list(combinations(range(n), 2))
    m = sum(seq.values) // 2
    keys = set()
    for chosen in combinations(pairs, m):
        g = EdgeColoredGraph(n, 1, [(u, v, 1) for u, v in chosen])
        if tuple(sorted(g.degrees(), reverse=True)) == seq.values:
            keys.add(brute_force_key(g))
    return len(keys)


@pytest.mark.parametrize("vals", [(2, 2, 2, 2, 2, 2), (3, 3, 2, 2, 1, 1), (3, 3, 3, 3, 3, 3), (4, 3, 3, 2, 2, 2)])
def test_realizations_complete(vals):
    seq = DegreeSequence(vals)
    reals = realizations(seq)
    assert len(reals) == _uncolored_classes(seq)
    assert all(tuple(sorted(g.degrees(), reverse=True)) == seq.values for g in reals)


def test_copies_needed():
    assert copies_needed(C2K3, 3) == 2
    assert copies_needed(C2K3, 2) == 1
    assert copies_needed(parse_family("rainbow(K3)"), 3) == 3
    assert copies_needed(monochromatic(complete_graph(3), "K3"), 4) == 4


@pytest.mark.parametrize("vals", [(7, 6, 3, 2, 2, 2, 2, 2, 2), (8, 6, 2, 2, 2, 2, 2, 2, 2)])
def test_sequences_with_no_saturated_coloring(vals):
    res = search_degree_sequence(DegreeSequence(vals), 3, C2K3)
    assert not res.found and res.witness is None


def test_sequence_with_k2n2_coloring():
    res = search_degree_sequence(DegreeSequence((7, 7, 2, 2, 2, 2, 2, 2, 2)), 3, C2K3)
    assert res.found
    assert is_saturated(res.witness, C2K3)
    assert sorted(res.witness.degrees(), reverse=True) == [7, 7] + [2] * 7


@pytest.mark.parametrize("vals", [(3, 3, 2, 2, 2, 2), (4, 4, 2, 2, 2, 2), (3, 3, 3, 3, 2, 2)])
def test_screen_does_not_change_answers(vals):
    seq = DegreeSequence(vals)
    a = search_degree_sequence(seq, 3, C2K3)
    b = search_degree_sequence(seq, 3, C2K3, screen=False)
    assert a.found == b.found


def test_sequence_search_agrees_with_enumeration():
    # at n=6, t=2 a saturated graph with e edges exists iff some degree sequence has one
    res = compute_sat(6, 2, C2K3, witness_limit=1000)
    seqs = {tuple(sorted(g.degrees(), reverse=True)) for g in res.witnesses}
    for vals in seqs:
        assert search_degree_sequence(DegreeSequence(vals), 2, C2K3).found


def test_degree_sequence_guard():
    with pytest.raises(GuardExceeded):
        search_degree_sequence(DegreeSequence((2,) * 11), 3, C2K3)


# -- convexity bound --

def test_pairs_sum_eleven():
    n = 11
    caps = [n - 7] + [3] * (n - 1)
    value, seq = max_pairs_sum(caps, sum(caps), floor=3)
    assert value == comb(4, 2) + 10 * comb(3, 2) == 36
    assert value == n * n / 2 - 9 * n / 2 + 25


def test_pairs_sum_all_at_floor():
    assert max_pairs_sum([4] * 5, 20, floor=4) == (5 * comb(4, 2), [4] * 5)


def test_pairs_sum_nine():
    n = 9
    caps = [n - 1, n - 5, 4] + [2] * (n - 3)
    total = sum(caps)
    want = comb(8, 2) + comb(4, 2) + comb(4, 2) + 6
    assert max_pairs_sum(caps, total, floor=2)[0] == want == max_pairs_sum_brute(caps, total, floor=2)


def test_pairs_sum_infeasible():
    with pytest.raises(InfeasibleSequenceError):
        max_pairs_sum([3, 1], 4, floor=2)
    with pytest.raises(InfeasibleSequenceError):
        max_pairs_sum([3, 3], 7)
    assert max_pairs_sum_brute([3, 3], 7) is None


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=1, max_size=7), st.integers(0, 3), st.data())
def test_pairs_sum_matches_brute_force(caps, floor, data):
    caps = [max(c, floor) for c in caps]
    total = data.draw(st.integers(floor * len(caps), sum(caps)))
    value, seq = max_pairs_sum(caps, total, floor)
    assert value == max_pairs_sum_brute(caps, total, floor)
    assert sum(seq) == total and all(floor <= x <= c for x, c in zip(seq, caps))

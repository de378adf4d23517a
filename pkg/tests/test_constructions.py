from itertools import combinations

import pytest

from colorsat.constructions import (
    CONSTRUCTIONS, ConstructionError, build_hsp_union, build_matching_pack, build_prop3,
    build_rainbow_matching_blocks, build_thm9, check_duplication, construct, hsp_core_size, hsp_edge_bound,
    hsp_family, round_robin,
)
from colorsat.family import exactly, find_member_generic, parse_family
from colorsat.graph import complete_graph, star_graph
from colorsat.saturation import is_saturated, saturation_report

C2K3 = parse_family("exact2(K3)")
C2K13 = exactly(2, star_graph(3), "K1,3")
R3K2 = parse_family("rainbow(3K2)")
R2K2 = parse_family("rainbow(2K2)")


@pytest.mark.parametrize("n", [11, 12, 30, 100])
def test_k2n2_red_blue(n):
    g = build_prop3(n)
    assert g.num_edges == 2 * n - 4
    rep = saturation_report(g, C2K3)
    assert rep.is_free and rep.deficiency == 0


def test_k2n2_small_n_reports():
    g = build_prop3(5)
    assert g.num_edges == 6
    # below the range where the count is claimed optimal; only report
    rep = saturation_report(g, C2K3)
    assert rep.is_free


@pytest.mark.parametrize("n,t", [(9, 3), (9, 5), (50, 3), (20, 4)])
def test_k2n2_one_red(n, t):
    g = build_thm9(n, t)
    assert g.num_edges == 2 * n - 4
    assert is_saturated(g, C2K3)


@pytest.mark.parametrize("bad", [dict(n=4), dict(n=11, t=1)])
def test_k2n2_preconditions(bad):
    with pytest.raises(ConstructionError):
        build_prop3(**bad)


def test_one_red_preconditions():
    with pytest.raises(ConstructionError):
        build_thm9(8, 3)
    with pytest.raises(ConstructionError):
        build_thm9(10, 2)


@pytest.mark.parametrize("m", [2, 4, 6, 8, 12])
def test_round_robin_is_a_factorization(m):
    rounds = round_robin(m)
    assert len(rounds) == m - 1
    seen = set()
    for match in rounds:
        assert sorted(v for e in match for v in e) == list(range(m))
        seen |= set(match)
    assert seen == set(combinations(range(m), 2))


@pytest.mark.parametrize("n,t,s,edges", [(9, 3, 3, 12), (10, 3, 3, 13), (8, 2, 3, 7), (11, 4, 4, 20)])
def test_matching_pack_counts(n, t, s, edges):
    g = build_matching_pack(n, t, s)
    assert g.num_edges == edges
    assert 2 * g.num_edges < t * n


@pytest.mark.parametrize("n,t,s", [(8, 2, 3), (9, 3, 3), (10, 3, 3), (14, 3, 4), (15, 4, 4)])
def test_matching_pack_even_part(n, t, s):
    g = build_matching_pack(n, t, s)
    even = n - (2 if n % 2 == 0 else 1)
    for v in range(even):
        assert sorted(g.color(v, x) for x in g.neighbors(v)) == list(range(1, t + 1))


@pytest.mark.parametrize("n,t,s", [(9, 3, 3), (10, 3, 3), (13, 3, 4), (16, 4, 4)])
def test_matching_pack_saturated(n, t, s):
    fam = exactly(s - 1, star_graph(s), f"K1,{s}")
    g = build_matching_pack(n, t, s)
    assert find_member_generic(g, fam) is None
    assert is_saturated(g, fam)


def test_matching_pack_preconditions():
    with pytest.raises(ConstructionError):
        build_matching_pack(9, 1, 3)
    with pytest.raises(ConstructionError):
        build_matching_pack(5, 4, 3)


@pytest.mark.parametrize("k,c,t,n", [(3, 2, 2, 12), (4, 3, 3, 20), (4, 4, 4, 40), (4, 2, 3, 15)])
def test_duplication_graph(k, c, t, n):
    base = build_hsp_union(n, k, c, t, complete=False)
    fam = hsp_family(k, c)
    core = hsp_core_size(k, c, t)
    assert find_member_generic(base, fam) is None
    twins = list(range(core, n))
    for j in range(core // (k - 2)):
        assert check_duplication(base, list(range(j * (k - 2), (j + 1) * (k - 2))), twins)
    g = build_hsp_union(n, k, c, t)
    assert is_saturated(g, fam)
    assert g.num_edges <= hsp_edge_bound(n, k, c, t)


def test_duplication_bound_value():
    assert hsp_edge_bound(40, 4, 4, 4) == 4 * 2 * (40 - 8) + 28


def test_duplication_preconditions():
    with pytest.raises(ConstructionError):
        build_hsp_union(20, 4, 5, 5)
    with pytest.raises(ConstructionError):
        build_hsp_union(8, 4, 4, 4)


def test_check_duplication_detects_mismatch():
    g = build_hsp_union(10, 3, 2, 2, complete=False)
    assert check_duplication(g, [0], [2, 3, 4])
    assert not check_duplication(g, [0], [1, 2])


def test_rainbow_blocks_single():
    g = build_rainbow_matching_blocks(2, 10, 10)
    assert g.num_edges == 10
    assert sorted(c for _, _, c in g.edges()) == list(range(1, 11))
    assert all(g.degree(v) == 0 for v in range(5, 10))
    assert is_saturated(g, R3K2)


def test_rainbow_blocks_two():
    g = build_rainbow_matching_blocks(4, 20, 10)
    assert g.num_edges == 20
    assert [g.degree(v) for v in range(10)] == [4] * 10


def test_rainbow_k5_alone():
    g = build_rainbow_matching_blocks(2, 5, 10)
    assert find_member_generic(g, R2K2) is not None
    assert find_member_generic(g, R3K2) is None


def test_rainbow_blocks_preconditions():
    for args in [(3, 10, 10), (2, 4, 10), (2, 10, 9)]:
        with pytest.raises(ConstructionError):
            build_rainbow_matching_blocks(*args)


@pytest.mark.parametrize("name,params", [
    ("prop3", dict(n=11, t=2)), ("prop3-k2n2", dict(n=13)), ("thm9", dict(n=9, t=3)),
    ("thm9-k2n2", dict(n=12, t=4)), ("matching-pack", dict(n=9, t=3, s=3)),
    ("hsp-union", dict(n=20, k=4, c=3, t=3)), ("rainbow-k5-blocks", dict(p=2, n=10, t=10)),
])
def test_certificates_hold(name, params):
    c = construct(name, **params)
    assert c.certificate.check(c.graph)
    assert is_saturated(c.graph, c.family)
    assert c.certificate.to_dict()["claimed_edges"] == c.certificate.claimed_edges


def test_certificate_catches_wrong_count():
    c = construct("prop3", n=11)
    assert not c.certificate.check(c.graph.remove_edge(0, 2))


def test_unknown_construction():
    with pytest.raises(ConstructionError):
        construct("petersen", n=10)
    assert "matching-pack" in CONSTRUCTIONS

import random

import pytest
from hypothesis import given, settings, strategies as st

from colorsat import kernels
from colorsat._kernels_py import canon_label as py_canon, tri_find as py_find, tri_scan as py_scan
from colorsat.canon import brute_force_key, canonical_form, canonical_key
from colorsat.constructions import build_matching_pack, build_prop3, build_thm9
from colorsat.graph import EdgeColoredGraph

from conftest import graphs, random_graph

TRI_112 = EdgeColoredGraph(3, 3, [(0, 1, 1), (1, 2, 1), (0, 2, 2)])


def test_relabeled_triangle_same_key():
    other = EdgeColoredGraph(3, 3, [(0, 1, 2), (1, 2, 1), (0, 2, 1)])
    assert canonical_key(TRI_112, "vertex") == canonical_key(other, "vertex")


def test_palette_swap_same_key():
    swapped = EdgeColoredGraph(3, 3, [(0, 1, 2), (1, 2, 2), (0, 2, 1)])
    assert canonical_key(TRI_112, "palette") == canonical_key(swapped, "palette")
    assert canonical_key(TRI_112, "vertex") != canonical_key(swapped, "vertex")


@pytest.mark.parametrize("mode", ["vertex", "palette"])
def test_rainbow_triangle_differs(mode):
    rainbow = EdgeColoredGraph(3, 3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])
    assert canonical_key(TRI_112, mode) != canonical_key(rainbow, mode)


def test_canonical_graph_is_a_representative():
    g = build_thm9(10, 3)
    perm = [3, 9, 0, 1, 8, 2, 7, 4, 6, 5]
    form = canonical_form(g)
    assert form.graph == canonical_form(g.relabel(perm)).graph
    assert canonical_key(form.graph) == form.key
    assert sorted(form.lab) == list(range(g.n))


@pytest.mark.parametrize("g", [build_prop3(11), build_thm9(12, 3), build_matching_pack(10, 3, 3),
                               random_graph(random.Random(3), 9, 3)],
                         ids=["k2n2-red-blue", "k2n2-one-red", "matching-pack", "random"])
@pytest.mark.parametrize("mode", ["vertex", "palette"])
def test_key_invariant_under_relabeling(g, mode):
    rng = random.Random(7)
    key = canonical_key(g, mode)
    trials = 1000 if mode == "vertex" else 200
    for _ in range(trials):
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        if mode == "palette":
            cols = list(range(1, g.t + 1))
            rng.shuffle(cols)
            h = h.recolor({c: cols[c - 1] for c in range(1, g.t + 1)})
        assert canonical_key(h, mode) == key


@pytest.mark.parametrize("mode", ["vertex", "palette"])
def test_agrees_with_brute_force(mode):
    # equal keys iff equal brute-force keys, on random small pairs
    rng = random.Random(11)
    for _ in range(300):
        n, t = rng.randint(1, 5), rng.randint(1, 3)
        a = random_graph(rng, n, t, rng.random())
        b = random_graph(rng, n, t, rng.random())
        if rng.random() < 0.3:
            perm = list(range(n))
            rng.shuffle(perm)
            b = a.relabel(perm)
        same = canonical_key(a, mode) == canonical_key(b, mode)
        assert same == (brute_force_key(a, mode) == brute_force_key(b, mode))


def test_k2n2_large_is_fast_enough():
    # many twins; needs automorphism pruning to stay polynomial
    g = build_prop3(60)
    perm = list(range(60))[::-1]
    assert canonical_key(g) == canonical_key(g.relabel(perm))


@pytest.mark.skipif(len(kernels.backends()) < 2, reason="compiled kernels not built")
@settings(max_examples=300, deadline=None)
@given(graphs(max_n=10, max_t=4), st.integers(1, 3))
def test_backends_agree(g, r):
    fast = kernels.backends()["cython"]
    mat = g.matrix
    assert fast.canon_label(g.n, mat, g.t) == py_canon(g.n, mat, g.t)
    assert fast.tri_scan(g.n, mat, g.t, r, 5, False) == py_scan(g.n, mat, g.t, r, 5, False)
    assert fast.tri_find(g.n, mat, g.t, r) == py_find(g.n, mat, g.t, r)


def test_large_graphs_fall_back():
    g = build_prop3(80)
    enc, lab = kernels.canon_label(g.n, g.matrix, g.t)
    assert sorted(lab) == list(range(80))

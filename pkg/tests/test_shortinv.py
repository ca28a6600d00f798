import numpy as np
import pytest
from scipy.optimize import nnls

from coxlow.shortinv import (build_graph, descending_witness, descent_roots, has_edge,
                             opposite_check, sandwich_check, short_inversions, graph_dot)
from shared import system
from oracles import MatrixGroup, float_coords, rkey

SWEEP = ["H3", "nonconvex3", "universal3", "triangle334", "linear73", "affineB2", "rank4example"]


@pytest.fixture
def h3_example(H3):
    w = H3.element("312121321")
    a1, a2, a3 = H3.simple_roots
    a23 = H3.root_from_word("3", 2)
    beta = H3.root_from_word("31212132", 1)
    return H3, w, a1, a3, a23, beta


def test_short_inversions_h3(h3_example):
    H3, w, a1, a3, a23, beta = h3_example
    assert short_inversions(H3.identity) == ()
    assert set(short_inversions(w)) == {a1, a3, a23, beta}
    assert [r.dp for r in (a1, a23, beta)] == [0, 1, 6]
    assert beta.reflection().length == 13


def test_short_inversions_universal():
    W = system("universal3")
    w = W.element("123")
    want = {W.simple(1), W.root_from_word("1", 2), W.root_from_word("12", 3)}
    assert set(short_inversions(w)) == want == set(w.inv)


@pytest.mark.parametrize("name", SWEEP)
def test_short_inversions_against_matrix_lengths(name):
    """beta is short iff l(s_beta w) = l(w) - 1, measured in the matrix Cayley graph."""
    W = system(name)
    M = MatrixGroup(W.matrix_json())
    radius = 6
    oracle = M.ball(radius)
    for w in W.ball(radius):
        Mw = M.matrix(w.word)
        short = set()
        for r in w.inv:
            v = float_coords(r)
            R = np.eye(W.rank) - 2 * np.outer(v, v @ M.B) / (v @ M.B @ v)
            if len(oracle[M.key(R @ Mw)]) == w.length - 1:
                short.add(rkey(v))
        assert {rkey(float_coords(r)) for r in short_inversions(w)} == short


def test_descent_roots(h3_example):
    H3, w, a1, a3, a23, beta = h3_example
    assert descent_roots(H3.identity) == (frozenset(), frozenset())
    left, right = descent_roots(w)
    assert left == {a1, a3} and right == {a1, beta}
    W = system("rank4example")
    _, right = descent_roots(W.element("412343"))
    assert right == {W.root_from_word("1", 4), W.root_from_word("412", 3)}


def test_edges_h3(h3_example):
    H3, w, a1, a3, a23, beta = h3_example
    assert has_edge(w, a3, a23)
    assert not has_edge(w, a1, a3) and not has_edge(w, a3, a1)
    assert has_edge(w, a23, beta)
    g = build_graph(w)
    assert g.hasse == {(a3, a23), (a23, beta)}
    assert g.minimal() == {a1, a3} and g.maximal() == {a1, beta}


def test_graph_rank4_examples():
    W = system("rank4example")
    g = build_graph(W.element("412343"))
    a4 = W.simple(4)
    r412 = W.root_from_word("412", 3)
    r41 = W.root_from_word("41", 2)
    assert g.edges == {(a4, r41), (a4, r412), (a4, W.root_from_word("1", 4)), (r41, r412)}
    g = build_graph(W.element("1234232314"))
    assert len(g.vertices) == 6 and len(g.edges) == 12 and len(g.hasse) == 6
    left, right = descent_roots(g.element)
    assert left == {W.simple(1)} and len(right) == 1
    assert sandwich_check(g.element, g)
    assert not build_graph(W.identity).edges


@pytest.mark.parametrize("name", SWEEP)
def test_graph_properties(name):
    W = system(name)
    for w in W.ball(6):
        g = build_graph(w)
        order = {r: i for i, r in enumerate(w.inversion_list())}
        verts = g.vertices
        for a in verts:
            for b in verts:
                if a is not b:
                    # never both directions
                    assert not (has_edge(w, a, b) and has_edge(w, b, a))
        for a, b in g.poset:
            assert order[a] < order[b]
            assert a.dp <= b.dp and a.dp_inf <= b.dp_inf
        for a, b in zip(W.simple_roots, W.simple_roots[1:]):
            assert not has_edge(w, a, b) and not has_edge(w, b, a)


@pytest.mark.parametrize("name", ["H3", "nonconvex3", "triangle334", "rank4example"])
def test_short_inversions_of_reduced_products(name):
    W = system(name)
    ball = W.ball(4)
    for x in ball:
        for w in ball:
            xw = x * w
            if xw.length != x.length + w.length:
                continue
            sw = set(short_inversions(w))
            for a in short_inversions(xw):
                if a not in x.inv:
                    assert x.act_inverse(a) in sw


def test_witness_examples(h3_example):
    H3, w, a1, a3, a23, beta = h3_example
    wit = descending_witness(w, a23)
    assert wit.root is a3 and wit.case == "descent"
    assert descending_witness(w, a1).case == "simple"
    wit = descending_witness(w, beta, g=H3.element("231212"))
    assert wit.root is a23 and wit.case == "coset"
    wit = descending_witness(w, beta, g=H3.element("123212"))
    assert wit.root is a23 and wit.case == "prefix"
    with pytest.raises(ValueError):
        descending_witness(w, beta, g=H3.element("12"))


@pytest.mark.parametrize("name", SWEEP)
def test_witness_chains_reach_simple_roots(name):
    W = system(name)
    for w in W.ball(6):
        for b in short_inversions(w):
            steps = 0
            while True:
                wit = descending_witness(w, b)
                if wit.root is None:
                    break
                assert wit.root.dp < b.dp and wit.root in short_inversions(w)
                b = wit.root
                steps += 1
            assert b.simple_index() is not None and steps <= w.length


def test_opposite_examples(A2):
    W = system("rank4example")
    w = W.element("412343")
    assert w.inverse() is W.element("343214")
    assert opposite_check(w)
    assert opposite_check(W.identity)
    for x in A2.ball(6):
        assert opposite_check(x)


@pytest.mark.parametrize("name", ["nonconvex3", "H3", "linear73"])
def test_opposite_sweep(name):
    for w in system(name).ball(5):
        assert opposite_check(w)


def test_sandwich_nonconvex3_ball():
    W = system("nonconvex3")
    for w in W.ball(8):
        assert sandwich_check(w)


@pytest.mark.parametrize("name", ["H3", "nonconvex3", "triangle334", "affineA2"])
def test_cone_spanned_by_short_inversions(name):
    """Each inversion is a nonnegative combination of the short inversions (rank 3)."""
    W = system(name)
    for w in W.ball(6):
        if w.length == 0:
            continue
        A = np.array([float_coords(r) for r in short_inversions(w)]).T
        for r in w.inv:
            _, resid = nnls(A, float_coords(r))
            assert resid < 1e-7


def test_graph_dot(h3_example):
    H3, w, *_ = h3_example
    g = build_graph(w)
    dot = graph_dot(g)
    assert dot.startswith("digraph shortinv {") and dot.count("->") == len(g.edges)
    assert graph_dot(g, hasse=True).count("->") == 2
    assert "(a" in dot
    assert graph_dot(g) == dot

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import brute_force_decoration, graph, random_class, random_untwisted_class
from nahgraph.classify import (CaseNode, bounded_decoration_search, check_decorated, classify, decoration_feasibility,
                               fission_forest, is_acute_isosceles, is_complete_multipartite, realize_untwisted,
                               verify_certificate)
from nahgraph.diagram import DecoratedDiagram, Diagram, build_diagram, edge_multiplicity, irregular_class
from nahgraph.errors import NotAGraph, NotSimplyLaced, SizeLimit, TwistedTree, UltrametricViolation
from nahgraph.io import parse_factor, parse_irregular_class
from nahgraph.puiseux import circle_of
from nahgraph.tree import build_tree

TRIANGLE_346 = graph([[0, 3, 4], [3, 0, 6], [4, 6, 0]])
TRIANGLE_001 = graph([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
PRIME_SQUARE = graph([[0, 2, 3, 5], [2, 0, 7, 11], [3, 7, 0, 13], [5, 11, 13, 0]])
FOUR = graph([[0, 1, 2, 2], [1, 0, 2, 2], [2, 2, 0, 0], [2, 2, 0, 0]])
PENTAGON = graph([[1 if abs(i - j) in (1, 4) else 0 for j in range(5)] for i in range(5)])
K23 = graph([[0, 0, 1, 1, 1], [0, 0, 1, 1, 1], [1, 1, 0, 0, 0], [1, 1, 0, 0, 0], [1, 1, 0, 0, 0]])


def rebuilt_matrix(g):
    tree = fission_forest(g)
    from nahgraph.classify import leaf_factors
    factors = leaf_factors(tree)
    d = build_diagram(realize_untwisted(tree))
    order = [circle_of(factors[l]) for l in tree.leaves]
    return d.diagram.reordered(order).B


def test_acute_isosceles_examples():
    ok, t = is_acute_isosceles(TRIANGLE_346)
    assert not ok and t == (0, 1, 2)
    assert is_acute_isosceles(graph([[0, 0, 1], [0, 0, 1], [1, 1, 0]]))[0]
    assert is_acute_isosceles(FOUR)[0]
    with pytest.raises(NotAGraph):
        is_acute_isosceles(graph([[2, 0], [0, 0]]))
    with pytest.raises(NotAGraph):
        is_acute_isosceles(graph([[0, -1], [-1, 0]]))


def test_forest_examples():
    t = fission_forest(FOUR)
    h = lambda a, b: t.node(t.ancestor(a, b)).height
    assert h(2, 3) < h(0, 1) < h(0, 2) and h(0, 2) == h(1, 3)
    # the pair with no edge joins lowest
    assert (h(2, 3), h(0, 1), h(0, 2)) == (2, 3, 4)
    single = fission_forest(graph([[0]]))
    assert single.leaves == [0]
    eq = fission_forest(graph([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
    root = eq.ancestor(0, 1)
    assert root == eq.ancestor(0, 2) == eq.ancestor(1, 2) and len(eq.children()[root]) == 3


def test_realize_examples():
    witness = realize_untwisted(fission_forest(FOUR))
    assert rebuilt_matrix(FOUR) == FOUR.B
    assert len(witness) == 4
    assert str(realize_untwisted(fission_forest(graph([[0]])))) == "<z^(1)>"
    two = realize_untwisted(fission_forest(graph([[0, 2], [2, 0]])))
    a, b = two.circles
    assert edge_multiplicity(a, b) == 2
    assert max(set(a.exponents) ^ set(b.exponents) | {k for k in a.exponents if a.rep.coefficient(k) != b.rep.coefficient(k)}) == 3


def test_own_witness_for_four_vertex_graph():
    texts = ["-z^3-z", "-z^3+z", "z^3-z^2", "z^3+z^2"]
    circles = [circle_of(parse_factor(s)) for s in texts]
    d = build_diagram(irregular_class(circles))
    # the pair without an edge is the pair differing in the linear term only
    order = [circles[2], circles[3], circles[0], circles[1]]
    assert d.diagram.reordered(order).B == FOUR.B


def test_twisted_tree_rejected():
    t = build_tree(parse_irregular_class("<z^(3/2)>+<z^(5/3)>"))
    with pytest.raises(TwistedTree):
        realize_untwisted(t)


def test_check_decorated_examples():
    d1 = build_diagram(parse_irregular_class("<z^(5/3)>+<z^(3/2)>+<z^(7/3)>"))
    assert check_decorated(d1)[0]
    d2 = build_diagram(parse_irregular_class("<z^(5/2)+z^(7/3)>+<z^(5/2)+z^(5/4)>+<z^(5/2)>"))
    assert check_decorated(d2)[0]
    assert sorted(d2.r) == [2, 4, 6]
    ok, why = check_decorated(DecoratedDiagram(TRIANGLE_001, (1, 1, 1)))
    assert not ok and "triangle" in why


@pytest.mark.parametrize("g", [TRIANGLE_001, PRIME_SQUARE, PENTAGON], ids=["001", "primes", "pentagon"])
def test_infeasible_examples(g):
    res = decoration_feasibility(g)
    assert res.status == "infeasible"
    assert verify_certificate(g, res.certificate)
    assert brute_force_decoration(g, 8) is None if g.size <= 4 else bounded_decoration_search(g, 8) is None


def test_certificate_tampering_detected():
    res = decoration_feasibility(PRIME_SQUARE)
    cert = res.certificate
    assert isinstance(cert, CaseNode)
    cert.branches = cert.branches[:-1]
    assert not verify_certificate(PRIME_SQUARE, cert)


def test_triangle_346_is_candidate():
    res = decoration_feasibility(TRIANGLE_346)
    assert res.feasible
    assert check_decorated(DecoratedDiagram(TRIANGLE_346, res.r))[0]
    # the ramification decoration of the realizing circles lies in the feasible cone
    d = build_diagram(parse_irregular_class("<z^3>+<z^(4/3)>+<z^(3/2)>"))
    assert check_decorated(d)[0]
    assert brute_force_decoration(TRIANGLE_346, 6) is not None
    # the decoration (1, 3, 2) in the order <z^3>, <z^(4/3)>, <z^(3/2)>
    assert check_decorated(DecoratedDiagram(graph([[0, 6, 4], [6, 0, 3], [4, 3, 0]]), (1, 3, 2)))[0]
    v = classify(TRIANGLE_346)
    assert v.tag == "Candidate" and min(v.witness) >= 1


def test_classify_examples():
    assert classify(PENTAGON).tag == "NotNAH"
    v = classify(K23)
    assert v.tag == "FissionGraph"
    ok, parts = is_complete_multipartite(K23)
    assert ok and sorted(map(len, parts)) == [2, 3]
    # the witness reproduces the graph
    order = [v.assignment[x] for x in K23.vertices]
    assert build_diagram(v.witness).diagram.reordered(order).B == K23.B


def test_multipartite_examples():
    # a path with three edges contains an edge plus a vertex joined to neither end
    p4 = graph([[1 if abs(i - j) == 1 else 0 for j in range(4)] for i in range(4)])
    assert not is_complete_multipartite(p4)[0]
    assert not is_complete_multipartite(TRIANGLE_001)[0]
    # the path with two edges is the complete bipartite graph K_{1,2}
    ok, parts = is_complete_multipartite(graph([[0, 1, 0], [1, 0, 1], [0, 1, 0]]))
    assert ok and sorted(map(len, parts)) == [1, 2]
    k4 = graph([[int(i != j) for j in range(4)] for i in range(4)])
    ok, parts = is_complete_multipartite(k4)
    assert ok and len(parts) == 4
    with pytest.raises(NotSimplyLaced):
        is_complete_multipartite(FOUR)


def test_size_limit_and_fallback():
    big = graph([[1 if abs(i - j) == 1 else 0 for j in range(9)] for i in range(9)])
    with pytest.raises(SizeLimit):
        decoration_feasibility(big, fallback=False)
    res = decoration_feasibility(big, r_max=3)
    assert res.status == "unknown" and not res.complete
    v = classify(big, r_max=3)
    assert v.tag == "NotApplicable" and v.incomplete


def test_non_graph_diagrams_skip_fission_route():
    d = build_diagram(parse_irregular_class("<z^(5/3)>+<z^(3/2)>+<z^(7/3)>")).diagram
    v = classify(d)
    assert v.tag == "Candidate"
    assert check_decorated(DecoratedDiagram(d, v.witness))[0]


def random_graph(rng, n, max_mult):
    B = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        B[i][j] = B[j][i] = rng.randint(0, max_mult)
    return graph(B)


@settings(max_examples=150)
@given(st.integers(0, 10 ** 9), st.integers(1, 6), st.integers(1, 4))
def test_routes_agree(seed, n, m):
    g = random_graph(random.Random(seed), n, m)
    ok, _ = is_acute_isosceles(g)
    try:
        fission_forest(g)
        forest_ok = True
    except UltrametricViolation:
        forest_ok = False
    assert ok == forest_ok


@pytest.mark.parametrize("seed", range(60))
def test_round_trip_from_untwisted_classes(seed):
    theta = random_untwisted_class(random.Random(seed))
    g = Diagram.from_matrix(build_diagram(theta).B)
    assert is_acute_isosceles(g)[0]
    assert rebuilt_matrix(g) == g.B


@settings(max_examples=60)
@given(st.integers(0, 10 ** 9), st.integers(3, 4), st.integers(1, 4))
def test_feasibility_sound_against_brute_force(seed, n, m):
    g = random_graph(random.Random(seed), n, m)
    res = decoration_feasibility(g)
    found = brute_force_decoration(g, 8)
    if res.feasible:
        assert check_decorated(DecoratedDiagram(g, res.r))[0]
        for s in (2, 3, 7):
            assert check_decorated(DecoratedDiagram(g, tuple(s * x for x in res.r)))[0]
    else:
        assert verify_certificate(g, res.certificate)
        assert found is None


@pytest.mark.parametrize("seed", range(40))
def test_class_diagrams_are_never_refuted(seed):
    theta = random_class(random.Random(seed), max_circles=4)
    d = build_diagram(theta)
    assert check_decorated(d)[0]
    assert decoration_feasibility(d.diagram).feasible


@settings(max_examples=60)
@given(st.integers(0, 10 ** 9), st.integers(1, 6))
def test_simply_laced_coherence(seed, n):
    g = random_graph(random.Random(seed), n, 1)
    v = classify(g)
    assert v.tag != "Candidate"
    assert (v.tag == "FissionGraph") == is_complete_multipartite(g)[0]

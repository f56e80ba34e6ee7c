import itertools
import random
from fractions import Fraction as F
from math import gcd, lcm

import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_class, random_untwisted_class, two_largest_equal, untwisted_degree
from nahgraph.diagram import (DecoratedDiagram, Diagram, _scan_cut, build_diagram, cartan_dimension, common_part,
                              edge_multiplicity, edge_multiplicity_gcd, fission_exponent, irregular_class,
                              loop_multiplicity, rescale, rescaled_edge, rescaled_loop)
from nahgraph.errors import DimensionMismatch, EmptyClass, EqualCircles, PreconditionError
from nahgraph.puiseux import TAME, circle_of, factor_canonicalize, galois_conjugates


def C(*terms):
    return circle_of(factor_canonicalize(terms))


def matrix_in(d, circles):
    idx = [d.vertices.index(c) for c in circles]
    return [[d.B[i][j] for j in idx] for i in idx]


Z53, Z32, Z73 = C((F(5, 3), 1)), C((F(3, 2), 1)), C((F(7, 3), 1))
A = C((F(5, 2), 1), (F(7, 3), 1))
B1 = C((F(5, 2), 1), (F(5, 4), 1))
B2 = C((F(5, 2), 1))
B1b = C((F(5, 2), 1), (F(3, 2), 1), (F(5, 4), 1))
B2b = C((F(5, 2), 1), (F(3, 2), 1))
Z3, Z43 = C((3, 1)), C((F(4, 3), 1))


def test_loop_examples():
    assert loop_multiplicity(Z53) == 2
    assert loop_multiplicity(A) == 38
    assert loop_multiplicity(Z3) == 0
    assert loop_multiplicity(C((F(1, 2), 1))) == -2
    assert loop_multiplicity(TAME) == 0


def test_common_part_examples():
    data = common_part(Z53, Z32)
    assert data.common == TAME and data.fission_exponent == F(5, 3)
    data = common_part(A, B1)
    assert data.common == B2 and data.fission_exponent == F(7, 3)
    assert _scan_cut(A, B1) == data.cut
    data = common_part(B1b, B2b)
    assert data.common == B2b and data.fission_exponent == F(5, 4)
    with pytest.raises(EqualCircles):
        common_part(A, A)


def test_edge_examples():
    assert edge_multiplicity(Z53, Z32) == 4
    assert edge_multiplicity(A, B1) == 34
    assert edge_multiplicity(Z3, Z43) == 6
    assert edge_multiplicity(C((F(1, 2), 1)), C((F(1, 3), 1))) == -3
    with pytest.raises(EqualCircles):
        edge_multiplicity(Z3, Z3)


def test_rescaled_examples():
    assert rescaled_loop(Z53) == F(1, 9)
    assert rescaled_loop(Z32) == F(-1, 4)
    assert rescaled_loop(A) == F(37, 36)
    assert rescaled_loop(TAME) == -1
    assert rescaled_edge(A, B1) == F(17, 12)
    assert rescaled_edge(Z53, Z32) == F(2, 3)
    assert rescaled_edge(Z3, Z43) == 2


def test_three_circle_matrix():
    d = build_diagram(irregular_class([Z53, Z32, Z73]))
    assert matrix_in(d, [Z53, Z32, Z73]) == [[2, 4, 12], [4, 0, 8], [12, 8, 6]]
    assert [d.r[d.vertices.index(c)] for c in (Z53, Z32, Z73)] == [3, 2, 3]
    bt = rescale(d.reordered([Z53, Z32, Z73])).Btilde
    assert [list(r) for r in bt] == [[F(1, 9), F(2, 3), F(4, 3)], [F(2, 3), F(-1, 4), F(4, 3)],
                                     [F(4, 3), F(4, 3), F(5, 9)]]


@pytest.mark.parametrize("triple", [(A, B1, B2), (A, B1b, B2b)])
def test_both_readings_of_the_second_example(triple):
    d = build_diagram(irregular_class(list(triple)))
    assert matrix_in(d, list(triple)) == [[38, 34, 17], [34, 10, 7], [17, 7, 2]]
    bt = rescale(d.reordered(list(triple))).Btilde
    assert [list(r) for r in bt] == [[F(37, 36), F(17, 12), F(17, 12)], [F(17, 12), F(9, 16), F(7, 8)],
                                     [F(17, 12), F(7, 8), F(1, 4)]]


def test_triangle_class_and_dimension():
    d = build_diagram(irregular_class([Z3, Z43, Z32]))
    assert matrix_in(d, [Z3, Z43, Z32]) == [[0, 6, 4], [6, 0, 3], [4, 3, 0]]
    assert d.diagram.is_graph
    assert cartan_dimension(d.diagram, [1, 1, 1]) == 22
    assert cartan_dimension(d.diagram) == 22
    bt = rescale(DecoratedDiagram(d.diagram.reordered([Z3, Z43, Z32]), (1, 3, 2))).Btilde
    assert (bt[0][1], bt[0][2], bt[1][2]) == (2, 2, F(1, 2))


def test_conjugate_entries_merge():
    q = factor_canonicalize([(F(5, 3), 1)])
    theta = irregular_class([q, galois_conjugates(q)[1]])
    d = build_diagram(theta)
    assert d.diagram.B == ((2,),) and d.diagram.multiplicities == (2,)


def test_cartan_examples():
    assert cartan_dimension(Diagram.from_matrix([[0]]), [1]) == 0
    assert cartan_dimension(Diagram.from_matrix([[0, 2], [2, 0]]), [1, 1]) == 2
    with pytest.raises(DimensionMismatch):
        cartan_dimension(Diagram.from_matrix([[0]]), [1, 1])


def test_diagram_validation():
    with pytest.raises(PreconditionError):
        Diagram.from_matrix([[1]])
    with pytest.raises(PreconditionError):
        Diagram.from_matrix([[0, 1], [2, 0]])
    with pytest.raises(DimensionMismatch):
        Diagram.from_matrix([[0, 1]])
    with pytest.raises(EmptyClass):
        build_diagram(irregular_class([]))
    unit = DecoratedDiagram(Diagram.from_matrix([[0, 3], [3, 0]]), (1, 1))
    assert rescale(unit).Btilde == ((-1, 3), (3, -1))


def classes(n=150, seed=7):
    rng = random.Random(seed)
    return [random_class(rng) for _ in range(n)]


@pytest.mark.parametrize("theta", classes(), ids=lambda t: str(t)[:40])
def test_formula_routes_and_theorem(theta):
    circles = theta.circles
    for I in circles:
        b = loop_multiplicity(I)
        assert b % 2 == 0
        assert b == I.ram ** 2 * rescaled_loop(I) + 1
    for i, I in enumerate(circles):
        for J in circles[:i]:
            data = common_part(I, J)
            assert data.cut == _scan_cut(I, J)
            assert (data.cut * lcm(I.ram, J.ram)).denominator == 1
            assert all(k > data.fission_exponent for k in data.common.exponents)
            e = edge_multiplicity(I, J)
            assert e == edge_multiplicity(J, I) == edge_multiplicity_gcd(I, J)
            assert rescaled_edge(I, J) == rescaled_edge(J, I)
            assert rescaled_loop(I) <= rescaled_edge(I, J)
    for I, J, K in itertools.combinations(circles, 3):
        assert two_largest_equal(rescaled_edge(I, J), rescaled_edge(I, K), rescaled_edge(J, K))
        assert two_largest_equal(fission_exponent(I, J), fission_exponent(I, K), fission_exponent(J, K))


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_untwisted_edges_are_degree_minus_one(seed):
    theta = random_untwisted_class(random.Random(seed))
    circles = theta.circles
    for i, I in enumerate(circles):
        assert loop_multiplicity(I) == 0
        for J in circles[:i]:
            assert edge_multiplicity(I, J) == untwisted_degree(I.rep, J.rep) - 1


@given(st.integers(1, 15), st.integers(1, 6), st.integers(1, 15), st.integers(1, 6))
def test_monomial_specialisations(s, r, s2, r2):
    if gcd(s, r) != 1 or gcd(s2, r2) != 1:
        return
    I = C((F(s, r), 1))
    assert loop_multiplicity(I) == (r - 1) * (s - r - 1)
    J = C((F(s2, r2), 1))
    if F(s, r) >= F(s2, r2) and I != J:
        # the steeper monomial determines the fission exponent
        assert edge_multiplicity(I, J) == r2 * (s - r)

import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from helpers import random_class
from nahgraph.cyclo import Cyclotomic, cyclo_root_of_unity
from nahgraph.diagram import Diagram, build_diagram
from nahgraph.errors import NonPositiveExponent, ParseError, UnknownFormat, ZeroMultiplicity
from nahgraph.io import (emit_diagram, parse_class, parse_decorated_diagram, parse_diagram, parse_factor,
                         parse_irregular_class)
from nahgraph.puiseux import circle_of, factor_canonicalize
from nahgraph.tree import build_tree, tree_from_json, tree_to_json

from test_puiseux import factors


def test_class_examples():
    e = parse_class("<z^(5/3)> + <z^(3/2)> + <z^(7/3)>")
    assert [m for m, _ in e.entries] == [1, 1, 1]
    assert [q.exponents for _, q in e.entries] == [(F(5, 3),), (F(3, 2),), (F(7, 3),)]
    e = parse_class("2*<z^(5/2)+z^(7/3)>")
    assert len(e.entries) == 1 and e.entries[0][0] == 2
    assert e.entries[0][1].exponents == (F(5, 2), F(7, 3))
    with pytest.raises(NonPositiveExponent):
        parse_class("<z^(0)>")


@pytest.mark.parametrize("text, offset, cls", [
    ("<z^(0)>", 4, NonPositiveExponent),
    ("<z^(-1/2)>", 4, NonPositiveExponent),
    ("0*<z>", 0, ZeroMultiplicity),
    ("<3>", 1, ParseError),
    ("<z^(1/2)", 8, ParseError),
    ("<z^(1/0)>", 5, ParseError),
    ("<z> <z>", 4, ParseError),
])
def test_errors_carry_offsets(text, offset, cls):
    with pytest.raises(cls) as info:
        parse_class(text)
    assert info.value.offset == offset


def test_coefficient_forms():
    i = Cyclotomic.gaussian(0, 1)
    assert parse_factor("(1+2i)*z^(1/3)").terms[0][1] == Cyclotomic.gaussian(1, 2)
    assert parse_factor("(1/2-i)*z").terms[0][1] == Cyclotomic.gaussian(F(1, 2), -1)
    assert parse_factor("3i*z^(1/2)").terms[0][1] == 3 * i
    assert parse_factor("-1/2*z^2").terms[0] == (2, Cyclotomic.from_rational(F(-1, 2)))
    assert parse_factor("i z").terms[0][1] == i
    assert parse_factor("E(3)^2*z^(1/3)").terms[0][1] == cyclo_root_of_unity(2, 3)
    assert parse_factor(" z ^ ( 5 / 2 ) + z^( 7/3 ) ") == factor_canonicalize([(F(5, 2), 1), (F(7, 3), 1)])
    assert parse_factor("0").is_zero() and parse_factor("<0>").is_zero()


def test_whitespace_and_merging():
    theta = parse_irregular_class("<z^(3/2)> + <-z^(3/2)>")
    assert len(theta) == 1 and theta.multiplicities == (2,)


@given(factors())
def test_factor_round_trip(q):
    assert parse_factor(str(q)) == q
    assert parse_factor(str(circle_of(q))) == circle_of(q).rep


@pytest.mark.parametrize("seed", range(30))
def test_class_round_trip(seed):
    theta = random_class(random.Random(seed))
    assert parse_irregular_class(str(theta)) == theta


def test_matrix_emit():
    d = build_diagram(parse_irregular_class("<z^(5/3)> + <z^(3/2)> + <z^(7/3)>"))
    order = [circle_of(parse_factor(s)) for s in ("z^(5/3)", "z^(3/2)", "z^(7/3)")]
    text = emit_diagram(d.reordered(order), "matrix")
    assert text.replace("\n", " / ") == "2 4 12 / 4 0 8 / 12 8 6"
    assert parse_diagram("2 4 12 / 4 0 8 / 12 8 6").B == d.reordered(order).B


def test_dot_emit_triangle():
    d = build_diagram(parse_irregular_class("<z^(3)>+<z^(4/3)>+<z^(3/2)>"))
    text = emit_diagram(d, "dot")
    nodes = [l for l in text.splitlines() if "[label=\"<" in l]
    edges = [l for l in text.splitlines() if " -- " in l]
    assert len(nodes) == 3
    assert sorted(l.split('label="')[1].rstrip('"];') for l in edges) == ["3", "4", "6"]
    assert not any(l.split(" -- ")[0].strip() == l.split(" -- ")[1].split()[0].rstrip(";") for l in edges)


def test_dot_parallel_edges_and_loops():
    d = Diagram.from_matrix([[4, 2], [2, 0]])
    lines = emit_diagram(d, "dot").splitlines()
    assert lines.count("  v0 -- v1;") == 2
    assert lines.count("  v0 -- v0;") == 2
    lines = emit_diagram(Diagram.from_matrix([[0, 3], [3, 0]]), "dot", max_parallel=3).splitlines()
    assert lines.count("  v0 -- v1;") == 3
    d = Diagram.from_matrix([[0, -3], [-3, 10]])
    text = emit_diagram(d, "dot")
    assert 'v0 -- v1 [label="-3"]' in text and 'v1 -- v1 [label="5"]' in text


def test_json_round_trip():
    for text in ("<z^(5/3)> + <z^(3/2)> + <z^(7/3)>", "2*<z^(5/2)+z^(7/3)> + <(1+i)*z^(1/2)>"):
        d = build_diagram(parse_irregular_class(text))
        doc = json.loads(emit_diagram(d, "json"))
        assert set(doc["vertices"][0]) == {"id", "circle", "ram", "mult"}
        assert parse_decorated_diagram(emit_diagram(d, "json")) == d
    g = Diagram.from_matrix([[0, 1], [1, 0]], ["a", "b"])
    assert parse_diagram(emit_diagram(g, "json")) == g
    with pytest.raises(UnknownFormat):
        emit_diagram(g, "svg")


def test_graph_inputs():
    pent = parse_diagram("# pentagon\na b\nb c 1\nc d\nd e\ne a\n")
    assert pent.vertices == ("a", "b", "c", "d", "e")
    assert [sum(r) for r in pent.B] == [2] * 5
    iso = parse_diagram("1 2 3\n3\n")
    assert iso.vertices == (1, 2, 3) and iso.B == ((0, 3, 0), (3, 0, 0), (0, 0, 0))
    assert parse_diagram("[[0, 2], [2, 0]]").B == ((0, 2), (2, 0))
    assert parse_diagram("0 1; 1 0").B == ((0, 1), (1, 0))
    with pytest.raises(ParseError):
        parse_diagram("a b c d")
    with pytest.raises(ParseError):
        parse_diagram("{not json")


def test_tree_json_round_trip_through_io():
    t = build_tree(parse_irregular_class("<z^(5/2)+z^(7/3)>+<z^(5/2)+z^(5/4)>+<z^(5/2)>"))
    assert tree_from_json(tree_to_json(t)) == t

"""Classification of graphs and diagrams.

Three outcomes are possible for a diagram:

* ``FissionGraph``: the diagram is a graph whose triangles are all acute
  isosceles; a realizing untwisted irregular class is returned.
* ``NotNAH``: no positive decoration makes the rescaled diagram ultrametric,
  so no irregular class (twisted or not) produces it.  The verdict carries an
  exhaustive case tree whose leaves are exact infeasibility certificates.
* ``Candidate``: a decoration passing the necessary condition exists, but
  the diagram is not a fission graph.  This is not a claim of realizability.

``NotApplicable`` with ``incomplete=True`` is returned when the vertex count
exceeds the exact search bound and the bounded integer fallback finds nothing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .diagram import DecoratedDiagram, Diagram, IrregularClass, build_diagram, irregular_class, rescale
from .errors import NotAGraph, NotSimplyLaced, SizeLimit, TwistedTree, UltrametricViolation
from .feasibility import EQ, LE, FeasibilitySystem, check_farkas, solve
from .puiseux import ExponentialFactor, circle_of, factor_canonicalize
from .tree import ADMISSIBLE, EMPTY, INTERNAL, LEAF, MANDATORY, TRUNK, FissionTree, _Builder, _finish

__all__ = [
    "Verdict",
    "FeasibilityResult",
    "CaseNode",
    "Refutation",
    "is_acute_isosceles",
    "fission_forest",
    "realize_untwisted",
    "leaf_factors",
    "check_decorated",
    "decoration_system",
    "decoration_feasibility",
    "bounded_decoration_search",
    "verify_certificate",
    "classify",
    "is_complete_multipartite",
]

FISSION, NOT_NAH, CANDIDATE, NOT_APPLICABLE = "FissionGraph", "NotNAH", "Candidate", "NotApplicable"

DEFAULT_MAX_VERTICES = 8
DEFAULT_RMAX = 16


def _require_graph(g: Diagram) -> None:
    n = g.size
    for i in range(n):
        if g.B[i][i] != 0:
            raise NotAGraph(f"vertex {g.vertices[i]!r} has a loop (B[{i}][{i}] = {g.B[i][i]})")
        for j in range(n):
            if g.B[i][j] < 0:
                raise NotAGraph(f"negative multiplicity at ({i}, {j})")


def _bad_triangle(B, n) -> tuple[int, int, int] | None:
    for i, j, k in itertools.combinations(range(n), 3):
        a, b, c = sorted((B[i][j], B[i][k], B[j][k]))
        if b != c:
            return (i, j, k)
    return None


def is_acute_isosceles(graph: Diagram) -> tuple[bool, tuple | None]:
    """Whether every triangle has its two largest edge multiplicities equal.

    Returns ``(ok, triple)`` where ``triple`` holds the vertex labels of the
    first violating triangle in lexicographic index order.
    """
    _require_graph(graph)
    t = _bad_triangle(graph.B, graph.size)
    if t is None:
        return True, None
    return False, tuple(graph.vertices[i] for i in t)


# ---------------------------------------------------------------------------
# untwisted fission forests

def fission_forest(graph: Diagram) -> FissionTree:
    """Untwisted fission tree of an acute-isosceles graph.

    Classes of vertices are merged level by level: at step ``h`` two classes
    merge when some, and then every, pair of descendants has multiplicity
    ``h - 1``.  Heights are shifted by one so leaves sit at 0 with a vertex
    at every integer height along each branch.
    """
    _require_graph(graph)
    B, n = graph.B, graph.size
    labels = {i: graph.vertices[i] for i in range(n)}
    mult = graph.multiplicities or (1,) * n
    leaf_data = {i: (None, mult[i]) for i in range(n)}
    b = _Builder()
    for _ in range(n):
        b.add(0, LEAF, EMPTY)
    if n == 1:
        v = b.add(Fraction(1), INTERNAL, ADMISSIBLE)
        b.parent[0] = v
        top = b.add(Fraction(2), TRUNK, EMPTY)
        b.parent[v] = top
        return _finish(b, Fraction(0), top, leaf_data, labels)

    K = 1 + max(B[i][j] for i in range(n) for j in range(n) if i != j)
    classes = []  # (vertex id at current height, members)
    for i in range(n):
        v = b.add(Fraction(1), INTERNAL, ADMISSIBLE)
        b.parent[i] = v
        classes.append((v, [i]))
    for h in range(1, K + 1):
        m = len(classes)
        rel = [[False] * m for _ in range(m)]
        for x, y in itertools.combinations(range(m), 2):
            vals = {B[a][c] == h - 1 for a in classes[x][1] for c in classes[y][1]}
            if len(vals) == 2:
                triple = _mixed_triple(B, classes[x][1], classes[y][1], h - 1)
                raise UltrametricViolation(
                    f"at height {h}: multiplicity {h - 1} links some but not all descendants",
                    tuple(graph.vertices[t] for t in triple))
            rel[x][y] = rel[y][x] = vals == {True}
        # connected components must be cliques for the relation to be an equivalence
        seen = [False] * m
        merged = []
        for x in range(m):
            if seen[x]:
                continue
            comp = [x]
            seen[x] = True
            for y in range(x + 1, m):
                if rel[x][y]:
                    comp.append(y)
                    seen[y] = True
            for y, z in itertools.combinations(comp, 2):
                if not rel[y][z]:
                    a, c, e = classes[x][1][0], classes[y][1][0], classes[z][1][0]
                    raise UltrametricViolation(
                        f"at height {h}: relation B = {h - 1} is not transitive",
                        (graph.vertices[a], graph.vertices[c], graph.vertices[e]))
            for y in range(m):
                if not seen[y] and any(rel[c][y] for c in comp):
                    raise UltrametricViolation(f"at height {h}: relation B = {h - 1} is not transitive")
            merged.append(comp)
        new = []
        for comp in merged:
            v = b.add(Fraction(h + 1), INTERNAL, ADMISSIBLE)
            members = []
            for x in comp:
                b.parent[classes[x][0]] = v
                members.extend(classes[x][1])
            new.append((v, sorted(members)))
        classes = new
    assert len(classes) == 1, "forest did not connect"
    top = b.add(Fraction(K + 2), TRUNK, EMPTY)
    b.parent[classes[0][0]] = top
    # the root join is the lowest height where everything is connected
    root = classes[0][0]
    while True:
        kids = [c for c, p in b.parent.items() if p == root]
        if len(kids) != 1 or kids[0] < n:
            break
        root = kids[0]
    return _finish(b, b.nodes[root][0], top, leaf_data, labels)


def _mixed_triple(B, xs, ys, value) -> tuple[int, int, int]:
    """Three vertices witnessing that ``B == value`` is not constant between ``xs`` and ``ys``."""
    a, c = next((a, c) for a in xs for c in ys if B[a][c] == value)
    a2, c2 = next((a, c) for a in xs for c in ys if B[a][c] != value)
    if a == a2:
        return (a, c, c2)
    if c == c2:
        return (a, a2, c)
    return (a, a2, c2) if B[a][c2] == value else (a, c, c2)


def _sibling_coefficients(count: int) -> list[int]:
    # -1, 1, -2, 2, ... keeps the coefficients small and distinct
    out = []
    k = 1
    while len(out) < count:
        out.append(-k)
        if len(out) < count:
            out.append(k)
        k += 1
    return out


def leaf_factors(tree: FissionTree) -> dict[int, ExponentialFactor]:
    """Untwisted exponential factor for every leaf of an untwisted tree.

    Every branch vertex with several children at integer height ``m`` gives
    its children distinct coefficients, and a leaf collects ``c z^m`` from
    each such child on its path, so two leaves differ first at the height of
    the children of their lowest common join.
    """
    if any(nd.decoration == MANDATORY for nd in tree.nodes):
        raise TwistedTree("tree has mandatory vertices, so some circle is twisted")
    children = tree.children()
    coeff: dict[int, tuple[Fraction, int]] = {}
    for v, kids in children.items():
        if len(kids) < 2:
            continue
        for c in kids:
            h = tree.node(c).height
            if h.denominator != 1 or h < 1:
                raise TwistedTree(f"children of vertex {v} sit at non-integral height {h}")
        for c, a in zip(kids, _sibling_coefficients(len(kids))):
            coeff[c] = (tree.node(c).height, a)
    out = {}
    for leaf in tree.leaves:
        terms = [coeff[v] for v in tree.branch(leaf) if v in coeff]
        out[leaf] = factor_canonicalize(terms) if terms else factor_canonicalize([(1, 1)])
    return out


def realize_untwisted(tree: FissionTree) -> IrregularClass:
    """An untwisted class whose fission tree is ``tree``."""
    factors = leaf_factors(tree)
    return irregular_class([(factors[l], tree.leaf_data[l][1]) for l in tree.leaves])


# ---------------------------------------------------------------------------
# decorated diagrams and the necessary condition

def check_decorated(d: DecoratedDiagram) -> tuple[bool, str | None]:
    """Test the rescaled diagram for ultrametric triangles and loop bounds."""
    Bt = rescale(d).Btilde
    n = len(Bt)
    for i, j, k in itertools.combinations(range(n), 3):
        a, b, c = sorted((Bt[i][j], Bt[i][k], Bt[j][k]))
        if b != c:
            v = d.vertices
            return False, f"triangle {v[i]!r}, {v[j]!r}, {v[k]!r}: rescaled edges {a}, {b}, {c}"
    for i in range(n):
        for j in range(n):
            if i != j and Bt[i][i] > Bt[i][j]:
                v = d.vertices
                return False, f"loop at {v[i]!r} is {Bt[i][i]} > edge to {v[j]!r} ({Bt[i][j]})"
    return True, None


def _loop_rows(B, n) -> list[tuple[tuple[int, ...], str, str]]:
    rows = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            # (B_ii - 1) r_j - B_ij r_i <= 0
            c = [0] * n
            c[j] += B[i][i] - 1
            c[i] -= B[i][j]
            if any(c):
                rows.append((tuple(c), LE, f"loop {i} below edge {i}-{j}"))
    return rows


def _pattern_rows(B, n, triple, apex) -> list[tuple[tuple[int, ...], str, str]]:
    """Rows saying the two sides at ``apex`` are equal and not shorter than the third."""
    x, y = [v for v in triple if v != apex]
    c = apex
    eq = [0] * n
    # B_xc / (r_x r_c) = B_yc / (r_y r_c)  <=>  B_xc r_y - B_yc r_x = 0
    eq[y] += B[x][c]
    eq[x] -= B[y][c]
    le = [0] * n
    # B_xy / (r_x r_y) <= B_xc / (r_x r_c)  <=>  B_xy r_c - B_xc r_y <= 0
    le[c] += B[x][y]
    le[y] -= B[x][c]
    tag = f"triangle {triple} apex {apex}"
    return [(tuple(eq), EQ, tag), (tuple(le), LE, tag)]


def decoration_system(diagram: Diagram, choices: Sequence[tuple[tuple[int, int, int], int]] = ()) -> FeasibilitySystem:
    """Loop conditions plus the rows of the chosen triangle patterns."""
    B, n = diagram.B, diagram.size
    sys_ = FeasibilitySystem(n)
    for coeffs, rel, note in _loop_rows(B, n):
        sys_.add(coeffs, rel, note)
    for triple, apex in choices:
        for coeffs, rel, note in _pattern_rows(B, n, triple, apex):
            if any(coeffs):
                sys_.add(coeffs, rel, note)
    return sys_


@dataclass
class Refutation:
    """An infeasible branch: its pattern choices and Farkas multipliers."""

    choices: tuple[tuple[tuple[int, int, int], int], ...]
    farkas: dict[int, Fraction]


@dataclass
class CaseNode:
    """All three apex choices for ``triple``, each closed by a subtree or a refutation."""

    triple: tuple[int, int, int]
    branches: list[tuple[int, "CaseNode | Refutation"]] = field(default_factory=list)

    def leaves(self) -> list[Refutation]:
        out = []
        for _, sub in self.branches:
            out.extend(sub.leaves() if isinstance(sub, CaseNode) else [sub])
        return out


@dataclass
class FeasibilityResult:
    status: str  # feasible, infeasible or unknown
    r: tuple[int, ...] | None = None
    certificate: "CaseNode | Refutation | None" = None
    complete: bool = True

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def _triples_in_order(B, n) -> list[tuple[int, int, int]]:
    triples = list(itertools.combinations(range(n), 3))
    triples.sort(key=lambda t: (-max(B[t[0]][t[1]], B[t[0]][t[2]], B[t[1]][t[2]]), t))
    return triples


def _primitive(point: Sequence[Fraction]) -> tuple[int, ...]:
    den = lcm(*(Fraction(x).denominator for x in point))
    ints = [int(x * den) for x in point]
    g = gcd(*ints)
    return tuple(v // g for v in ints)


def decoration_feasibility(diagram: Diagram, max_vertices: int = DEFAULT_MAX_VERTICES,
                           r_max: int = DEFAULT_RMAX, fallback: bool = True) -> FeasibilityResult:
    """Decide whether some positive decoration satisfies :func:`check_decorated`.

    Depth-first search over the apex pattern of every triangle, pruning each
    partial branch by exact elimination.  The first feasible branch in
    lexicographic pattern order supplies the witness.  Above ``max_vertices``
    vertices, raises :class:`SizeLimit` unless ``fallback`` is set, in which
    case a bounded integer search is run and the result is marked incomplete
    when it finds nothing.
    """
    n = diagram.size
    if n > max_vertices:
        if not fallback:
            raise SizeLimit(f"{n} vertices exceed the pattern-search bound {max_vertices}")
        r = bounded_decoration_search(diagram, r_max)
        if r is not None:
            return FeasibilityResult("feasible", r, complete=True)
        return FeasibilityResult("unknown", complete=False)

    B = diagram.B
    base = solve(decoration_system(diagram), want_point=False)
    if not base.feasible:
        return FeasibilityResult("infeasible", certificate=Refutation((), base.farkas))

    # screen each pattern on its own; refuted patterns close their branch everywhere
    screened: dict[tuple, Refutation] = {}
    for t in itertools.combinations(range(n), 3):
        for apex in t:
            sol = solve(decoration_system(diagram, [(t, apex)]), want_point=False)
            if not sol.feasible:
                screened[(t, apex)] = Refutation(((t, apex),), sol.farkas)
    alive = {t: sum((t, a) not in screened for a in t) for t in itertools.combinations(range(n), 3)}
    order = {t: i for i, t in enumerate(_triples_in_order(B, n))}
    triples = sorted(alive, key=lambda t: (alive[t], order[t]))

    def dfs(depth: int, choices: list):
        if depth:
            sol = solve(decoration_system(diagram, choices), want_point=depth == len(triples))
            if not sol.feasible:
                return None, Refutation(tuple(choices), sol.farkas)
            if depth == len(triples):
                return sol.point, None
        t = triples[depth]
        node = CaseNode(t)
        for apex in t:
            if (t, apex) in screened:
                node.branches.append((apex, screened[(t, apex)]))
                continue
            point, sub = dfs(depth + 1, choices + [(t, apex)])
            if point is not None:
                return point, None
            node.branches.append((apex, sub))
        return None, node

    if not triples:
        sol = solve(decoration_system(diagram))
        point, cert = sol.point, None
        r = _primitive(point)
        assert check_decorated(DecoratedDiagram(diagram, r))[0]
        return FeasibilityResult("feasible", r)

    point, cert = dfs(0, [])
    if point is None:
        return FeasibilityResult("infeasible", certificate=cert)
    r = _primitive(point)
    ok, why = check_decorated(DecoratedDiagram(diagram, r))
    assert ok, f"witness {r} fails re-verification: {why}"
    return FeasibilityResult("feasible", r)


def bounded_decoration_search(diagram: Diagram, r_max: int) -> tuple[int, ...] | None:
    """Backtracking search for an integer decoration with entries in ``1..r_max``."""
    B, n = diagram.B, diagram.size
    r: list[int] = []

    def consistent(k: int) -> bool:
        # vertex k was just assigned; test everything involving k and earlier vertices
        for i in range(k):
            # loops both ways
            if (B[i][i] - 1) * r[k] > B[i][k] * r[i] or (B[k][k] - 1) * r[i] > B[i][k] * r[k]:
                return False
        for i, j in itertools.combinations(range(k), 2):
            # rescaled sides scaled by r_i r_j r_k
            s = sorted((B[i][j] * r[k], B[i][k] * r[j], B[j][k] * r[i]))
            if s[1] != s[2]:
                return False
        return True

    def go(k: int) -> bool:
        if k == n:
            return True
        for v in range(1, r_max + 1):
            r.append(v)
            if consistent(k) and go(k + 1):
                return True
            r.pop()
        return False

    return tuple(r) if go(0) else None


def verify_certificate(diagram: Diagram, cert: "CaseNode | Refutation") -> bool:
    """Independently re-check an infeasibility case tree.

    Every case node must branch on all three apexes of a triangle, and every
    leaf must carry valid Farkas multipliers for the system induced by its
    choices.
    """
    def walk(node, path) -> bool:
        if isinstance(node, Refutation):
            # a refutation may use any subset of the choices made on its path
            if not set(node.choices) <= set(path):
                return False
            return check_farkas(decoration_system(diagram, node.choices), node.farkas)
        t = node.triple
        if sorted(a for a, _ in node.branches) != sorted(t):
            return False
        return all(walk(sub, path + [(t, apex)]) for apex, sub in node.branches)

    return walk(cert, [])


# ---------------------------------------------------------------------------
# pipeline

def is_complete_multipartite(graph: Diagram) -> tuple[bool, list[list] | None]:
    """Whether non-adjacency is an equivalence relation; returns the parts."""
    if not graph.is_simply_laced:
        raise NotSimplyLaced("graph has loops or multiplicities other than 0 and 1")
    n, B = graph.size, graph.B
    parts: list[list[int]] = []
    for i in range(n):
        for part in parts:
            if B[i][part[0]] == 0:
                part.append(i)
                break
        else:
            parts.append([i])
    for part in parts:
        for a, b in itertools.combinations(part, 2):
            if B[a][b] != 0:
                return False, None
    for p, q in itertools.combinations(parts, 2):
        if any(B[a][b] == 0 for a in p for b in q):
            return False, None
    return True, [[graph.vertices[i] for i in part] for part in parts]


@dataclass
class Verdict:
    tag: str
    witness: object = None
    certificate: object = None
    incomplete: bool = False
    # for FissionGraph: vertex label -> circle of the witness class
    assignment: dict | None = None
    reason: str = ""


def classify(diagram: Diagram, max_vertices: int = DEFAULT_MAX_VERTICES, r_max: int = DEFAULT_RMAX) -> Verdict:
    reason = ""
    if diagram.is_graph:
        ok, triple = is_acute_isosceles(diagram)
        if ok:
            tree = fission_forest(diagram)
            factors = leaf_factors(tree)
            witness = realize_untwisted(tree)
            assignment = {diagram.vertices[l]: circle_of(factors[l]) for l in tree.leaves}
            rebuilt = build_diagram(witness).diagram
            order = [assignment[v] for v in diagram.vertices]
            assert rebuilt.reordered(order).B == diagram.B, "realized class does not reproduce the graph"
            return Verdict(FISSION, witness=witness, assignment=assignment)
        reason = f"triangle {triple} is not acute isosceles"
    else:
        reason = "diagram has loops or negative entries, so it is not a graph"

    res = decoration_feasibility(diagram, max_vertices, r_max)
    simply_laced = diagram.is_simply_laced
    if res.status == "infeasible":
        return Verdict(NOT_NAH, certificate=res.certificate, reason=reason)
    if res.status == "feasible":
        assert not simply_laced, "simply-laced graph that is not fission admits a decoration"
        return Verdict(CANDIDATE, witness=res.r, reason=reason)
    return Verdict(NOT_APPLICABLE, incomplete=True,
                   reason=f"{diagram.size} vertices exceed the exact search bound and no "
                          f"decoration with entries up to {r_max} exists")

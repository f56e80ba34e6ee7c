"""Fission trees of irregular classes.

The tree is a dendrogram of the Stokes circles of a class: two leaves part
ways at their fission exponent, every vertex carries a rational height, and
vertices are decorated as mandatory (a level of the circles below), admissible
(a grid point of the circles below) or empty.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from .diagram import IrregularClass, common_part, fission_exponent
from .errors import EmptyClass, TreeClassMismatch, UltrametricViolation, UnknownFormat
from .puiseux import StokesCircle

__all__ = [
    "Node",
    "FissionTree",
    "TreeReport",
    "build_tree",
    "verify_tree_properties",
    "render_tree",
    "tree_to_json",
    "tree_from_json",
]

LEAF, INTERNAL, TRUNK = "leaf", "internal", "trunk-point"
MANDATORY, ADMISSIBLE, EMPTY = "mandatory", "admissible", "empty"


@dataclass(frozen=True)
class Node:
    id: int
    height: Fraction
    kind: str
    decoration: str


@dataclass(frozen=True)
class FissionTree:
    """Rooted metrised tree; leaves are ``0..n-1`` in class order.

    ``leaf_data`` maps a leaf to ``(circle, multiplicity)``; the circle is
    ``None`` for trees built from an abstract graph, in which case
    ``labels`` carries the graph's vertex labels.
    """

    nodes: tuple[Node, ...]
    parent: dict[int, int]
    leaf_data: dict[int, tuple[StokesCircle | None, int]]
    trunk_top: int
    labels: dict[int, object] = field(default_factory=dict)

    def node(self, i: int) -> Node:
        return self.nodes[i]

    @property
    def leaves(self) -> list[int]:
        return sorted(self.leaf_data)

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {n.id: [] for n in self.nodes}
        for c, p in self.parent.items():
            out[p].append(c)
        return out

    def branch(self, leaf: int) -> list[int]:
        """Vertices of the full branch of ``leaf``, bottom to top."""
        path = [leaf]
        while path[-1] in self.parent:
            path.append(self.parent[path[-1]])
        return path

    def branch_vertices(self) -> list[int]:
        return [v for v, ch in self.children().items() if len(ch) >= 2]

    def ancestor(self, i: int, j: int) -> int:
        """Closest common ancestor of two vertices."""
        seen = set(self.branch(i))
        return next(v for v in self.branch(j) if v in seen)


def _grid_points(step: Fraction, lo: Fraction, hi: Fraction) -> list[Fraction]:
    """Multiples of ``step`` in the open interval ``(lo, hi)``."""
    a = floor(lo / step) + 1
    b = ceil(hi / step) - 1
    return [step * k for k in range(a, b + 1)]


def _next_grid(step: Fraction, x: Fraction) -> Fraction:
    return step * (floor(x / step) + 1)


class _Builder:
    def __init__(self):
        self.nodes: list[list] = []  # [height, kind, decoration]
        self.parent: dict[int, int] = {}

    def add(self, height, kind, decoration) -> int:
        self.nodes.append([Fraction(height), kind, decoration])
        return len(self.nodes) - 1

    def chain(self, start: int, heights, decorate) -> int:
        """Stack new vertices at ``heights`` above ``start``; return the top."""
        cur = start
        for h in heights:
            v = self.add(h, INTERNAL, decorate(h))
            self.parent[cur] = v
            cur = v
        return cur


def _decorator(step: Fraction, levels):
    levels = set(levels)

    def decorate(h: Fraction) -> str:
        if h in levels:
            return MANDATORY
        if (h / step).denominator == 1:
            return ADMISSIBLE
        return EMPTY
    return decorate


def _split(members: list[int], f) -> tuple[Fraction, list[list[int]]]:
    """Split a cluster into the groups that stay together below its top fission."""
    top = max(f[a][b] for a in members for b in members if a != b)
    groups: list[list[int]] = []
    for m in members:
        for g in groups:
            if f[g[0]][m] < top:
                g.append(m)
                break
        else:
            groups.append([m])
    # every cross pair must sit exactly at the top and every inner pair below it
    for gi, g in enumerate(groups):
        for a in g:
            for h in groups[gi:]:
                for b in h:
                    if a != b and (f[a][b] < top) != (h is g):
                        raise UltrametricViolation(
                            "fission exponents are not ultrametric", (g[0], a, b))
    return top, groups


def build_tree(theta: IrregularClass) -> FissionTree:
    """Fission tree of ``theta`` with mandatory vertices at the levels."""
    if not len(theta):
        raise EmptyClass("irregular class is empty")
    circles = theta.circles
    n = len(circles)
    f = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i):
            f[i][j] = f[j][i] = fission_exponent(circles[i], circles[j])

    b = _Builder()
    for _ in circles:
        b.add(0, LEAF, EMPTY)

    def segment_top(members, top):
        """Build the subtree of ``members`` and return its vertex at height ``top``."""
        if len(members) == 1:
            I = circles[members[0]]
            step = Fraction(1, I.ram)
            dec = _decorator(step, I.levels)
            heights = _grid_points(step, Fraction(0), top) + [top]
            return b.chain(members[0], heights, dec)
        phi, groups = _split(members, f)
        common = common_part(circles[members[0]], circles[groups[1][0]]).common
        step = Fraction(1, common.ram)
        dec = _decorator(step, common.levels)
        h = min(_next_grid(step, phi), top)
        tops = [segment_top(g, phi) for g in groups]
        v = b.add(h, INTERNAL, dec(h))
        for t in tops:
            b.parent[t] = v
        if top == h:
            return v
        return b.chain(v, _grid_points(step, h, top) + [top], dec)

    members = list(range(n))
    if n == 1:
        I = circles[0]
        step = Fraction(1, I.ram)
        dec = _decorator(step, I.levels)
        heights = _grid_points(step, Fraction(0), I.slope) + ([I.slope] if I.exponents else [])
        cur = b.chain(0, heights, dec)
        root_join_height = Fraction(0)
        top_height = _next_grid(step, I.slope)
    else:
        phi, groups = _split(members, f)
        common = common_part(circles[0], circles[groups[1][0]]).common
        step = Fraction(1, common.ram)
        dec = _decorator(step, common.levels)
        h = _next_grid(step, phi)
        tops = [segment_top(g, phi) for g in groups]
        cur = b.add(h, INTERNAL, dec(h))
        for t in tops:
            b.parent[t] = cur
        root_join_height = h
        peak = max([h] + list(common.exponents))
        cur = b.chain(cur, _grid_points(step, h, peak) + ([peak] if peak > h else []), dec)
        top_height = _next_grid(step, peak)
    trunk = b.add(top_height, TRUNK, EMPTY)
    b.parent[cur] = trunk

    return _finish(b, root_join_height, trunk,
                   {i: (circles[i], theta.multiplicities[i]) for i in range(n)})


def _finish(b: _Builder, root_join_height, trunk, leaf_data, labels=None) -> FissionTree:
    nodes = []
    for i, (h, kind, dec) in enumerate(b.nodes):
        if kind == INTERNAL and h > root_join_height:
            kind = TRUNK
        nodes.append(Node(i, h, kind, dec))
    return FissionTree(tuple(nodes), dict(b.parent), leaf_data, trunk, labels or {})


# ---------------------------------------------------------------------------
# verification

@dataclass
class TreeReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list[tuple[str, bool, str]]:
        return [c for c in self.checks if not c[1]]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append((name, passed, detail))

    def __str__(self) -> str:
        return "\n".join(f"{'PASS' if p else 'FAIL'} {n} {d}".rstrip() for n, p, d in self.checks)


def verify_tree_properties(tree: FissionTree, theta: IrregularClass) -> TreeReport:
    """Check the defining properties of a fission tree against ``theta``."""
    circles = theta.circles
    leaf_circles = [tree.leaf_data[l][0] for l in tree.leaves]
    if sorted(map(str, leaf_circles)) != sorted(map(str, circles)) or len(leaf_circles) != len(circles):
        raise TreeClassMismatch("tree leaves do not match the circles of the class")
    rep = TreeReport()
    H = {n.id: n.height for n in tree.nodes}
    children = tree.children()

    bad = [c for c, p in tree.parent.items() if not H[c] < H[p]]
    rep.add("heights increase towards the root", not bad, f"edges {bad}" if bad else "")
    bad = [l for l in tree.leaves if H[l] != 0]
    rep.add("leaves at height 0", not bad, f"leaves {bad}" if bad else "")
    bad = [v for v, ch in children.items() if len(ch) >= 2 and len({H[c] for c in ch}) > 1]
    rep.add("children of branch vertices level", not bad, f"vertices {bad}" if bad else "")

    for l in tree.leaves:
        I = tree.leaf_data[l][0]
        path = tree.branch(l)
        mand = sorted(H[v] for v in path if tree.nodes[v].decoration == MANDATORY)
        adm = {H[v] for v in path if tree.nodes[v].decoration in (MANDATORY, ADMISSIBLE)}
        ok = mand == sorted(I.levels)
        rep.add(f"levels on branch of leaf {l}", ok,
                "" if ok else f"{I}: mandatory {list(map(str, mand))} vs levels {list(map(str, I.levels))}")
        missing = [k for k in I.exponents if k not in adm]
        rep.add(f"exponents admissible on branch of leaf {l}", not missing,
                f"{I}: missing {list(map(str, missing))}" if missing else "")

    leaves = tree.leaves
    for a_i, a in enumerate(leaves):
        for c in leaves[a_i + 1:]:
            I, J = tree.leaf_data[a][0], tree.leaf_data[c][0]
            v = tree.ancestor(a, c)
            data = common_part(I, J)
            ok = not data.common.exponents or min(data.common.exponents) >= H[v]
            rep.add(f"common part above ancestor of ({a}, {c})", ok,
                    "" if ok else f"min E = {min(data.common.exponents)} < h = {H[v]} at vertex {v}")
            ch_heights = {H[x] for x in children[v]}
            ok = ch_heights == {data.fission_exponent}
            rep.add(f"children of ancestor of ({a}, {c}) at fission exponent", ok,
                    "" if ok else f"heights {sorted(map(str, ch_heights))} vs f = {data.fission_exponent}")
    return rep


# ---------------------------------------------------------------------------
# rendering

def _fmt(h: Fraction) -> str:
    return str(h.numerator) if h.denominator == 1 else f"{h.numerator}/{h.denominator}"


def _leaf_name(tree: FissionTree, l: int) -> str:
    circ = tree.leaf_data[l][0]
    return str(circ) if circ is not None else str(tree.labels.get(l, l))


def _json_label(label):
    return label if label is None or isinstance(label, (int, str)) else str(label)


def tree_to_json(tree: FissionTree) -> str:
    doc = {
        "leaves": [{"id": l, "circle": None if tree.leaf_data[l][0] is None else str(tree.leaf_data[l][0].rep),
                    "label": _json_label(tree.labels.get(l)),
                    "mult": tree.leaf_data[l][1]} for l in tree.leaves],
        "nodes": [{"id": n.id, "height": _fmt(n.height), "kind": n.kind, "decoration": n.decoration}
                  for n in tree.nodes],
        "parent": {str(c): p for c, p in sorted(tree.parent.items())},
        "trunk_top": tree.trunk_top,
        "trunk_extensible": True,
    }
    return json.dumps(doc, indent=2)


def tree_from_json(text: str) -> FissionTree:
    from .io import parse_factor
    from .puiseux import circle_of

    doc = json.loads(text)
    nodes = tuple(Node(int(n["id"]), Fraction(n["height"]), n["kind"], n["decoration"])
                  for n in sorted(doc["nodes"], key=lambda n: int(n["id"])))
    leaf_data, labels = {}, {}
    for lf in doc["leaves"]:
        circ = None if lf.get("circle") is None else circle_of(parse_factor(lf["circle"]))
        leaf_data[int(lf["id"])] = (circ, int(lf["mult"]))
        if lf.get("label") is not None:
            labels[int(lf["id"])] = lf["label"]
    parent = {int(c): int(p) for c, p in doc["parent"].items()}
    return FissionTree(nodes, parent, leaf_data, int(doc["trunk_top"]), labels)


def _column_order(tree: FissionTree) -> list[int]:
    children = tree.children()
    order: list[int] = []

    def walk(v):
        if v in tree.leaf_data:
            order.append(v)
            return
        for c in sorted(children[v], key=lambda c: min(_leaves_below(tree, children, c))):
            walk(c)
    walk(tree.trunk_top)
    return order


def _leaves_below(tree, children, v) -> list[int]:
    if v in tree.leaf_data:
        return [v]
    return [l for c in children[v] for l in _leaves_below(tree, children, c)]


_SYMBOL = {MANDATORY: "*", ADMISSIBLE: "o", EMPTY: "."}


def render_ascii(tree: FissionTree) -> str:
    """Height gutter on the left, one column per leaf.

    Only heights that carry a non-empty or branching vertex get a line;
    ``*`` is mandatory, ``o`` admissible, ``.`` an empty branch vertex and
    ``-`` joins the columns of a shared vertex.
    """
    cols = _column_order(tree)
    branches = {l: {tree.nodes[v].height: v for v in tree.branch(l)} for l in cols}
    branching = set(tree.branch_vertices())
    heights = sorted({n.height for n in tree.nodes
                      if n.kind != LEAF and n.id != tree.trunk_top
                      and (n.decoration != EMPTY or n.id in branching)}, reverse=True)
    width = max([len(_fmt(h)) for h in heights] + [1])
    lines = []
    for h in heights:
        cells = []
        for l in cols:
            v = branches[l].get(h)
            cells.append((v, " " if v is None else _SYMBOL[tree.nodes[v].decoration]))
        row = ""
        for k, (v, sym) in enumerate(cells):
            if k:
                joined = v is not None and v == cells[k - 1][0]
                row += "---" if joined else "   "
            row += sym
        lines.append(f"{_fmt(h).rjust(width)} | {row}".rstrip())
    lines.append(f"{' ' * width}   " + "   ".join(str(l) for l in cols))
    names = [f"{l}: {_leaf_name(tree, l)}" + (f" (x{tree.leaf_data[l][1]})" if tree.leaf_data[l][1] > 1 else "")
             for l in cols]
    return "\n".join(lines + names)


def render_dot(tree: FissionTree) -> str:
    out = ["graph fission_tree {", "  rankdir=BT;", "  node [label=\"\"];"]
    for n in tree.nodes:
        if n.kind == LEAF:
            attrs = f'shape=plaintext, label="{_leaf_name(tree, n.id)}"'
        elif n.decoration == MANDATORY:
            attrs = "shape=circle, style=filled, fillcolor=black, width=0.12"
        elif n.decoration == ADMISSIBLE:
            attrs = "shape=circle, width=0.12"
        else:
            attrs = "shape=point"
        out.append(f'  n{n.id} [{attrs}, xlabel="{_fmt(n.height)}"];')
    by_height: dict[Fraction, list[int]] = {}
    for n in tree.nodes:
        by_height.setdefault(n.height, []).append(n.id)
    for h in sorted(by_height):
        ids = " ".join(f"n{i};" for i in by_height[h])
        out.append(f'  {{ rank=same; /* h={_fmt(h)} */ {ids} }}')
    for c, p in sorted(tree.parent.items()):
        out.append(f"  n{c} -- n{p};")
    out.append("}")
    return "\n".join(out)


def render_tree(tree: FissionTree, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(tree)
    if fmt == "dot":
        return render_dot(tree)
    if fmt == "json":
        return tree_to_json(tree)
    raise UnknownFormat(f"unknown tree format {fmt!r}")

"""Command line front end.

Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 the
diagram is certified not to come from any irregular class, 5 the search
bound was exceeded and the verdict is incomplete.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .classify import CANDIDATE, FISSION, NOT_APPLICABLE, NOT_NAH, CaseNode, Refutation, classify
from .classify import fission_forest, is_acute_isosceles, leaf_factors, realize_untwisted
from .diagram import (build_diagram, cartan_dimension, common_part, edge_multiplicity, loop_multiplicity,
                      rescale, rescaled_edge, rescaled_loop)
from .errors import ParseError, PreconditionError, SizeLimit, UnknownFormat
from .io import emit_diagram, format_rational, parse_class, parse_diagram, parse_factor
from .puiseux import circle_of
from .tree import build_tree, render_tree, tree_to_json

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_NOT_NAH, EXIT_INCOMPLETE = 0, 2, 3, 4, 5


def _rat(x) -> str:
    return format_rational(x)


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))


def _circle_doc(I) -> dict:
    return {
        "circle": str(I),
        "ram": I.ram,
        "irr": I.irr,
        "slope": _rat(I.slope),
        "exponents": [_rat(k) for k in I.exponents],
        "levels": [_rat(k) for k in I.levels],
        "loop": loop_multiplicity(I),
        "rescaled_loop": _rat(rescaled_loop(I)),
    }


def cmd_circle(args) -> int:
    I = circle_of(parse_factor(args.factor))
    doc = _circle_doc(I)
    lines = [f"{k:<14}{', '.join(v) if isinstance(v, list) else v}" for k, v in doc.items()]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_pair(args) -> int:
    I, J = circle_of(parse_factor(args.first)), circle_of(parse_factor(args.second))
    data = common_part(I, J)
    doc = {
        "first": str(I),
        "second": str(J),
        "common": str(data.common),
        "fission_exponent": _rat(data.fission_exponent),
        "edge": edge_multiplicity(I, J),
        "rescaled_edge": _rat(rescaled_edge(I, J)),
    }
    lines = [f"{k:<18}{v}" for k, v in doc.items()]
    _emit(args, doc, lines)
    return EXIT_OK


def _matrix_lines(rows) -> list[str]:
    cells = [[_rat(x) for x in row] for row in rows]
    width = max((len(c) for row in cells for c in row), default=1)
    return ["  " + " ".join(c.rjust(width) for c in row) for row in cells]


def cmd_diagram(args) -> int:
    theta = parse_class(args.cls).to_class()
    d = build_diagram(theta)
    if args.format != "text" and not args.json:
        print(emit_diagram(d, args.format))
        return EXIT_OK
    doc = json.loads(emit_diagram(d, "json"))
    lines = ["vertices:"]
    for i, v in enumerate(d.vertices):
        lines.append(f"  {i}: {v}  r={d.r[i]}  mult={d.diagram.multiplicities[i]}")
    lines.append("B:")
    lines.extend(_matrix_lines(d.B))
    if args.rescaled:
        Bt = rescale(d).Btilde
        doc["rescaled"] = [[_rat(x) for x in row] for row in Bt]
        lines.append("rescaled B:")
        lines.extend(_matrix_lines(Bt))
    if args.dim:
        dim = cartan_dimension(d.diagram)
        doc["dim"] = dim
        lines.append(f"dim = {dim}")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_tree(args) -> int:
    theta = parse_class(args.cls).to_class()
    tree = build_tree(theta)
    fmt = "json" if args.json else args.format
    print(tree_to_json(tree) if fmt == "json" else render_tree(tree, fmt))
    return EXIT_OK


def _read_graph(source: str):
    if source == "-":
        text = sys.stdin.read()
    elif os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source
    return parse_diagram(text)


def _certificate_doc(node, labels) -> dict:
    if isinstance(node, Refutation):
        return {
            "choices": [{"triangle": [labels[i] for i in t], "apex": labels[a]} for t, a in node.choices],
            "multipliers": {str(k): _rat(v) for k, v in sorted(node.farkas.items())},
        }
    return {
        "triangle": [labels[i] for i in node.triple],
        "branches": [{"apex": labels[a], "case": _certificate_doc(sub, labels)} for a, sub in node.branches],
    }


def cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    v = classify(g, max_vertices=args.max_vertices, r_max=args.rmax)
    labels = [x if isinstance(x, (int, str)) else str(x) for x in g.vertices]
    doc = {"verdict": v.tag, "incomplete": v.incomplete, "reason": v.reason}
    lines = [f"verdict: {v.tag}"]
    if v.reason:
        lines.append(f"reason: {v.reason}")
    if v.tag == FISSION:
        doc["witness"] = str(v.witness)
        doc["assignment"] = {str(k): str(c) for k, c in v.assignment.items()}
        lines.append(f"witness: {v.witness}")
        lines.extend(f"  {k} -> {c}" for k, c in v.assignment.items())
    elif v.tag == CANDIDATE:
        doc["decoration"] = list(v.witness)
        lines.append("decoration: " + " ".join(f"{l}={r}" for l, r in zip(labels, v.witness)))
        lines.append("note: the necessary condition holds; realizability is not decided")
    elif v.tag == NOT_NAH:
        doc["certificate"] = _certificate_doc(v.certificate, labels)
        n = len(v.certificate.leaves()) if isinstance(v.certificate, CaseNode) else 1
        lines.append(f"certificate: {n} refuted pattern branches, all verified")
    _emit(args, doc, lines)
    if v.incomplete:
        print(f"incomplete: {v.reason}", file=sys.stderr)
    if v.tag == NOT_NAH:
        return EXIT_NOT_NAH
    if v.tag == NOT_APPLICABLE and v.incomplete:
        return EXIT_INCOMPLETE
    return EXIT_OK


def cmd_realize(args) -> int:
    g = _read_graph(args.graph)
    ok, triple = is_acute_isosceles(g)
    if not ok:
        raise PreconditionError(f"not a fission graph: triangle {triple} is not acute isosceles")
    tree = fission_forest(g)
    factors = leaf_factors(tree)
    theta = realize_untwisted(tree)
    doc = {"class": str(theta),
           "assignment": {str(g.vertices[l]): str(circle_of(factors[l])) for l in tree.leaves}}
    lines = [str(theta)] + [f"  {k} -> {c}" for k, c in doc["assignment"].items()]
    _emit(args, doc, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="nahgraph", description="Stokes circles, wild diagrams and fission trees.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("circle", parents=[common], help="invariants of one Stokes circle")
    s.add_argument("factor")
    s.set_defaults(func=cmd_circle)

    s = sub.add_parser("pair", parents=[common], help="common part and edge multiplicity of two circles")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("diagram", parents=[common], help="core diagram of an irregular class")
    s.add_argument("cls", metavar="class")
    s.add_argument("--rescaled", action="store_true", help="also print the rescaled matrix")
    s.add_argument("--dim", action="store_true", help="print the dimension for the class multiplicities")
    s.add_argument("--format", choices=["text", "matrix", "json", "dot"], default="text")
    s.set_defaults(func=cmd_diagram)

    s = sub.add_parser("tree", parents=[common], help="fission tree of an irregular class")
    s.add_argument("cls", metavar="class")
    s.add_argument("--format", choices=["ascii", "dot", "json"], default="ascii")
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("classify", parents=[common], help="classify a graph or diagram")
    s.add_argument("graph", help="file, '-' for stdin, or an inline matrix such as '0 1; 1 0'")
    s.add_argument("--rmax", type=int, default=16, help="bound for the fallback integer search")
    s.add_argument("--max-vertices", type=int, default=8, help="vertex bound for the exact search")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("realize", parents=[common], help="untwisted class realizing a fission graph")
    s.add_argument("graph")
    s.set_defaults(func=cmd_realize)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownFormat) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SizeLimit as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

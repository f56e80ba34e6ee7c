"""Exact computations with Stokes circles, wild nonabelian Hodge diagrams and fission trees."""
from .classify import (
    Verdict,
    check_decorated,
    classify,
    decoration_feasibility,
    fission_forest,
    is_acute_isosceles,
    is_complete_multipartite,
    realize_untwisted,
    verify_certificate,
)
from .cyclo import Cyclotomic, Rational, cyclo_arith, cyclo_root_of_unity
from .diagram import (
    DecoratedDiagram,
    Diagram,
    IrregularClass,
    RescaledDiagram,
    build_diagram,
    cartan_dimension,
    common_part,
    edge_multiplicity,
    fission_exponent,
    irregular_class,
    loop_multiplicity,
    rescale,
    rescaled_edge,
    rescaled_loop,
)
from .errors import (DimensionMismatch, EmptyClass, EqualCircles, NahError, NonPositiveExponent, NotAGraph,
                     NotSimplyLaced, ParseError, PreconditionError, SizeLimit, TreeClassMismatch, TwistedTree,
                     UltrametricViolation, UnknownFormat, ZeroMultiplicity)
from .io import emit_diagram, parse_class, parse_diagram, parse_factor, parse_irregular_class
from .puiseux import ExponentialFactor, StokesCircle, circle_of, circles_equal, factor_canonicalize, galois_conjugates, truncate
from .tree import FissionTree, build_tree, render_tree, tree_from_json, tree_to_json, verify_tree_properties

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "DecoratedDiagram",
    "Diagram",
    "DimensionMismatch",
    "EmptyClass",
    "EqualCircles",
    "ExponentialFactor",
    "FissionTree",
    "IrregularClass",
    "NahError",
    "NonPositiveExponent",
    "NotAGraph",
    "NotSimplyLaced",
    "ParseError",
    "PreconditionError",
    "Rational",
    "RescaledDiagram",
    "SizeLimit",
    "StokesCircle",
    "TreeClassMismatch",
    "TwistedTree",
    "UltrametricViolation",
    "UnknownFormat",
    "Verdict",
    "ZeroMultiplicity",
    "build_diagram",
    "build_tree",
    "cartan_dimension",
    "check_decorated",
    "circle_of",
    "circles_equal",
    "classify",
    "common_part",
    "cyclo_arith",
    "cyclo_root_of_unity",
    "decoration_feasibility",
    "edge_multiplicity",
    "emit_diagram",
    "factor_canonicalize",
    "fission_exponent",
    "fission_forest",
    "galois_conjugates",
    "irregular_class",
    "is_acute_isosceles",
    "is_complete_multipartite",
    "loop_multiplicity",
    "parse_class",
    "parse_diagram",
    "parse_factor",
    "parse_irregular_class",
    "realize_untwisted",
    "render_tree",
    "rescale",
    "rescaled_edge",
    "rescaled_loop",
    "tree_from_json",
    "tree_to_json",
    "truncate",
    "verify_certificate",
    "verify_tree_properties",
]

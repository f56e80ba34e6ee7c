"""Text formats: factor and class expressions, diagram files, serializers.

Factor grammar (whitespace is ignored)::

    class   := item (("+") item)*
    item    := [nat "*"] "<" factor ">"
    factor  := "0" | ["+"|"-"] term (("+"|"-") term)*
    term    := [coeff ["*"]] "z" ["^" (nat | "(" rat ")")]
    coeff   := rat ["i"] | "i" | unit | "(" cexpr ")"
    cexpr   := ["+"|"-"] cterm (("+"|"-") cterm)*
    cterm   := rat ["*"] unit | rat ["i"] | unit
    unit    := "i" | "E(" nat ")" ["^" nat]
    rat     := nat ["/" nat]

``E(n)`` is the primitive root ``exp(2 pi i / n)``.  Exponents may carry a
sign inside parentheses so that ``z^(0)`` and ``z^(-1)`` are rejected with a
dedicated error rather than a syntax error.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .cyclo import ONE, ZERO, Cyclotomic, cyclo_root_of_unity
from .diagram import DecoratedDiagram, Diagram, IrregularClass, irregular_class
from .errors import NonPositiveExponent, ParseError, UnknownFormat, ZeroMultiplicity
from .puiseux import ExponentialFactor, StokesCircle, circle_of, factor_canonicalize

__all__ = [
    "ClassExpression",
    "parse_factor",
    "parse_class",
    "parse_irregular_class",
    "parse_diagram",
    "parse_decorated_diagram",
    "emit_diagram",
    "format_rational",
]

_I = cyclo_root_of_unity(1, 4)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- scanning ---------------------------------------------------------
    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.eat(ch):
            found = self.peek() or "end of input"
            self.fail(f"expected {ch!r}, found {found!r}")

    def fail(self, message: str, offset: int | None = None, cls=ParseError):
        raise cls(message, self.pos if offset is None else offset, self.text)

    def at_end(self) -> bool:
        return self.peek() == ""

    def nat(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.fail("expected a natural number")
        self.pos = m.end()
        return int(m.group())

    def rat(self) -> Fraction:
        n = self.nat()
        if self.peek() == "/":
            start = self.pos
            self.pos += 1
            d = self.nat()
            if d == 0:
                self.fail("zero denominator", start)
            return Fraction(n, d)
        return Fraction(n)

    # -- coefficients -----------------------------------------------------
    def unit(self) -> Cyclotomic:
        if self.eat("i"):
            return _I
        if self.peek() == "E":
            self.pos += 1
            self.expect("(")
            start = self.pos
            n = self.nat()
            if n == 0:
                self.fail("E(0) is undefined", start)
            self.expect(")")
            e = 1
            if self.eat("^"):
                e = self.nat()
            return cyclo_root_of_unity(e, n)
        self.fail("expected 'i' or 'E(n)'")

    def cterm(self) -> Cyclotomic:
        if self.peek().isdigit():
            q = self.rat()
            if self.eat("*"):
                return self.unit() * q
            if self.peek() in ("i", "E"):
                return self.unit() * q
            return Cyclotomic.from_rational(q)
        return self.unit()

    def cexpr(self) -> Cyclotomic:
        total = ZERO
        sign = -1 if self.eat("-") else (self.eat("+") and 1) or 1
        while True:
            total = total + self.cterm() * sign
            if self.eat("+"):
                sign = 1
            elif self.eat("-"):
                sign = -1
            else:
                return total

    def coeff(self) -> Cyclotomic | None:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            c = self.cexpr()
            self.expect(")")
            return c
        if ch.isdigit():
            q = self.rat()
            if self.peek() in ("i", "E"):
                return self.unit() * q
            return Cyclotomic.from_rational(q)
        if ch in ("i", "E"):
            return self.unit()
        return None

    # -- factors ----------------------------------------------------------
    def exponent(self) -> Fraction:
        if self.eat("("):
            start = self.pos
            sign = -1 if self.eat("-") else 1
            k = sign * self.rat()
            self.expect(")")
        else:
            start = self.pos
            k = Fraction(self.nat())
        if k <= 0:
            self.fail(f"exponent {format_rational(k)} is not positive", start, NonPositiveExponent)
        return k

    def term(self) -> tuple[Fraction, Cyclotomic]:
        start = self.pos
        c = self.coeff()
        if c is not None:
            self.eat("*")
        if not self.eat("z"):
            if c is not None:
                self.fail("a term needs a power of z; constant terms are not allowed", start)
            self.fail("expected a term")
        k = self.exponent() if self.eat("^") else Fraction(1)
        return k, ONE if c is None else c

    def factor(self) -> ExponentialFactor:
        self.skip()
        if self.peek() == "0":
            save = self.pos
            self.pos += 1
            if self.peek() in (">", ""):
                return ExponentialFactor()
            self.pos = save
        terms = []
        sign = -1 if self.eat("-") else (self.eat("+") and 1) or 1
        while True:
            k, c = self.term()
            terms.append((k, c * sign))
            if self.eat("+"):
                sign = 1
            elif self.eat("-"):
                sign = -1
            else:
                break
        return factor_canonicalize(terms)

    def item(self) -> tuple[int, ExponentialFactor]:
        mult = 1
        if self.peek().isdigit():
            start = self.pos
            mult = self.nat()
            if mult == 0:
                self.fail("multiplicity must be positive", start, ZeroMultiplicity)
            self.expect("*")
        self.expect("<")
        q = self.factor()
        self.expect(">")
        return mult, q


@dataclass(frozen=True)
class ClassExpression:
    source: str
    entries: tuple[tuple[int, ExponentialFactor], ...]

    def to_class(self) -> IrregularClass:
        return irregular_class([(q, m) for m, q in self.entries])


def parse_factor(text: str) -> ExponentialFactor:
    """Parse a single exponential factor; surrounding ``<...>`` is allowed."""
    p = _Parser(text)
    bracketed = p.eat("<")
    q = p.factor()
    if bracketed:
        p.expect(">")
    if not p.at_end():
        p.fail(f"unexpected {p.peek()!r}")
    return q


def parse_class(text: str) -> ClassExpression:
    p = _Parser(text)
    entries = [p.item()]
    while p.eat("+"):
        entries.append(p.item())
    if not p.at_end():
        p.fail(f"unexpected {p.peek()!r}")
    return ClassExpression(text, tuple(entries))


def parse_irregular_class(text: str) -> IrregularClass:
    return parse_class(text).to_class()


# ---------------------------------------------------------------------------
# diagrams

def _label_of(v):
    return str(v) if isinstance(v, StokesCircle) else v


def emit_diagram(d, fmt: str = "matrix", max_parallel: int = 2) -> str:
    """Serialize a (decorated) diagram as ``json``, ``dot`` or ``matrix``.

    In DOT output an edge (or loop) count up to ``max_parallel`` is drawn as
    that many parallel edges; larger or negative counts become one labelled
    edge.
    """
    if isinstance(d, DecoratedDiagram):
        diag, r = d.diagram, d.r
    else:
        diag, r = d, None
    B, n = diag.B, diag.size
    if fmt == "matrix":
        return "\n".join(" ".join(str(x) for x in row) for row in B)
    if fmt == "json":
        verts = []
        for i, v in enumerate(diag.vertices):
            entry = {"id": i}
            if isinstance(v, StokesCircle):
                entry["circle"] = str(v.rep)
            else:
                entry["label"] = v
            if r is not None:
                entry["ram"] = r[i]
            if diag.multiplicities is not None:
                entry["mult"] = diag.multiplicities[i]
            verts.append(entry)
        return json.dumps({"vertices": verts, "B": [list(row) for row in B]}, indent=2)
    if fmt == "dot":
        lines = ["graph diagram {", "  node [shape=circle];"]
        for i, v in enumerate(diag.vertices):
            text = _label_of(v)
            if r is not None:
                text = f"{text}\\nr={r[i]}"
            lines.append(f'  v{i} [label="{text}"];')
        for i in range(n):
            for j in range(i, n):
                m = B[i][i] // 2 if i == j else B[i][j]
                if m == 0:
                    continue
                if 0 < m <= max_parallel:
                    lines.extend([f"  v{i} -- v{j};"] * m)
                else:
                    lines.append(f'  v{i} -- v{j} [label="{m}"];')
        lines.append("}")
        return "\n".join(lines)
    raise UnknownFormat(f"unknown diagram format {fmt!r}; expected json, dot or matrix")


def _vertex_from_json(v: dict):
    if v.get("circle") is not None:
        return circle_of(parse_factor(v["circle"]))
    return v.get("label", v.get("id"))


def _from_json(doc) -> tuple[Diagram, tuple[int, ...] | None]:
    if isinstance(doc, list):
        return Diagram.from_matrix(doc), None
    if not isinstance(doc, dict) or "B" not in doc:
        raise ParseError("JSON diagram needs a 'B' matrix")
    B = doc["B"]
    if "vertices" not in doc:
        return Diagram.from_matrix(B), None
    verts = doc["vertices"]
    labels = tuple(_vertex_from_json(v) if isinstance(v, dict) else v for v in verts)
    mult = None
    if verts and all(isinstance(v, dict) and "mult" in v for v in verts):
        mult = tuple(int(v["mult"]) for v in verts)
    r = None
    if verts and all(isinstance(v, dict) and "ram" in v for v in verts):
        r = tuple(int(v["ram"]) for v in verts)
    return Diagram(labels, tuple(tuple(int(x) for x in row) for row in B), mult), r


_MATRIX_ROW_SEP = re.compile(r"[;/\n]")


def _from_inline_matrix(text: str) -> Diagram:
    rows = [row.replace(",", " ").split() for row in _MATRIX_ROW_SEP.split(text)]
    rows = [row for row in rows if row]
    try:
        B = [[int(x) for x in row] for row in rows]
    except ValueError as exc:
        raise ParseError(f"bad matrix entry: {exc}") from None
    return Diagram.from_matrix(B)


def _from_edge_list(text: str) -> Diagram:
    order: list[str] = []
    edges: dict[tuple[str, str], int] = {}

    def vertex(name):
        if name not in order:
            order.append(name)
        return name

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            vertex(parts[0])
        elif len(parts) in (2, 3):
            u, v = vertex(parts[0]), vertex(parts[1])
            try:
                m = int(parts[2]) if len(parts) == 3 else 1
            except ValueError:
                raise ParseError(f"line {lineno}: multiplicity {parts[2]!r} is not an integer") from None
            key = (u, v) if u != v else (u, u)
            edges[key] = edges.get(key, 0) + m
        else:
            raise ParseError(f"line {lineno}: expected 'u v mult' or 'v'")
    idx = {v: i for i, v in enumerate(order)}
    n = len(order)
    B = [[0] * n for _ in range(n)]
    for (u, v), m in edges.items():
        i, j = idx[u], idx[v]
        if i == j:
            B[i][i] += 2 * m  # a loop counts twice on the diagonal
        else:
            B[i][j] += m
            B[j][i] += m
    labels = tuple(int(v) if v.isdigit() else v for v in order)
    if len(set(labels)) != len(labels):
        labels = tuple(order)
    return Diagram.from_matrix(B, labels)


def _looks_like_matrix(text: str) -> bool:
    if not re.fullmatch(r"[\s\d,;/\-]+", text):
        return False
    rows = [r.replace(",", " ").split() for r in _MATRIX_ROW_SEP.split(text)]
    rows = [r for r in rows if r]
    return len(rows) >= 1 and all(len(r) == len(rows) for r in rows)


def _parse_any(text: str) -> tuple[Diagram, tuple[int, ...] | None]:
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty diagram")
    if stripped[0] in "[{":
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos, text) from None
        return _from_json(doc)
    if _looks_like_matrix(stripped) and (";" in stripped or "/" in stripped or "\n" in stripped
                                         or len(stripped.split()) == 1):
        return _from_inline_matrix(stripped), None
    return _from_edge_list(text), None


def parse_diagram(text: str) -> Diagram:
    """Read a JSON diagram, an inline matrix (rows split by ``;`` or ``/``) or an edge list."""
    return _parse_any(text)[0]


def parse_decorated_diagram(text: str) -> DecoratedDiagram:
    diag, r = _parse_any(text)
    if r is None:
        raise ParseError("diagram carries no ramification decoration")
    return DecoratedDiagram(diag, r)

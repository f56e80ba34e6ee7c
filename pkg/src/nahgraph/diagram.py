"""Core diagrams of irregular classes.

Loop and edge multiplicities between Stokes circles, their rescaled
versions, and assembly of the core diagram of an irregular class.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptyClass, EqualCircles, PreconditionError
from .puiseux import (
    ExponentialFactor,
    StokesCircle,
    circle_of,
    circles_equal,
    truncate,
)

__all__ = [
    "IrregularClass",
    "CommonPartData",
    "Diagram",
    "DecoratedDiagram",
    "RescaledDiagram",
    "irregular_class",
    "loop_multiplicity",
    "common_part",
    "edge_multiplicity",
    "edge_multiplicity_gcd",
    "rescaled_loop",
    "rescaled_edge",
    "fission_exponent",
    "build_diagram",
    "rescale",
    "cartan_dimension",
]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# ---------------------------------------------------------------------------
# irregular classes

@dataclass(frozen=True)
class IrregularClass:
    """Finite multiset of distinct Stokes circles, sorted canonically."""

    entries: tuple[tuple[StokesCircle, int], ...]

    @property
    def circles(self) -> tuple[StokesCircle, ...]:
        return tuple(c for c, _ in self.entries)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.entries)

    @property
    def rank(self) -> int:
        return sum(c.ram * n for c, n in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return " + ".join(str(c) if n == 1 else f"{n}*{c}" for c, n in self.entries)


def irregular_class(items: Iterable) -> IrregularClass:
    """Build a class from factors, circles, or ``(factor_or_circle, mult)`` pairs.

    Conjugate factors land on the same circle and their multiplicities add.
    """
    acc: dict[StokesCircle, int] = {}
    for item in items:
        if isinstance(item, (ExponentialFactor, StokesCircle)):
            obj, n = item, 1
        else:
            obj, n = item
        if n < 1:
            raise PreconditionError(f"multiplicity {n} is not positive")
        circ = obj if isinstance(obj, StokesCircle) else circle_of(obj)
        acc[circ] = acc.get(circ, 0) + n
    return IrregularClass(tuple(sorted(acc.items(), key=lambda e: e[0].sort_key())))


# ---------------------------------------------------------------------------
# pairwise invariants

@dataclass(frozen=True)
class CommonPartData:
    common: StokesCircle
    fission_exponent: Fraction
    cut: Fraction


def _slope(q: ExponentialFactor) -> Fraction:
    return q.slope


def _agree(q: ExponentialFactor, q2: ExponentialFactor, level: Fraction) -> bool:
    return circles_equal(truncate(q, level), truncate(q2, level))


@lru_cache(maxsize=1 << 14)
def common_part(I: StokesCircle, J: StokesCircle) -> CommonPartData:
    """Common part, fission exponent and minimising cut of two distinct circles."""
    if I == J:
        raise EqualCircles(f"{I} and {J} are the same circle")
    q, q2 = I.rep, J.rep
    step = Fraction(1, _lcm(I.ram, J.ram))
    # the agreement predicate only changes just above an exponent, so the
    # least grid point where it holds is among these candidates
    candidates = sorted({step} | {e + step for e in I.exponents + J.exponents})
    cut = next(l for l in candidates if _agree(q, q2, l))
    qc = truncate(q, cut)
    f = max(_slope(q - qc), _slope(q2 - truncate(q2, cut)))
    return CommonPartData(common=circle_of(qc), fission_exponent=f, cut=cut)


def _scan_cut(I: StokesCircle, J: StokesCircle) -> Fraction:
    """Literal ascending scan of the grid; slow reference for :func:`common_part`."""
    step = Fraction(1, _lcm(I.ram, J.ram))
    top = max(I.slope, J.slope) + step
    l = step
    while l <= top:
        if _agree(I.rep, J.rep, l):
            return l
        l += step
    raise AssertionError("no agreement above both slopes")


def fission_exponent(I: StokesCircle, J: StokesCircle) -> Fraction:
    return common_part(I, J).fission_exponent


# ---------------------------------------------------------------------------
# multiplicities

def _rescaled_sum(exponents: Sequence[Fraction]) -> tuple[Fraction, int]:
    """Return (sum over the exponent chain, lcm of all denominators)."""
    total = Fraction(0)
    prev = 1
    for k in exponents:
        cur = _lcm(prev, k.denominator)
        total += k * (Fraction(1, prev) - Fraction(1, cur))
        prev = cur
    return total, prev


def rescaled_loop(I: StokesCircle) -> Fraction:
    """Rescaled loop multiplicity ``(B_II - 1) / Ram(I)^2`` from the exponents."""
    total, _ = _rescaled_sum(I.exponents)
    return total - 1


def rescaled_edge(I: StokesCircle, J: StokesCircle) -> Fraction:
    """Rescaled edge multiplicity ``B_IJ / (Ram(I) Ram(J))``."""
    data = common_part(I, J)
    total, den = _rescaled_sum(data.common.exponents)
    return total + data.fission_exponent / den - 1


def _loop_gcd(I: StokesCircle) -> int:
    if I.is_tame:
        return 0
    r = I.ram
    m = I.numerators()
    out = m[0] * (r - gcd(r, m[0]))
    g = gcd(r, m[0])
    for mj in m[1:]:
        g2 = gcd(g, mj)
        out += mj * (g - g2)
        g = g2
    return out - r * r + 1


def loop_multiplicity(I: StokesCircle) -> int:
    """Number of loops times two at the vertex of ``I``."""
    b = _loop_gcd(I)
    assert b == I.ram ** 2 * rescaled_loop(I) + 1, f"loop formulas disagree on {I}"
    return b


def edge_multiplicity(I: StokesCircle, J: StokesCircle) -> int:
    """Edge multiplicity ``Ram(I) Ram(J) * rescaled_edge(I, J)``."""
    val = I.ram * J.ram * rescaled_edge(I, J)
    assert val.denominator == 1, f"non-integral edge multiplicity between {I} and {J}"
    return int(val)


def edge_multiplicity_gcd(I: StokesCircle, J: StokesCircle) -> int:
    """Unscaled gcd form of the edge multiplicity.

    Independent route used to cross-check :func:`edge_multiplicity`.  The
    first term uses ``gcd(r', m'_0)``; the variant with ``gcd(r', m_0)``
    does not reproduce the known example matrices.
    """
    data = common_part(I, J)
    qc = truncate(I.rep, data.cut)
    # orient the pair so the larger different part belongs to the first circle
    if _slope(I.rep - qc) < data.fission_exponent:
        I, J = J, I
    r, r2 = I.ram, J.ram
    s_d = data.fission_exponent * r
    assert s_d.denominator == 1
    exps = data.common.exponents
    m = [int(k * r) for k in exps]
    m2 = [int(k * r2) for k in exps]
    out = 0
    g = r2
    for j, (mj, mj2) in enumerate(zip(m, m2)):
        g2 = gcd(g, mj2)
        out += mj * (r2 - g2) if j == 0 else mj * (g - g2)
        g = g2
    return out + int(s_d) * g - r * r2


# ---------------------------------------------------------------------------
# diagrams

@dataclass(frozen=True)
class Diagram:
    """Vertex labels plus a symmetric integer matrix with even diagonal."""

    vertices: tuple
    B: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...] | None = None

    def __post_init__(self):
        n = len(self.vertices)
        B = tuple(tuple(int(v) for v in row) for row in self.B)
        object.__setattr__(self, "B", B)
        if len(B) != n or any(len(row) != n for row in B):
            raise DimensionMismatch(f"matrix is not {n}x{n}")
        for i in range(n):
            if B[i][i] % 2:
                raise PreconditionError(f"diagonal entry B[{i}][{i}] = {B[i][i]} is odd")
            for j in range(i):
                if B[i][j] != B[j][i]:
                    raise PreconditionError(f"matrix is not symmetric at ({i}, {j})")
        if self.multiplicities is not None:
            if len(self.multiplicities) != n:
                raise DimensionMismatch("multiplicity vector has the wrong length")
            object.__setattr__(self, "multiplicities", tuple(self.multiplicities))

    @classmethod
    def from_matrix(cls, B, labels=None) -> "Diagram":
        B = [list(row) for row in B]
        labels = tuple(labels) if labels is not None else tuple(range(len(B)))
        return cls(labels, tuple(tuple(r) for r in B))

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def is_graph(self) -> bool:
        n = self.size
        return all(self.B[i][i] == 0 for i in range(n)) and all(
            self.B[i][j] >= 0 for i in range(n) for j in range(n))

    @property
    def is_simply_laced(self) -> bool:
        return self.is_graph and all(v in (0, 1) for row in self.B for v in row)

    def index(self, label) -> int:
        return self.vertices.index(label)

    def entry(self, a, b) -> int:
        """Multiplicity between the vertices labelled ``a`` and ``b``."""
        return self.B[self.index(a)][self.index(b)]

    def reordered(self, labels: Sequence) -> "Diagram":
        idx = [self.index(l) for l in labels]
        mult = None if self.multiplicities is None else tuple(self.multiplicities[i] for i in idx)
        return Diagram(tuple(labels), tuple(tuple(self.B[i][j] for j in idx) for i in idx), mult)


@dataclass(frozen=True)
class DecoratedDiagram:
    diagram: Diagram
    r: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        if len(self.r) != self.diagram.size:
            raise DimensionMismatch("decoration has the wrong length")
        if any(x < 1 for x in self.r):
            raise PreconditionError("decorations must be positive integers")

    @property
    def vertices(self) -> tuple:
        return self.diagram.vertices

    @property
    def B(self):
        return self.diagram.B

    def reordered(self, labels: Sequence) -> "DecoratedDiagram":
        idx = [self.diagram.index(l) for l in labels]
        return DecoratedDiagram(self.diagram.reordered(labels), tuple(self.r[i] for i in idx))


@dataclass(frozen=True)
class RescaledDiagram:
    vertices: tuple
    Btilde: tuple[tuple[Fraction, ...], ...]

    def entry(self, a, b) -> Fraction:
        return self.Btilde[self.vertices.index(a)][self.vertices.index(b)]


def build_diagram(theta: IrregularClass) -> DecoratedDiagram:
    """Core diagram of ``theta`` decorated by the ramification orders."""
    if not len(theta):
        raise EmptyClass("irregular class is empty")
    circles = theta.circles
    n = len(circles)
    B = [[0] * n for _ in range(n)]
    for i, I in enumerate(circles):
        B[i][i] = loop_multiplicity(I)
        for j in range(i):
            B[i][j] = B[j][i] = edge_multiplicity(I, circles[j])
    diag = Diagram(circles, tuple(map(tuple, B)), theta.multiplicities)
    return DecoratedDiagram(diag, tuple(c.ram for c in circles))


def rescale(d: DecoratedDiagram) -> RescaledDiagram:
    """Divide edges by ``r_i r_j`` and shifted loops ``B_ii - 1`` by ``r_i^2``."""
    B, r = d.B, d.r
    n = len(r)
    Bt = tuple(
        tuple(Fraction(B[i][j], r[i] * r[j]) if i != j else Fraction(B[i][i] - 1, r[i] ** 2)
              for j in range(n))
        for i in range(n))
    return RescaledDiagram(d.vertices, Bt)


def cartan_dimension(diagram: Diagram, d: Sequence[int] | None = None) -> int:
    """``2 - d^T (2 Id - B) d`` for a core diagram (legs not included)."""
    if d is None:
        if diagram.multiplicities is None:
            raise DimensionMismatch("no dimension vector given")
        d = diagram.multiplicities
    d = list(d)
    n = diagram.size
    if len(d) != n:
        raise DimensionMismatch(f"dimension vector has length {len(d)}, expected {n}")
    B = diagram.B
    quad = sum(d[i] * ((2 if i == j else 0) - B[i][j]) * d[j] for i in range(n) for j in range(n))
    return 2 - quad

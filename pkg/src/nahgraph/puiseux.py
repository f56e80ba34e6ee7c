"""Exponential factors and Stokes circles.

An exponential factor is a Puiseux polynomial ``q = sum a_k z^k`` with finitely
many strictly positive rational exponents ``k`` and cyclotomic coefficients.
Its Stokes circle is the orbit of ``q`` under ``z^(1/r) -> zeta_r z^(1/r)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable

from .cyclo import Cyclotomic, as_cyclotomic, cyclo_root_of_unity, format_cyclotomic
from .errors import NonPositiveExponent

__all__ = [
    "ExponentialFactor",
    "StokesCircle",
    "factor_canonicalize",
    "galois_conjugates",
    "circle_of",
    "circles_equal",
    "truncate",
    "TAME",
]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True)
class ExponentialFactor:
    """Sparse Puiseux polynomial in ``z``.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs with distinct
    positive exponents in decreasing order and nonzero coefficients.  Build
    instances with :func:`factor_canonicalize`.
    """

    terms: tuple[tuple[Fraction, Cyclotomic], ...] = ()

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(k for k, _ in self.terms)

    @property
    def ram(self) -> int:
        """Least ``r`` such that ``q`` is a polynomial in ``z^(1/r)``."""
        return reduce(_lcm, (k.denominator for k, _ in self.terms), 1)

    @property
    def slope(self) -> Fraction:
        return self.terms[0][0] if self.terms else Fraction(0)

    @property
    def irr(self) -> int:
        return int(self.slope * self.ram)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, k) -> Cyclotomic:
        for e, c in self.terms:
            if e == k:
                return c
        return Cyclotomic.from_rational(0)

    def __add__(self, other: "ExponentialFactor") -> "ExponentialFactor":
        return factor_canonicalize(self.terms + other.terms)

    def __neg__(self) -> "ExponentialFactor":
        return ExponentialFactor(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "ExponentialFactor") -> "ExponentialFactor":
        return self + (-other)

    def sort_key(self) -> tuple:
        return tuple((k, c.sort_key()) for k, c in self.terms)

    def __str__(self) -> str:
        return format_factor(self)


def factor_canonicalize(terms: Iterable) -> ExponentialFactor:
    """Merge equal exponents, drop zero coefficients, sort by decreasing exponent.

    ``terms`` is an iterable of ``(exponent, coefficient)`` pairs; exponents
    must be positive rationals, coefficients anything :func:`as_cyclotomic`
    accepts.
    """
    acc: dict[Fraction, Cyclotomic] = {}
    for k, c in terms:
        k = Fraction(k)
        if k <= 0:
            raise NonPositiveExponent(f"exponent {k} is not positive")
        c = as_cyclotomic(c)
        acc[k] = acc[k] + c if k in acc else c
    return ExponentialFactor(tuple(sorted(((k, c) for k, c in acc.items() if c),
                                          key=lambda t: t[0], reverse=True)))


ZERO_FACTOR = ExponentialFactor()


def _act(q: ExponentialFactor, j: int, r: int) -> ExponentialFactor:
    # z^(1/r) -> zeta_r^j z^(1/r) multiplies the z^(m/r) coefficient by zeta_r^(jm)
    return ExponentialFactor(tuple(
        (k, c * cyclo_root_of_unity(j * int(k * r), r)) for k, c in q.terms))


@lru_cache(maxsize=1 << 14)
def galois_conjugates(q: ExponentialFactor) -> tuple[ExponentialFactor, ...]:
    """The ``ram(q)`` images of ``q`` under the Galois action, identity first."""
    r = q.ram
    out = tuple(_act(q, j, r) for j in range(r))
    # minimal ramification makes the stabiliser trivial
    assert len(set(out)) == r, f"ramification of {q} overcounted"
    return out


def truncate(q: ExponentialFactor, k) -> ExponentialFactor:
    """Keep the terms of ``q`` with exponent ``>= k``."""
    k = Fraction(k)
    if k <= 0:
        raise ValueError("truncation point must be positive")
    return ExponentialFactor(tuple(t for t in q.terms if t[0] >= k))


def circles_equal(q: ExponentialFactor, q2: ExponentialFactor) -> bool:
    """Whether ``q2`` is a Galois conjugate of ``q``."""
    if q.exponents != q2.exponents:
        return False
    return q2 in galois_conjugates(q)


def _gcd_chain(r: int, exps: tuple[Fraction, ...]) -> list[int]:
    chain = [r]
    for k in exps:
        chain.append(gcd(chain[-1], int(k * r)))
    return chain


@dataclass(frozen=True)
class StokesCircle:
    """Galois orbit of an exponential factor, keyed by its minimal conjugate."""

    rep: ExponentialFactor
    ram: int = field(compare=False)
    irr: int = field(compare=False)
    slope: Fraction = field(compare=False)
    exponents: tuple[Fraction, ...] = field(compare=False)
    levels: tuple[Fraction, ...] = field(compare=False)

    @property
    def is_tame(self) -> bool:
        return self.rep.is_zero()

    @property
    def untwisted(self) -> bool:
        return self.ram == 1

    def numerators(self) -> tuple[int, ...]:
        """The integers ``m_j = k_j * ram``."""
        return tuple(int(k * self.ram) for k in self.exponents)

    def sort_key(self) -> tuple:
        return self.rep.sort_key()

    def __lt__(self, other: "StokesCircle") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return f"<{self.rep}>"


@lru_cache(maxsize=1 << 14)
def circle_of(q: ExponentialFactor) -> StokesCircle:
    """The Stokes circle of ``q`` with all its invariants."""
    rep = min(galois_conjugates(q), key=ExponentialFactor.sort_key)
    r = q.ram
    exps = q.exponents
    chain = _gcd_chain(r, exps)
    levels = tuple(k for k, a, b in zip(exps, chain, chain[1:]) if b < a)
    return StokesCircle(rep=rep, ram=r, irr=q.irr, slope=q.slope,
                        exponents=exps, levels=levels)


TAME = circle_of(ZERO_FACTOR)


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coeff_text(c: Cyclotomic) -> tuple[bool, str]:
    """Split a coefficient into (negative, magnitude text); empty text means 1."""
    if c.is_rational():
        v = c.rational()
        return v < 0, "" if abs(v) == 1 else _fmt_rat(abs(v))
    if c.conductor == 4 and not c.coords[0]:
        im = c.coords[1]
        return im < 0, "i" if abs(im) == 1 else f"{_fmt_rat(abs(im))}i"
    return False, format_cyclotomic(c)


def format_factor(q: ExponentialFactor) -> str:
    """Render ``q`` in the grammar accepted by :func:`nahgraph.io.parse_factor`."""
    if q.is_zero():
        return "0"
    out = []
    for k, c in q.terms:
        neg, mag = _coeff_text(c)
        mono = f"z^({_fmt_rat(k)})"
        piece = f"{mag}*{mono}" if mag else mono
        sign = "-" if neg else ("+" if out else "")
        out.append(sign + piece)
    return "".join(out)

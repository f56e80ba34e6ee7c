"""Exact cyclotomic numbers.

A :class:`Cyclotomic` is an element of some field Q(zeta_n), stored in the
power basis ``1, zeta_n, ..., zeta_n^(phi(n)-1)`` of the *smallest* such field
(the conductor).  Because the conductor is minimised on every construction
and the power basis of a fixed field is a basis, two values are equal exactly
when their ``(conductor, coords)`` data coincide.  Rationals are plain
:class:`fractions.Fraction` objects and embed as conductor-1 values.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "Cyclotomic",
    "cyclo_root_of_unity",
    "cyclo_arith",
    "as_cyclotomic",
]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _normal_order(n: int) -> int:
    # Q(zeta_2m) == Q(zeta_m) for odd m
    return n // 2 if n % 4 == 2 else n


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n)[:-1]:
        num = _poly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // lead
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not any(num), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row ``a`` holds the power-basis coordinates of zeta_n^a, 0 <= a < n."""
    deg = _phi(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce the x^deg term with the monic Phi_n
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            for j in range(deg):
                nxt[j] -= top * poly[j]
        cur = nxt
    return tuple(rows)


def _reduce(n: int, terms: dict[int, Fraction]) -> tuple[Fraction, ...]:
    """Coordinates of sum(c * zeta_n^a) in the power basis of Q(zeta_n)."""
    table = _power_table(n)
    out = [Fraction(0)] * _phi(n)
    for a, c in terms.items():
        if not c:
            continue
        row = table[a % n]
        for j, v in enumerate(row):
            if v:
                out[j] += c * v
    return tuple(out)


@lru_cache(maxsize=None)
def _lift_matrix(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Row j: coordinates in Q(zeta_n) of zeta_m^j, for j < phi(m)."""
    step = n // m
    table = _power_table(n)
    return tuple(table[(j * step) % n] for j in range(_phi(m)))


def _lift(coords: tuple[Fraction, ...], m: int, n: int) -> list[Fraction]:
    if m == n:
        return list(coords)
    out = [Fraction(0)] * _phi(n)
    for c, row in zip(coords, _lift_matrix(m, n)):
        if c:
            for j, v in enumerate(row):
                if v:
                    out[j] += c * v
    return out


@lru_cache(maxsize=None)
def _descent_data(m: int, n: int):
    """Pivot rows and an inverse that recover Q(zeta_m) coordinates from a lift.

    Returns ``(pivots, inverse)`` where ``inverse`` maps the lifted
    coordinates at ``pivots`` back to the phi(m) coordinates in Q(zeta_m).
    """
    lift = _lift_matrix(m, n)
    k = len(lift)
    cols = [[Fraction(lift[i][j]) for i in range(k)] for j in range(_phi(n))]
    pivots: list[int] = []
    basis: list[list[Fraction]] = []
    for j, col in enumerate(cols):
        trial = basis + [col]
        if _rank(trial) == len(trial):
            basis.append(col)
            pivots.append(j)
            if len(basis) == k:
                break
    square = [[basis[p][i] for i in range(k)] for p in range(k)]
    return tuple(pivots), _invert(square)


def _rank(rows: list[list[Fraction]]) -> int:
    mat = [r[:] for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(rank + 1, len(mat)):
            if mat[i][c]:
                f = mat[i][c] / mat[rank][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def _invert(mat: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    k = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(mat)]
    for c in range(k):
        piv = next(i for i in range(c, k) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [v / p for v in aug[c]]
        for i in range(k):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return tuple(tuple(row[k:]) for row in aug)


def _descend(coords: tuple[Fraction, ...], n: int) -> tuple[int, tuple[Fraction, ...]]:
    """Rewrite an element of Q(zeta_n) over its minimal cyclotomic field."""
    if not any(coords[1:]):
        return 1, (coords[0],)
    for m in _divisors(n):
        if m == n:
            break
        if m % 4 == 2:
            continue
        pivots, inverse = _descent_data(m, n)
        target = [coords[p] for p in pivots]
        k = len(pivots)
        y = tuple(sum((inverse[i][p] * target[p] for p in range(k)), Fraction(0)) for i in range(k))
        if tuple(_lift(y, m, n)) == coords:
            return m, y
    return n, coords


class Cyclotomic:
    """An exact element of a cyclotomic field in canonical form.

    Instances are immutable and hashable.  Use :func:`cyclo_root_of_unity`,
    :meth:`from_rational` or :meth:`gaussian` to build values and the usual
    ``+``, ``-``, ``*`` operators to combine them.
    """

    __slots__ = ("_n", "_coords", "_hash")

    def __init__(self, conductor: int, coords) -> None:
        # trusted constructor: callers pass canonical data
        self._n = conductor
        self._coords = tuple(coords)
        self._hash = hash((conductor, self._coords))

    @classmethod
    def from_terms(cls, n: int, terms: dict[int, object]) -> "Cyclotomic":
        """Canonicalise ``sum(c * zeta_n^a for a, c in terms.items())``."""
        if n < 1:
            raise ValueError("conductor must be positive")
        terms = {a: Fraction(c) for a, c in terms.items()}
        N = _normal_order(n)
        if N != n:
            # zeta_n^a = (-1)^a zeta_N^(a (N+1)/2) when n = 2N, N odd
            half = (N + 1) // 2
            moved: dict[int, Fraction] = {}
            for a, c in terms.items():
                b = (a * half) % N
                moved[b] = moved.get(b, Fraction(0)) + (c if a % 2 == 0 else -c)
            terms, n = moved, N
        return cls._canonical(n, _reduce(n, terms))

    @classmethod
    def _canonical(cls, n: int, coords: tuple[Fraction, ...]) -> "Cyclotomic":
        return _canonical_cached(n, coords)

    @classmethod
    def from_rational(cls, value) -> "Cyclotomic":
        return cls(1, (Fraction(value),))

    @classmethod
    def gaussian(cls, re, im=0) -> "Cyclotomic":
        """The Gaussian rational ``re + im*i``."""
        return cls.from_terms(4, {0: re, 1: im})

    # -- data -------------------------------------------------------------
    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self._coords

    @property
    def terms(self) -> dict[int, Fraction]:
        """Nonzero power-basis coefficients, keyed by exponent of zeta_n."""
        return {a: c for a, c in enumerate(self._coords) if c}

    def is_zero(self) -> bool:
        return self._n == 1 and not self._coords[0]

    def is_rational(self) -> bool:
        return self._n == 1

    def rational(self) -> Fraction:
        if self._n != 1:
            raise ValueError(f"{self} is not rational")
        return self._coords[0]

    def sort_key(self) -> tuple:
        # positive coordinates sort first so that orbit minima read naturally
        return (self._n, tuple((c <= 0, abs(c)) for c in self._coords))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self._n, tuple(-c for c in self._coords))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _add(other, -self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self._n == other._n and self._coords == other._coords
        if isinstance(other, (int, _RationalABC)):
            return self._n == 1 and self._coords[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def __str__(self) -> str:
        return format_cyclotomic(self)


@lru_cache(maxsize=1 << 16)
def _canonical_cached(n: int, coords: tuple[Fraction, ...]) -> Cyclotomic:
    m, y = _descend(coords, n)
    return Cyclotomic(m, y)


def _coerce(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Cyclotomic.from_rational(x)
    return NotImplemented


def _common(x: Cyclotomic, y: Cyclotomic) -> int:
    return _normal_order(_lcm(x._n, y._n))


@lru_cache(maxsize=1 << 16)
def _add(x: Cyclotomic, y: Cyclotomic) -> Cyclotomic:
    if x._n == y._n == 1:
        return Cyclotomic(1, (x._coords[0] + y._coords[0],))
    n = _common(x, y)
    a = _lift(x._coords, x._n, n)
    b = _lift(y._coords, y._n, n)
    return Cyclotomic._canonical(n, tuple(u + v for u, v in zip(a, b)))


@lru_cache(maxsize=1 << 16)
def _mul(x: Cyclotomic, y: Cyclotomic) -> Cyclotomic:
    if x._n == 1:
        c = x._coords[0]
        return Cyclotomic(y._n, tuple(c * v for v in y._coords)) if c else ZERO
    if y._n == 1:
        return _mul(y, x)
    n = _common(x, y)
    a = _lift(x._coords, x._n, n)
    b = _lift(y._coords, y._n, n)
    prod: dict[int, Fraction] = {}
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    prod[i + j] = prod.get(i + j, Fraction(0)) + u * v
    return Cyclotomic._canonical(n, _reduce(n, prod))


ZERO = Cyclotomic(1, (Fraction(0),))
ONE = Cyclotomic(1, (Fraction(1),))


def cyclo_root_of_unity(k: int, n: int) -> Cyclotomic:
    """Canonical form of exp(2*pi*i*k/n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return _root(k % n, n)


@lru_cache(maxsize=None)
def _root(k: int, n: int) -> Cyclotomic:
    g = gcd(k, n)
    return Cyclotomic.from_terms(n // g, {k // g: 1})


def cyclo_arith(op: str, x, y=None) -> Cyclotomic:
    """Apply ``add``, ``mul`` or ``neg`` (``sub`` also accepted) exactly."""
    x = as_cyclotomic(x)
    if op == "neg":
        return -x
    y = as_cyclotomic(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def as_cyclotomic(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, complex):
        raise TypeError("floating-point values are not accepted")
    return Cyclotomic.from_rational(Fraction(x))


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_cyclotomic(x: Cyclotomic) -> str:
    """Text form that the class-expression parser reads back.

    Rationals print as ``p/q``, Gaussian rationals as ``(a+bi)`` and anything
    else as a parenthesised sum of ``c*E(n)^a`` terms.
    """
    if x._n == 1:
        return _fmt_rat(x._coords[0])
    if x._n == 4:
        re, im = x._coords
        mag = "" if abs(im) == 1 else _fmt_rat(abs(im))
        if not re:
            return f"{'-' if im < 0 else ''}{mag}i"
        sign = "-" if im < 0 else "+"
        return f"({_fmt_rat(re)}{sign}{mag}i)"
    parts = []
    for a, c in enumerate(x._coords):
        if not c:
            continue
        mag = _fmt_rat(abs(c))
        if a == 0:
            body = mag
        else:
            body = f"E({x._n})" if a == 1 else f"E({x._n})^{a}"
            if abs(c) != 1:
                body = f"{mag}*{body}"
        parts.append(("-" if c < 0 else "+", body))
    text = "".join(s + b for s, b in parts)
    if text.startswith("+"):
        text = text[1:]
    return f"({text})"

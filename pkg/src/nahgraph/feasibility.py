"""Exact feasibility of homogeneous linear systems over positive rationals.

Equalities are eliminated by Gaussian elimination, the remaining weak and
strict inequalities by Fourier-Motzkin elimination.  Every derived row keeps
the multipliers of the original rows it came from, so an infeasible system
yields a Farkas-style certificate: a combination of the original rows whose
coefficients all cancel while its relation reads ``0 < 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

__all__ = ["Constraint", "FeasibilitySystem", "Solution", "solve", "check_farkas"]

EQ, LE, LT = "eq", "le", "lt"


@dataclass(frozen=True)
class Constraint:
    """``sum(coeffs[i] * r_i)  rel  0`` with ``rel`` one of eq, le, lt."""

    coeffs: tuple[int, ...]
    rel: str
    note: str = ""

    def holds(self, r: Sequence) -> bool:
        v = sum(c * x for c, x in zip(self.coeffs, r))
        return v == 0 if self.rel == EQ else (v <= 0 if self.rel == LE else v < 0)


@dataclass
class FeasibilitySystem:
    """Homogeneous constraints on ``nvars`` variables, all implicitly positive."""

    nvars: int
    constraints: list[Constraint] = field(default_factory=list)

    def add(self, coeffs, rel: str, note: str = "") -> None:
        self.constraints.append(Constraint(tuple(int(c) for c in coeffs), rel, note))

    def positivity(self) -> list[Constraint]:
        return [Constraint(tuple(-1 if j == i else 0 for j in range(self.nvars)), LT, f"r{i} > 0")
                for i in range(self.nvars)]

    def all_constraints(self) -> list[Constraint]:
        return self.constraints + self.positivity()


@dataclass
class Solution:
    feasible: bool
    point: tuple[Fraction, ...] | None = None
    # multipliers over all_constraints() proving infeasibility
    farkas: dict[int, Fraction] | None = None


class _Row:
    __slots__ = ("a", "rel", "prov")

    def __init__(self, a, rel, prov):
        self.a = a
        self.rel = rel
        self.prov = prov


def _combine(p: dict, q: dict, sp: Fraction, sq: Fraction) -> dict:
    out = {k: v * sp for k, v in p.items()}
    for k, v in q.items():
        out[k] = out.get(k, Fraction(0)) + v * sq
    return {k: v for k, v in out.items() if v}


def _normalise(row: _Row) -> _Row:
    nz = [x for x in row.a if x]
    if not nz:
        return row
    den = lcm(*(x.denominator for x in nz))
    num = gcd(*(int(x * den) for x in nz))
    s = Fraction(den, num)
    return _Row([x * s for x in row.a], row.rel, {k: v * s for k, v in row.prov.items()})


def solve(system: FeasibilitySystem, want_point: bool = True) -> Solution:
    """Decide whether the system has a strictly positive rational solution."""
    n = system.nvars
    rows = [
        _Row([Fraction(c) for c in con.coeffs], con.rel, {i: Fraction(1)})
        for i, con in enumerate(system.all_constraints())
    ]
    eqs = [r for r in rows if r.rel == EQ]
    ineqs = [r for r in rows if r.rel != EQ]

    # Gaussian elimination on the equalities
    pivots: list[tuple[int, _Row]] = []
    for row in eqs:
        for col, prow in pivots:
            if row.a[col]:
                f = row.a[col] / prow.a[col]
                row = _Row([x - f * y for x, y in zip(row.a, prow.a)], EQ, _combine(row.prov, prow.prov, Fraction(1), -f))
        col = next((j for j, x in enumerate(row.a) if x), None)
        if col is None:
            continue
        for k, (c2, prow) in enumerate(pivots):
            if prow.a[col]:
                f = prow.a[col] / row.a[col]
                pivots[k] = (c2, _Row([x - f * y for x, y in zip(prow.a, row.a)], EQ,
                                      _combine(prow.prov, row.prov, Fraction(1), -f)))
        pivots.append((col, row))
    pivot_cols = {c for c, _ in pivots}

    def substitute(row: _Row) -> _Row:
        for col, prow in pivots:
            if row.a[col]:
                f = row.a[col] / prow.a[col]
                row = _Row([x - f * y for x, y in zip(row.a, prow.a)], row.rel,
                           _combine(row.prov, prow.prov, Fraction(1), -f))
        return _normalise(row)

    current = [substitute(r) for r in ineqs]
    free = [j for j in range(n) if j not in pivot_cols]
    history: list[tuple[int, list[_Row]]] = []

    def contradiction(rows_) -> _Row | None:
        for r in rows_:
            if not any(r.a) and r.rel == LT:
                return r
        return None

    bad = contradiction(current)
    remaining = list(free)
    while bad is None and remaining:
        # eliminate the variable with the fewest generated pairs
        def cost(j):
            pos = sum(1 for r in current if r.a[j] > 0)
            neg = sum(1 for r in current if r.a[j] < 0)
            return pos * neg - pos - neg
        j = min(remaining, key=cost)
        remaining.remove(j)
        involved = [r for r in current if r.a[j]]
        history.append((j, involved))
        pos = [r for r in involved if r.a[j] > 0]
        neg = [r for r in involved if r.a[j] < 0]
        nxt = [r for r in current if not r.a[j]]
        for p in pos:
            for q in neg:
                sp, sq = -q.a[j], p.a[j]
                a = [sp * x + sq * y for x, y in zip(p.a, q.a)]
                a[j] = Fraction(0)
                rel = LT if LT in (p.rel, q.rel) else LE
                nxt.append(_normalise(_Row(a, rel, _combine(p.prov, q.prov, sp, sq))))
        current = _dedupe(nxt)
        bad = contradiction(current)

    if bad is not None:
        farkas = {k: v for k, v in bad.prov.items()}
        return Solution(False, farkas=farkas)
    if not want_point:
        return Solution(True)

    values: dict[int, Fraction] = {}
    for j, involved in reversed(history):
        lo = hi = None
        lo_strict = hi_strict = False
        for r in involved:
            rest = sum((r.a[k] * values.get(k, Fraction(0)) for k in range(n) if k != j and r.a[k]), Fraction(0))
            bound = -rest / r.a[j]
            strict = r.rel == LT
            if r.a[j] > 0:  # x <= bound
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_strict = bound, strict
            else:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_strict = bound, strict
        values[j] = _pick(lo, lo_strict, hi, hi_strict)
    for j in free:
        values.setdefault(j, Fraction(1))
    for col, prow in reversed(pivots):
        rest = sum((prow.a[k] * values[k] for k in range(n) if k != col and prow.a[k]), Fraction(0))
        values[col] = -rest / prow.a[col]
    point = tuple(values[j] for j in range(n))
    assert all(c.holds(point) for c in system.all_constraints()), "back-substitution failed"
    return Solution(True, point=point)


def _pick(lo, lo_strict, hi, hi_strict) -> Fraction:
    if lo is None and hi is None:
        return Fraction(1)
    if hi is None:
        return lo + 1 if lo_strict else lo
    if lo is None:
        return hi - 1 if hi_strict else hi
    if not lo_strict:
        return lo
    if not hi_strict:
        return hi
    return (lo + hi) / 2


def _dedupe(rows: list[_Row]) -> list[_Row]:
    best: dict[tuple, _Row] = {}
    for r in rows:
        if not any(r.a):
            if r.rel == LT:
                best[("bad",)] = r
            continue
        key = tuple(r.a)
        old = best.get(key)
        if old is None or (r.rel == LT and old.rel != LT):
            best[key] = r
    return list(best.values())


def check_farkas(system: FeasibilitySystem, farkas: dict[int, Fraction]) -> bool:
    """Verify an infeasibility certificate independently of the elimination.

    Multipliers on inequalities must be nonnegative, at least one strict row
    must carry a positive multiplier, and all coefficients must cancel.
    """
    cons = system.all_constraints()
    total = [Fraction(0)] * system.nvars
    strict_used = False
    for k, lam in farkas.items():
        con = cons[k]
        if con.rel != EQ and lam < 0:
            return False
        if con.rel == LT and lam > 0:
            strict_used = True
        for i, c in enumerate(con.coeffs):
            total[i] += lam * c
    return strict_used and not any(total)

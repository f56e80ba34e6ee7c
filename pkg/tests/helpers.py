"""Random generators and independent oracles shared by the test modules."""
from __future__ import annotations

import cmath
import itertools
import random
from fractions import Fraction
from math import gcd

from nahgraph.cyclo import Cyclotomic
from nahgraph.diagram import Diagram, irregular_class
from nahgraph.puiseux import ExponentialFactor, factor_canonicalize, truncate

COEFFS = [1, -1, 2, -2, 3, Cyclotomic.gaussian(0, 1), Cyclotomic.gaussian(1, 1), Cyclotomic.gaussian(-1, 2)]


def evaluate(c: Cyclotomic) -> complex:
    """Numerical value of a cyclotomic number, for cross-checks only."""
    n = c.conductor
    return sum(float(v) * cmath.exp(2j * cmath.pi * a / n) for a, v in c.terms.items())


def random_factor(rng: random.Random, max_ram=6, max_slope=5, max_terms=3) -> ExponentialFactor:
    while True:
        d = rng.randint(1, max_ram)
        nterms = rng.randint(1, max_terms)
        nums = rng.sample(range(1, max_slope * d + 1), min(nterms, max_slope * d))
        q = factor_canonicalize([(Fraction(m, d), rng.choice(COEFFS)) for m in nums])
        if not q.is_zero():
            return q


def random_class(rng: random.Random, max_circles=5, max_ram=6, max_slope=5):
    """A class whose circles often share leading terms, so common parts are nontrivial."""
    factors = []
    target = rng.randint(1, max_circles)
    while len(factors) < target:
        if factors and rng.random() < 0.6:
            base = rng.choice(factors)
            cut = rng.choice(base.exponents)
            head = truncate(base, cut) if rng.random() < 0.7 else ExponentialFactor()
            tail = random_factor(rng, max_ram, max_slope)
            lower = [(k, c) for k, c in tail.terms if not head.terms or k < head.exponents[-1]]
            q = factor_canonicalize(head.terms + tuple(lower))
        else:
            q = random_factor(rng, max_ram, max_slope)
        if q.is_zero() or q.ram > max_ram or q.slope > max_slope:
            continue
        factors.append(q)
    return irregular_class([(q, rng.randint(1, 3)) for q in factors])


def random_untwisted_class(rng: random.Random, max_circles=7, max_degree=10):
    """Distinct integer polynomials sharing prefixes; edges are deg(q - q') - 1 <= 9."""
    polys: list[tuple[int, ...]] = []
    target = rng.randint(1, max_circles)
    top = rng.randint(1, max_degree)
    attempts = 0
    while len(polys) < target and attempts < 200:
        attempts += 1
        if polys and rng.random() < 0.7:
            base = rng.choice(polys)
            k = rng.randint(1, top)
            p = tuple(base[j] if j > k else rng.randint(-2, 2) for j in range(top + 1))
        else:
            p = tuple(rng.randint(-2, 2) for _ in range(top + 1))
        p = (0,) + p[1:]  # no constant term
        if any(p) and p not in polys:
            polys.append(p)
    return irregular_class([factor_canonicalize([(j, c) for j, c in enumerate(p) if c]) for p in polys])


def untwisted_degree(q: ExponentialFactor, q2: ExponentialFactor) -> int:
    """deg(q - q2) by comparing coefficients, without the common-part machinery."""
    exps = sorted(set(q.exponents) | set(q2.exponents), reverse=True)
    for k in exps:
        if q.coefficient(k) != q2.coefficient(k):
            return int(k)
    return 0


def brute_force_decoration(diagram: Diagram, r_max: int):
    """Exhaustive search over r in {1..r_max}^n using only the rescaled definitions."""
    B, n = diagram.B, diagram.size
    for r in itertools.product(range(1, r_max + 1), repeat=n):
        if gcd(*r) != 1:
            continue
        bt = [[Fraction(B[i][j], r[i] * r[j]) if i != j else Fraction(B[i][i] - 1, r[i] ** 2)
               for j in range(n)] for i in range(n)]
        ok = all(sorted((bt[i][j], bt[i][k], bt[j][k]))[1] == max(bt[i][j], bt[i][k], bt[j][k])
                 for i, j, k in itertools.combinations(range(n), 3))
        ok = ok and all(bt[i][i] <= bt[i][j] for i in range(n) for j in range(n) if i != j)
        if ok:
            return r
    return None


def two_largest_equal(a, b, c) -> bool:
    s = sorted((a, b, c))
    return s[1] == s[2]


def graph(rows) -> Diagram:
    return Diagram.from_matrix(rows)

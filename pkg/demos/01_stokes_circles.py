"""Stokes circles: Galois orbits of exponential factors and their invariants."""
from fractions import Fraction

from nahgraph import circle_of, galois_conjugates, loop_multiplicity, parse_factor, rescaled_loop

# A factor with exponents 5/2 and 7/3 lives in z^(1/6), so its orbit has 6 members.
q = parse_factor("z^(5/2) + z^(7/3)")
I = circle_of(q)
print("circle      ", I)
print("ramification", I.ram, " irregularity", I.irr, " slope", I.slope)
print("levels      ", [str(k) for k in I.levels])
print("orbit size  ", len(galois_conjugates(q)))

# every conjugate names the same circle
assert all(circle_of(p) == I for p in galois_conjugates(q))

# loop multiplicity, plus its rescaled form (B - 1) / r^2
print("loop B_II   ", loop_multiplicity(I), " rescaled", rescaled_loop(I))

# for a single monomial <z^(s/r)> the loop count is (r - 1)(s - r - 1)
for k in (Fraction(5, 3), Fraction(3, 2), Fraction(7, 3), Fraction(1, 2)):
    J = circle_of(parse_factor(f"z^({k})"))
    s, r = k.numerator, k.denominator
    print(f"<z^({k})>: B = {loop_multiplicity(J):>3}   (r-1)(s-r-1) = {(r - 1) * (s - r - 1)}")

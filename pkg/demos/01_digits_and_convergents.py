"""Pierce digits of rationals: extraction, convergents, and exact round trips.

Every rational in [0, 1] has a finite expansion x = 1/d1 - 1/(d1 d2) + ...
with strictly increasing digits.  Because everything is a Fraction, the
identities hold with equality, not within a tolerance.
"""

from fractions import Fraction as F

from piercesum import PierceSeq, convergent, digit1, expand, phi, shift, shift_power

x = F(13, 47)
print(f"x = {x}")
print(f"first digit  floor(1/x) = {digit1(x)}")
print(f"shifted      1 - d*x    = {shift(x)}")

digits = expand(x)
print(f"\nfull expansion: {digits}")
print("convergents and exact residuals:")
for n in range(1, len(digits) + 1):
    s_n = convergent(x, n)
    print(f"  s_{n} = {str(s_n):>12}   x - s_{n} = {x - s_n}")

# the residual at step n is (-1)^n T^n x / (d1 ... dn); watch it vanish
print(f"\nshift orbit: {[str(shift_power(x, n)) for n in range(len(digits) + 1)]}")

# evaluating the digit sequence reproduces x exactly
assert phi(PierceSeq(digits)).lo == x
print(f"phi(digits) == x exactly: {phi(PierceSeq(digits)).lo} == {x}")

# rationals with consecutive last digits never appear as expansions:
# 1/3 = [3] rather than [2, 3]
print(f"\nexpand(1/3) = {expand(F(1, 3))}, yet phi((2,3)) = {phi((2, 3)).lo} too")

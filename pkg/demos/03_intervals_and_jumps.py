"""Fundamental intervals, digit partitions, and the jumps of the error sum.

Points sharing their first n digits fill an interval whose endpoints and
open/closed flags are exact; at every interior rational, E has a one-sided
jump whose size is an explicit product formula.
"""

from fractions import Fraction as F

from piercesum import (
    cylinder_extrema,
    fundamental_interval,
    interval_length,
    jumps_at,
    locate,
    oscillation,
    partition,
)

for prefix in [(2,), (1, 2), (2, 4)]:
    iv = fundamental_interval(prefix)
    print(f"I_{prefix} = {iv}   length {iv.length}")

x = F(3, 8)
print(f"\nlocate({x}, 2) = {locate(x, 2)}")

# order-1 intervals tile [0,1]; a digit cap leaves an exactly known residual
part = partition(1, digit_cap=5)
print(f"\norder-1 partition, digits <= 5:")
for iv in part.intervals:
    print(f"  {iv.sigma}: {iv}   length {iv.length}")
print(f"  residual mass beyond the cap: {part.residual}")
assert part.covered_mass + part.residual == 1

# one-sided limits at rationals: E is continuous on exactly one side
for x in [F(1, 2), F(1, 3), F(3, 8)]:
    rep = jumps_at(x)
    print(
        f"\nE near {x}: value {rep.interior_value}, left limit {rep.left_limit}, "
        f"right limit {rep.right_limit} (discontinuous on the {rep.side})"
    )

# over a cylinder, E* spans exactly n * interval length
for prefix in [(2,), (1, 2)]:
    ext = cylinder_extrema(prefix)
    print(
        f"\ncylinder {prefix}: max {ext.maximum} at {ext.argmax}, "
        f"min {ext.minimum} at {ext.argmin}, oscillation {oscillation(prefix)}"
    )
    assert ext.spread == len(prefix) * interval_length(prefix)

"""Box-counting dimension of the graph: empirical counts against theory.

The graph of the error sum has box-counting dimension 1.  Empirically:
occupied-cell counts over calibrated graph samples scale like 1/eps, and
they stay far below the theoretical covering bound built from digit
products reaching e^M.
"""

from fractions import Fraction as F

from piercesum import (
    box_count_empirical,
    box_count_sweep,
    dimension_slope,
    hausdorff_cover_sum,
    lambda_cover_counts,
)

scales = [F(1, 2**k) for k in range(6, 13)]
counts = box_count_sweep(scales)
print("eps        N(eps)")
for eps, count in counts:
    print(f"2^-{eps.denominator.bit_length() - 1:<7} {count}")
fit = dimension_slope(counts)
print(f"least-squares slope of log N vs log(1/eps): {fit.slope:.4f}  (limit: 1)")

print("\ntheoretical covering counts at eps = 2 e^-M:")
for M in (9, 10, 11):
    rep = lambda_cover_counts(M)
    empirical = box_count_empirical(rep.epsilon)
    print(
        f"  M={M}: n={rep.n}, bound {rep.total_bound:.3e}, "
        f"empirical {empirical} (<= bound: {empirical <= rep.total_bound})"
    )

print("\ncovering sums (diam^s over order-n boxes, s = 3/2) shrink with n:")
for n in range(1, 7):
    cover = hausdorff_cover_sum(n, F(3, 2), digit_cap=20)
    print(f"  n={n}: <= {float(cover.upper):.6f}")

"""Higher-level numerics on top of the exact primitives.

Covers the Riemann integral of the error-sum function, variation growth
over digit partitions, intermediate-value root localization by interval
branch-and-bound, certified covering-sum diagnostics, and box-counting
dimension estimation of the function's graph.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from multiprocessing import get_context

import numpy as np

from .certify import exp_enclosure, iroot, log_enclosure, pow_enclosure
from .core import DepthOverflowError, DomainError, Rat, as_rational
from .errorsum import cylinder_extrema, estar_digits, esum, oscillation
from .intervals import FundInterval, fundamental_interval, partition
from .sequences import Enclosure


class ResourceLimitError(RuntimeError):
    """An enumeration or refinement exceeded its configured budget."""


class DegenerateFitError(ValueError):
    """A regression input carries no usable signal."""


# ---------------------------------------------------------------------------
# Riemann integral of the error-sum function
# ---------------------------------------------------------------------------

#: Fixed-point scale for merging grid sums.  Summing ~10^6 exact values
#: directly would blow up the common denominator, so each point value is
#: floored to a multiple of 10^-40 first; the grid average then carries a
#: quantization error below 10^-40, dozens of orders under any tolerance here.
INTEGRAL_SCALE = 10**40

INTEGRAL_TARGET = Fraction(-1, 8)


def _esum_floor_scaled(p: int, q: int, scale: int) -> int:
    # floor(E(p/q) * scale) for p/q in lowest terms, pure integer arithmetic
    if p == 0:
        return 0
    num, den, k, r = 0, 1, 0, p
    while r:
        d, r = divmod(q, r)
        k += 1
        num = num * d + (k - 1 if k % 2 else -(k - 1))
        den *= d
    return (num * scale) // den


def _grid_chunk(args: tuple[int, int, int, int]) -> int:
    start, stop, grid, scale = args
    total = 0
    for k in range(start, stop):
        g = gcd(k, grid)
        total += _esum_floor_scaled(k // g, grid // g, scale)
    return total


@dataclass(frozen=True)
class IntegralReport:
    grid: int
    estimate: Rat
    target: Rat
    deviation: Rat
    quantization: Rat
    workers: int


def integrate_esum(grid: int, workers: "int | None" = None) -> IntegralReport:
    """Left-endpoint Riemann sum of the error-sum function over k/grid.

    Every point value is exact; only the merge is quantized (see
    INTEGRAL_SCALE).  The chunked sum is an integer, so results are
    identical for any worker count.
    """
    if grid < 1:
        raise DomainError("grid must be >= 1")
    if workers is None:
        workers = os.cpu_count() or 1
    workers = max(1, min(workers, grid, 64))
    if workers == 1:
        total = _grid_chunk((0, grid, grid, INTEGRAL_SCALE))
    else:
        step = -(-grid // workers)
        chunks = [
            (lo, min(lo + step, grid), grid, INTEGRAL_SCALE) for lo in range(0, grid, step)
        ]
        with get_context("fork").Pool(workers) as pool:
            total = sum(pool.map(_grid_chunk, chunks))
    estimate = Fraction(total, grid * INTEGRAL_SCALE)
    return IntegralReport(
        grid=grid,
        estimate=estimate,
        target=INTEGRAL_TARGET,
        deviation=estimate - INTEGRAL_TARGET,
        quantization=Fraction(1, INTEGRAL_SCALE),
        workers=workers,
    )


# ---------------------------------------------------------------------------
# Variation over order-n partitions
# ---------------------------------------------------------------------------


def subtree_interval_mass(last_digit: int) -> Rat:
    """Total length of all deeper intervals below a digit, in closed form.

    Summing 1/(k(k+1)) over k > last telescopes to 1/(last+1), and the
    value is invariant under adding more levels; this is the exact tail
    used wherever an enumeration is cut off.
    """
    if last_digit < 0:
        raise DomainError("digit must be >= 0")
    return Fraction(1, last_digit + 1)


@dataclass(frozen=True)
class VariationReport:
    order: int
    digit_cap: "int | None"
    capped_sum: Rat
    residual_mass: Rat

    @property
    def total(self) -> Rat:
        """Capped oscillation sum plus the closed-form mass of the cutoff."""
        return self.capped_sum + self.order * self.residual_mass


def variation_over_partition(n: int, digit_cap: "int | None" = None) -> VariationReport:
    """Sum of oscillations of the error-sum function over order-n intervals.

    Uncapped, the answer is exactly n: every level of the partition carries
    unit total length, so a candidate variation bound V is already exceeded
    at order ceil(V) + 1.  With a digit cap the enumerated part and the
    closed-form residual are returned separately; they recombine to n
    exactly, which is asserted as a two-route consistency check.
    """
    if n < 1:
        raise DomainError("partition order must be >= 1")
    if digit_cap is None:
        return VariationReport(n, None, n * subtree_interval_mass(0), Fraction(0))
    part = partition(n, digit_cap)
    capped = sum((oscillation(iv.sigma) for iv in part.intervals), Fraction(0))
    report = VariationReport(n, digit_cap, capped, part.residual)
    if report.total != n:
        raise AssertionError(f"partition mass identity failed at order {n}, cap {digit_cap}")
    return report


# ---------------------------------------------------------------------------
# Intermediate-value root localization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootBracket:
    """A fundamental interval whose error-sum range provably contains the target."""

    interval: FundInterval
    value_min: Rat
    value_max: Rat
    target: Rat

    def __post_init__(self):
        if not self.value_min <= self.target <= self.value_max:
            raise AssertionError("bracket does not contain its target value")


def _qualifying_children(prefix, prod, value, y):
    """Digits k extending ``prefix`` whose cylinder still brackets y.

    The child ranges are explicit in k: for odd order they span
    [E - n/(Pk), E - n/(Pk) + (n+1)/(Pk(k+1))], mirrored for even order.
    Bracketing y therefore needs k <= n/(P delta) together with the
    quadratic (P delta)k^2 + (P delta - n)k + 1 >= 0, which holds outside
    its root interval.  The low branch never reaches past the first few
    children and the high branch starts near n/(P delta), so only a
    handful of candidates exist; each is re-verified exactly.
    """
    n = len(prefix)
    delta = (value - y) if n % 2 == 1 else (y - value)
    if delta <= 0:
        return []
    pd = prod * delta
    k_hi = int(n / pd)  # floor of n/(P delta)
    first = prefix[-1] + 1
    if k_hi < first:
        return []
    alpha, beta = pd, pd - n
    disc = beta * beta - 4 * alpha
    if disc < 0:
        # quadratic positive everywhere; k_hi is at most ~6 here
        candidates = range(first, k_hi + 1)
    else:
        # low branch: k <= smaller root < first + 8; high branch: k >= larger
        # root, conservatively floored via an integer sqrt lower bound
        sqrt_lo = Fraction(iroot(disc.numerator * disc.denominator, 2), disc.denominator)
        high_start = max(first, int((-beta + sqrt_lo) / (2 * alpha)))
        low = range(first, min(first + 8, k_hi) + 1)
        high = range(high_start, k_hi + 1)
        if len(low) + len(high) > 10_000:
            raise ResourceLimitError("qualifying-child window is implausibly wide")
        candidates = sorted(set(low) | set(high))
    out = []
    for k in candidates:
        child = prefix + (k,)
        ext = cylinder_extrema(child)
        if ext.minimum <= y <= ext.maximum:
            out.append(child)
    return out


def ivt_root(a, b, y, width_tol, max_depth: int = 64) -> RootBracket:
    """Localize a solution of E(x) = y inside (a, b) by branch and bound.

    Keeps fundamental intervals that meet (a, b) and whose exact error-sum
    range contains y, always refining the leftmost candidate first, until
    an interval narrower than width_tol remains.
    """
    a, b, y = as_rational(a), as_rational(b), as_rational(y)
    width_tol = as_rational(width_tol)
    if not a < b:
        raise DomainError("need a < b")
    if width_tol <= 0:
        raise DomainError("width tolerance must be positive")
    ea, eb = esum(a), esum(b)
    if not ea < y < eb:
        raise DomainError(f"need E(a) < y < E(b), got E(a)={ea}, y={y}, E(b)={eb}")

    def intersects(iv: FundInterval) -> bool:
        return iv.right > a and iv.left < b

    def refine(prefix, depth):
        iv = fundamental_interval(prefix)
        if iv.length < width_tol:
            ext = cylinder_extrema(prefix)
            return RootBracket(iv, ext.minimum, ext.maximum, y)
        if depth >= max_depth:
            return None
        prod = 1
        for d in prefix:
            prod *= d
        children = _qualifying_children(prefix, prod, estar_digits(prefix), y)
        ordered = sorted(
            ((fundamental_interval(c), c) for c in children), key=lambda pair: pair[0].left
        )
        for child_iv, child in ordered:
            if not intersects(child_iv):
                continue
            found = refine(child, depth + 1)
            if found is not None:
                return found
        return None

    # order-1 cylinders (1/(k+1), 1/k] that can meet (a, b): a > 0 because
    # E(a) < y <= 0 rules out a = 0, so the first digit is bounded
    k_min = max(1, math.floor((1 - b) / b) + 1)
    k_max = math.ceil(Fraction(1) / a) - 1
    for k in range(k_max, k_min - 1, -1):  # descending k = leftmost interval first
        if y < Fraction(-1, k * (k + 1)):
            continue
        prefix = (k,)
        if not intersects(fundamental_interval(prefix)):
            continue
        found = refine(prefix, 1)
        if found is not None:
            return found
    raise DepthOverflowError(
        f"no bracket narrower than {width_tol} found within depth {max_depth}"
    )


# ---------------------------------------------------------------------------
# Covering-sum diagnostic for the graph dimension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverSum:
    """Certified bounds on sum over order-n prefixes of (diam of graph box)^s.

    The boxes have base length(I_sigma) and height n*length(I_sigma), so
    each diameter is sqrt(n^2+1) * length.  capped_* bound the enumerated
    part; tail_bound covers everything past the digit cap.
    """

    order: int
    exponent: Rat
    digit_cap: int
    capped_lower: Rat
    capped_upper: Rat
    tail_bound: Rat
    residual_mass: Rat

    @property
    def lower(self) -> Rat:
        return self.capped_lower

    @property
    def upper(self) -> Rat:
        return self.capped_upper + self.tail_bound


def hausdorff_cover_sum(n: int, s, digit_cap: int, scale: int = 10**18) -> CoverSum:
    """Cover sum for the order-n box covering of the graph, exponent s >= 1.

    Fractional powers of rationals are irrational, so each term is
    bracketed by integer-root bounds at the given fixed-point scale and the
    brackets are summed as integers.  The omitted prefixes contribute at
    most (sqrt(n^2+1) * max omitted length)^(s-1) times their total length,
    which telescopes exactly.
    """
    s = as_rational(s)
    if n < 1:
        raise DomainError("order must be >= 1")
    if s < 1:
        raise DomainError("exponent must be >= 1")
    if digit_cap < n:
        raise DomainError(f"digit cap {digit_cap} cannot host an order-{n} prefix")
    p, q = s.numerator, s.denominator
    diam_sq = n * n + 1  # diameter^2 = (n^2+1) * length^2

    def term_bounds(length: Rat) -> tuple[int, int]:
        # ((n^2+1)^p * length^(2p)) ^ (1/(2q)), scaled
        base = Fraction(diam_sq) ** p * length ** (2 * p)
        shifted = base.numerator * scale ** (2 * q) // base.denominator
        lo = iroot(shifted, 2 * q)
        hi = iroot(shifted + 1, 2 * q) + 1
        return lo, hi

    lo_total = hi_total = 0
    residual = Fraction(0)

    def rec(prefix, last, prod):
        nonlocal lo_total, hi_total, residual
        residual += Fraction(1, prod * (digit_cap + 1))
        for d in range(last + 1, digit_cap + 1):
            if len(prefix) + 1 == n:
                lo, hi = term_bounds(Fraction(1, prod * d * (d + 1)))
                lo_total += lo
                hi_total += hi
            else:
                rec(prefix + (d,), d, prod * d)

    rec((), 0, 1)

    # every omitted interval has some digit > cap, so its length is at most
    longest_omitted = Fraction(1, math.factorial(n - 1) * (digit_cap + 1) * (digit_cap + 2))
    diam_pow = pow_enclosure(Fraction(diam_sq), s / 2, scale).hi
    omitted_factor = pow_enclosure(longest_omitted, s - 1, scale).hi
    tail = diam_pow * omitted_factor * residual
    return CoverSum(
        order=n,
        exponent=s,
        digit_cap=digit_cap,
        capped_lower=Fraction(lo_total, scale),
        capped_upper=Fraction(hi_total, scale),
        tail_bound=tail,
        residual_mass=residual,
    )


# ---------------------------------------------------------------------------
# Theoretical covering counts at scale eps = 2 e^-M
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverReport:
    """Square counts for the theoretical graph covering at eps = 2e^-M.

    Sequences are split by where their running digit product first reaches
    e^M; group k needs at most a_k squares, with a_1 = 1 for the group
    whose first digit alone exceeds e^M.
    """

    M: Rat
    epsilon: Rat  # certified rational lower bound of 2 e^-M
    n: int  # the order with (n-1)! <= e^M <= n!
    a: tuple[Enclosure, ...]
    total_bound: int
    chain_holds: bool
    empirical_count: "int | None" = None

    def with_empirical(self, count: int) -> "CoverReport":
        return CoverReport(
            self.M, self.epsilon, self.n, self.a, self.total_bound, self.chain_holds, count
        )


def lambda_cover_counts(M, terms: int = 48) -> CoverReport:
    """Per-group square counts a_k and their total for the covering proof.

    Requires M > n(M) (true once M >= 8.6 or so); smaller M breaks the
    monotonicity argument and is rejected.  All comparisons against e^M,
    log k and factorials are certified, with automatic tightening.
    """
    M = as_rational(M)
    if M <= 0:
        raise DomainError("M must be positive")

    for attempt in range(6):
        eM = exp_enclosure(M, terms << attempt)
        n, fact = 1, 1  # smallest n with n! >= e^M
        while fact < eM.hi:
            n += 1
            fact *= n
        if math.factorial(n - 1) <= eM.lo:
            break
    else:
        raise ResourceLimitError(f"cannot separate e^{M} from neighboring factorials")
    if M <= n:
        raise DomainError(
            f"M = {M} is too small: the covering argument needs M > n(M) = {n}"
        )

    for attempt in range(6):
        t = terms << attempt
        eM = exp_enclosure(M, t)
        a = [Enclosure.exact(1)]
        for k in range(2, n + 2):
            base = Enclosure.exact(2 + M) + log_enclosure(k - 1, t)
            a_k = Fraction(k - 1, math.factorial(k - 1)) * eM * base.power(k - 2)
            a.append(a_k)
        chain = all(a[i + 1].lo > a[i].hi for i in range(len(a) - 1))
        if chain:
            break
    total_hi = sum(enc.hi for enc in a)
    return CoverReport(
        M=M,
        epsilon=2 * eM.reciprocal().lo,
        n=n,
        a=tuple(a),
        total_bound=math.ceil(total_hi),
        chain_holds=chain,
    )


# ---------------------------------------------------------------------------
# Empirical box counting and the dimension slope
# ---------------------------------------------------------------------------


def calibrate_product_bound(epsilon) -> tuple[int, int]:
    """Digit-product cap P making graph samples eps-dense, with its depth.

    For any sequence, truncating where the product first exceeds P moves
    the graph point by at most (1/P, n/P) with n at most the largest m
    having m! <= P; so P is grown until n(P)/P <= eps.
    """
    epsilon = as_rational(epsilon)
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must be in (0, 1)")
    inv = math.ceil(1 / epsilon)
    P = inv
    while True:
        m, fact = 1, 1
        while fact * (m + 1) <= P:
            m += 1
            fact *= m
        if m * inv <= P:
            return P, m
        P = m * inv


def box_count_empirical(epsilon, sample_depth: "int | None" = None) -> int:
    """Occupied eps-grid squares over graph samples of finite sequences.

    Samples every (value, error sum) pair for finite sequences with digit
    product below the calibrated cap, so that unsampled graph points sit
    within one grid cell of a sample.  Deterministic for fixed inputs.
    """
    epsilon = as_rational(epsilon)
    P, depth_cap = calibrate_product_bound(epsilon)
    if sample_depth is not None:
        depth_cap = min(depth_cap, sample_depth)
    en, ed = epsilon.numerator, epsilon.denominator
    cells = set()

    def rec(last, prod, value_num, err_num, k):
        # value = value_num/prod, error sum = err_num/prod, k digits chosen
        cells.add(((value_num * ed) // (prod * en), (err_num * ed) // (prod * en)))
        if k >= depth_cap:
            return
        d = last + 1
        while prod * d <= P:
            rec(
                d,
                prod * d,
                value_num * d + (1 if k % 2 == 0 else -1),
                err_num * d + (k if k % 2 else -k),
                k + 1,
            )
            d += 1

    d = 1
    while d <= P:
        rec(d, d, 1, 0, 1)
        d += 1
    return len(cells)


def box_count_sweep(epsilons, sample_depth: "int | None" = None) -> list[tuple[Rat, int]]:
    """Box counts over a strictly decreasing scale sweep."""
    eps = [as_rational(e) for e in epsilons]
    if any(e2 >= e1 for e1, e2 in zip(eps, eps[1:])):
        raise DomainError("scales must be strictly decreasing")
    return [(e, box_count_empirical(e, sample_depth)) for e in eps]


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares line through (log 1/eps, log N_eps)."""

    points: tuple[tuple[float, float], ...]
    slope: float
    intercept: float


def dimension_slope(points) -> SlopeFit:
    """Fit log(count) against log(1/eps); the slope estimates the dimension."""
    pts = [(as_rational(e), int(c)) for e, c in points]
    if len(pts) < 3:
        raise DegenerateFitError("need at least 3 scales for a slope")
    if any(e2 >= e1 for (e1, _), (e2, _) in zip(pts, pts[1:])):
        raise DegenerateFitError("scales must be strictly decreasing")
    if any(c < 1 for _, c in pts):
        raise DegenerateFitError("counts must be positive")
    if len({c for _, c in pts}) == 1:
        raise DegenerateFitError("all counts equal: no scaling signal to fit")
    xs = np.array([-math.log(e) for e, _ in pts])
    ys = np.array([math.log(c) for _, c in pts])
    slope, intercept = np.polyfit(xs, ys, 1)
    return SlopeFit(
        points=tuple(zip(xs.tolist(), ys.tolist())),
        slope=float(slope),
        intercept=float(intercept),
    )


# ---------------------------------------------------------------------------
# Counting sequences with bounded digit products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CountReport:
    product_cap: int
    max_length: int
    increasing: bool
    count: int
    bound: Enclosure  # certified enclosure of the analytic bound

    def within_bound(self) -> bool:
        """Strictly safe comparison: count below the bound's lower end."""
        return self.count <= self.bound.lo


def count_bounded_products(
    p: int, m: int, increasing: bool = False, budget: int = 10**8, terms: int = 48
) -> CountReport:
    """Exhaustive sequence counts against their analytic bounds.

    ``increasing=False`` counts all sequences of length 1..m with digit
    product at most p (bound p(2+log p)^(m-1)); ``increasing=True`` counts
    strictly increasing sequences of length exactly m (same bound over m!).
    """
    if p < 1 or m < 1:
        raise DomainError("need p >= 1 and m >= 1")
    if p * m > budget:
        raise ResourceLimitError(f"p*m = {p * m} exceeds budget {budget}")

    if increasing:
        def count_inc(last, remaining, cap):
            if remaining == 0:
                return 1
            total = 0
            d = last + 1
            while d ** remaining <= cap:  # cheapest completion uses d, d+1, ...
                lowest = 1
                for step in range(remaining):
                    lowest *= d + step
                if lowest > cap:
                    break
                total += count_inc(d, remaining - 1, cap // d)
                d += 1
            return total

        count = count_inc(0, m, p)
    else:
        cache: dict[tuple[int, int], int] = {}

        def count_all(length_left, cap):
            if length_left == 0:
                return 0
            key = (length_left, cap)
            if key not in cache:
                cache[key] = sum(
                    1 + count_all(length_left - 1, cap // d) for d in range(1, cap + 1)
                )
            return cache[key]

        count = count_all(m, p)

    base = Enclosure.exact(2) + log_enclosure(p, terms) if p > 1 else Enclosure.exact(2)
    bound = p * base.power(m - 1)
    if increasing:
        bound = bound * Fraction(1, math.factorial(m))
    return CountReport(p, m, increasing, count, bound.round_outward())


def factorial_bounds_check(n: int, terms: int = 48) -> bool:
    """Certify n^n / e^(n-1) <= n! <= n^(n+1) / e^(n-1) in exact arithmetic."""
    if n < 1:
        raise DomainError("n must be >= 1")
    fact = math.factorial(n)
    lower, upper = n**n, n ** (n + 1)
    for attempt in range(6):
        e_pow = exp_enclosure(n - 1, terms << attempt)
        lower_ok = lower <= fact * e_pow.lo
        lower_bad = lower > fact * e_pow.hi
        upper_ok = fact * e_pow.hi <= upper
        upper_bad = fact * e_pow.lo > upper
        if lower_bad or upper_bad:
            return False
        if lower_ok and upper_ok:
            return True
    raise ResourceLimitError(f"factorial bound comparison undecided at n={n}")

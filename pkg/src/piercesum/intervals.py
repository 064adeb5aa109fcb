"""Exact geometry of the fundamental intervals of Pierce expansions.

The set of points whose first n digits match a given prefix is an
interval; which endpoints it contains depends on the parity of n and on
whether the prefix is realizable.  Getting those flags wrong is easy and
silent, so they are computed once here and carried explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DomainError, Rat, as_rational, evaluate_digits, expand
from .sequences import _check_prefix, is_realizable


@dataclass(frozen=True)
class FundInterval:
    """Interval of points sharing a digit prefix, with explicit endpoint flags."""

    sigma: tuple[int, ...]
    order: int
    left: Rat
    right: Rat
    left_closed: bool
    right_closed: bool

    @property
    def length(self) -> Rat:
        return self.right - self.left

    def contains(self, x) -> bool:
        x = as_rational(x)
        if x < self.left or x > self.right:
            return False
        if x == self.left:
            return self.left_closed
        if x == self.right:
            return self.right_closed
        return True

    def __str__(self):
        lb = "[" if self.left_closed else "("
        rb = "]" if self.right_closed else ")"
        return f"{lb}{self.left}, {self.right}{rb}"


def fundamental_interval(prefix) -> FundInterval:
    """The order-n interval for a digit prefix, endpoints exact.

    Odd order: (phi(hat), phi(sigma)] when realizable.  Even order:
    [phi(sigma), phi(hat)).  Non-realizable prefixes lose the closed
    endpoint and the interval is open on both sides.
    """
    prefix = _check_prefix(prefix)
    n = len(prefix)
    if n < 1:
        raise DomainError("fundamental intervals need a non-empty prefix")
    value = evaluate_digits(prefix)
    hat_value = evaluate_digits(prefix[:-1] + (prefix[-1] + 1,))
    closed = is_realizable(prefix)
    if n % 2 == 1:
        return FundInterval(prefix, n, hat_value, value, False, closed)
    return FundInterval(prefix, n, value, hat_value, closed, False)


def interval_length(prefix) -> Rat:
    """Exact length 1/(sigma_1 ... sigma_{n-1} sigma_n (sigma_n + 1))."""
    prefix = _check_prefix(prefix)
    if not prefix:
        raise DomainError("fundamental intervals need a non-empty prefix")
    prod = 1
    for d in prefix:
        prod *= d
    return Fraction(1, prod * (prefix[-1] + 1))


@dataclass(frozen=True)
class Partition:
    """All order-n intervals with digits <= cap, plus the mass left out.

    The residual is accumulated from the closed form of the pruned tails
    (the lengths past any digit telescope to 1/(cap+1) over the running
    product), so enumerated mass + residual = 1 is an exact two-route
    identity, not a definition.
    """

    order: int
    digit_cap: int
    intervals: tuple[FundInterval, ...]
    residual: Rat
    warning: "str | None" = None

    @property
    def covered_mass(self) -> Rat:
        return sum((iv.length for iv in self.intervals), Fraction(0))


def partition(n: int, digit_cap: int, min_coverage=None) -> Partition:
    """Order-n fundamental intervals with all digits <= digit_cap.

    Intervals come out in lexicographic prefix order and are mutually
    disjoint.  A too-small cap is reported through the warning field, not
    an exception, so callers can still use the exact residual.
    """
    if n < 1:
        raise DomainError("partition order must be >= 1")
    if digit_cap < 1:
        raise DomainError("digit cap must be >= 1")
    intervals = []
    residual = Fraction(0)

    def rec(prefix, last, prod):
        nonlocal residual
        # mass of the pruned branch (next digit > cap) telescopes exactly
        residual += Fraction(1, prod * (digit_cap + 1))
        for d in range(last + 1, digit_cap + 1):
            chosen = prefix + (d,)
            if len(chosen) == n:
                intervals.append(fundamental_interval(chosen))
            else:
                rec(chosen, d, prod * d)

    rec((), 0, 1)
    part = Partition(n, digit_cap, tuple(intervals), residual)
    if min_coverage is not None and 1 - residual < as_rational(min_coverage):
        part = Partition(
            n,
            digit_cap,
            part.intervals,
            residual,
            warning=f"digit cap {digit_cap} covers only {1 - residual} < {min_coverage} of [0,1]",
        )
    return part


def locate(x, n: int) -> tuple[int, ...]:
    """First n digits of x, verified to place x inside their interval."""
    if n < 1:
        raise DomainError("locate order must be >= 1")
    x = as_rational(x)
    digits = expand(x)
    if len(digits) < n:
        raise DomainError(
            f"expansion of {x} has only {len(digits)} digits, cannot locate at order {n}"
        )
    prefix = digits[:n]
    interval = fundamental_interval(prefix)
    if not interval.contains(x):
        raise AssertionError(f"{x} escaped its own fundamental interval {interval}")
    return prefix

"""The error-sum functions: E* on Pierce sequences and E on [0, 1].

E* sums the deviations of a sequence's value from its partial sums; the
closed form sum_n (-1)^n n / (sigma_1 ... sigma_{n+1}) makes it a finite
exact computation for finite sequences and a factorially convergent
alternating series for streams.  E is E* composed with the digit map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DomainError, Rat, as_rational, evaluate_digits, expand, shift_power
from .intervals import interval_length
from .sequences import (
    DEFAULT_DEPTH,
    Enclosure,
    PierceSeq,
    _check_prefix,
    as_sequence,
    hat_prime,
    is_realizable,
    phi_partial,
)


def estar_digits(digits) -> Rat:
    """Exact closed-form error sum of a finite digit tuple."""
    num, den = 0, 1
    for k, d in enumerate(digits, start=1):
        # appending digit k contributes the term (-1)^(k-1) (k-1) / (d_1 ... d_k)
        num = num * d + (k - 1 if k % 2 else -(k - 1))
        den *= d
    return Fraction(num, den)


def estar(seq, depth: int = DEFAULT_DEPTH) -> Enclosure:
    """Error sum of a Pierce sequence, exact when finite.

    Stream-backed sequences get the bracket between the truncated closed
    form and its next partial sum; its width is the truncation bound
    depth/(sigma_1 ... sigma_{depth+1}).
    """
    seq = as_sequence(seq)
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if seq.is_finite:
        return Enclosure.exact(estar_digits(seq.finite_digits()))
    lo = estar_digits(seq.digits(depth))
    hi = estar_digits(seq.digits(depth + 1))
    if lo > hi:
        lo, hi = hi, lo
    return Enclosure(lo, hi)


def estar_by_definition(seq, depth: int = DEFAULT_DEPTH) -> Enclosure:
    """Error sum evaluated straight from its definition, term by term.

    Sums value - partial_sum_n with per-term enclosures; kept deliberately
    independent of the closed form in estar so the two can cross-check each
    other.
    """
    seq = as_sequence(seq)
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if seq.is_finite:
        digits = seq.finite_digits()
        value = evaluate_digits(digits)
        total = Fraction(0)
        for n in range(1, len(digits)):
            total += value - evaluate_digits(digits[:n])
        return Enclosure.exact(total)

    digits = seq.digits(depth + 2)
    value_lo = evaluate_digits(digits[: depth + 1])
    value_hi = evaluate_digits(digits[: depth + 2])
    if value_lo > value_hi:
        value_lo, value_hi = value_hi, value_lo
    lo = hi = Fraction(0)
    for n in range(1, depth + 1):
        partial = evaluate_digits(digits[:n])
        lo += value_lo - partial
        hi += value_hi - partial
    # remaining terms: sum_{n>depth} |value - partial_n| <= geometric-ish tail
    prod = 1
    for d in digits[: depth + 2]:
        prod *= d
    tail = Fraction(depth + 3, prod * (depth + 2))
    return Enclosure(lo - tail, hi + tail)


def esum(x) -> Rat:
    """Error sum of Pierce expansions at a rational point, exact."""
    return estar_digits(expand(x))


def esum_stream(seq, depth: int = DEFAULT_DEPTH) -> Enclosure:
    """Enclosure of E at the point a realizable sequence evaluates to."""
    seq = as_sequence(seq)
    if not is_realizable(seq):
        raise DomainError(
            f"{seq} is not realizable: no point has this digit sequence, "
            "so it does not name a value of E"
        )
    return estar(seq, depth)


def preimage_pair(x) -> tuple[PierceSeq, PierceSeq]:
    """Both sequences evaluating to a rational x in (0, 1).

    The first is the digit sequence of x; the second replaces the last
    digit d by (d-1, d) and is never realizable.
    """
    x = as_rational(x)
    if not 0 < x < 1:
        raise DomainError("interior rational required: preimages are unique at 0 and 1")
    digits = expand(x)
    twin = digits[:-1] + (digits[-1] - 1, digits[-1])
    return PierceSeq(digits), PierceSeq(twin)


@dataclass(frozen=True)
class JumpReport:
    """One-sided limits of E at a rational discontinuity.

    ``side`` names the discontinuous side: odd expansion length jumps on
    the right, even on the left.  The limit on the continuous side is the
    interior value itself.
    """

    x: Rat
    side: str
    parity: str
    interior_value: Rat
    limit_value: Rat
    jump_magnitude: Rat

    @property
    def left_limit(self) -> Rat:
        return self.limit_value if self.side == "left" else self.interior_value

    @property
    def right_limit(self) -> Rat:
        return self.limit_value if self.side == "right" else self.interior_value


def jumps_at(x) -> JumpReport:
    """Jump data of E at a rational x in (0, 1).

    The magnitude is 1/(d_1 ... d_{n-1} (d_n - 1) d_n); the discontinuous
    one-sided limit equals the error sum of the non-realizable preimage,
    which is recomputed independently here as a consistency check.
    """
    x = as_rational(x)
    if not 0 < x < 1:
        raise DomainError("jump analysis is defined on rationals strictly inside (0, 1)")
    digits = expand(x)
    n = len(digits)
    prod = 1
    for d in digits[:-1]:
        prod *= d
    magnitude = Fraction(1, prod * (digits[-1] - 1) * digits[-1])
    interior = estar_digits(digits)
    if n % 2 == 1:
        side, limit = "right", interior - magnitude
    else:
        side, limit = "left", interior + magnitude
    twin = digits[:-1] + (digits[-1] - 1, digits[-1])
    if estar_digits(twin) != limit:
        raise AssertionError(f"jump formula and preimage error sum disagree at {x}")
    return JumpReport(
        x=x,
        side=side,
        parity="odd" if n % 2 else "even",
        interior_value=interior,
        limit_value=limit,
        jump_magnitude=magnitude,
    )


@dataclass(frozen=True)
class CylinderExtrema:
    """Exact extrema of E* over all sequences extending a prefix."""

    prefix: tuple[int, ...]
    maximum: Rat
    minimum: Rat
    argmax: PierceSeq
    argmin: PierceSeq

    @property
    def spread(self) -> Rat:
        return self.maximum - self.minimum


def cylinder_extrema(prefix) -> CylinderExtrema:
    """Max and min of E* over the cylinder of a finite prefix.

    One extremum sits at the prefix itself, the other at the prefix with
    its last digit repeated-plus-one appended; which is which flips with
    the parity of the order.
    """
    prefix = _check_prefix(prefix)
    if not prefix:
        raise DomainError("cylinder extrema need a non-empty prefix")
    n = len(prefix)
    at_prefix = estar_digits(prefix)
    spread = n * interval_length(prefix)
    here = PierceSeq(prefix)
    there = hat_prime(here)
    if n % 2 == 1:
        return CylinderExtrema(prefix, at_prefix, at_prefix - spread, here, there)
    return CylinderExtrema(prefix, at_prefix + spread, at_prefix, there, here)


def oscillation(prefix) -> Rat:
    """Oscillation of E over the fundamental interval: n * length."""
    prefix = _check_prefix(prefix)
    if not prefix:
        raise DomainError("oscillation needs a non-empty prefix")
    return len(prefix) * interval_length(prefix)


def recursion_check(x, n: int) -> bool:
    """Verify E(x) = sum_{k<=n} (x - s_k(x)) + (-1)^n E(T^n x)/(d_1...d_n) exactly.

    Digits past the expansion length count as infinite, so the trailing
    factor vanishes there and the identity still holds.
    """
    x = as_rational(x)
    if n < 1:
        raise DomainError("recursion depth must be >= 1")
    digits = expand(x)
    lhs = estar_digits(digits)
    rhs = Fraction(0)
    for k in range(1, n + 1):
        rhs += x - evaluate_digits(digits[:k])
    if n <= len(digits):
        prod = 1
        for d in digits[:n]:
            prod *= d
        tail_value = estar_digits(expand(shift_power(x, n)))
        rhs += Fraction((-1) ** n, prod) * tail_value
    return lhs == rhs

"""The space of Pierce sequences and its evaluation map.

A Pierce sequence is a strictly increasing run of positive integers,
either finite (padded by infinite digits) or extended forever by a digit
stream.  Evaluation of infinite sequences truncates an alternating series,
so results come back as certified rational enclosures rather than floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import (
    INF,
    DepthOverflowError,
    DigitStream,
    DomainError,
    Rat,
    evaluate_digits,
    expand,
)

#: Default truncation depth for stream-backed sequences.  The tail bounds
#: shrink factorially, so 64 digits is far beyond any practical tolerance
#: while staying cheap.
DEFAULT_DEPTH = 64

#: Hard ceiling on requested depths, mirroring the expansion digit cap.
MAX_DEPTH = 10_000


@dataclass(frozen=True)
class Enclosure:
    """Exact rational interval [lo, hi] certified to contain a real value."""

    lo: Rat
    hi: Rat

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"enclosure endpoints out of order: {self.lo} > {self.hi}")

    @classmethod
    def exact(cls, value) -> "Enclosure":
        value = Fraction(value)
        return cls(value, value)

    @property
    def width(self) -> Rat:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Rat:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        if isinstance(value, Enclosure):
            return self.lo <= value.lo and value.hi <= self.hi
        return self.lo <= value <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    # Minimal interval arithmetic, enough for combining certified bounds.

    def __add__(self, other):
        other = other if isinstance(other, Enclosure) else Enclosure.exact(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        other = other if isinstance(other, Enclosure) else Enclosure.exact(other)
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, Enclosure) else Enclosure.exact(other)
        products = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "Enclosure":
        if self.lo <= 0:
            raise ValueError("reciprocal needs a strictly positive enclosure")
        return Enclosure(1 / self.hi, 1 / self.lo)

    def round_outward(self, scale: int = 10**12) -> "Enclosure":
        """Widen to the enclosing multiples of 1/scale (tames huge denominators)."""
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return Enclosure(lo, hi)

    def power(self, k: int) -> "Enclosure":
        if k < 0:
            return self.power(-k).reciprocal()
        out = Enclosure.exact(1)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self):
        if self.is_exact:
            return _frac_str(self.lo)
        return f"[{_frac_str(self.lo)}, {_frac_str(self.hi)}]"


def _frac_str(q: Rat) -> str:
    return f"{q.numerator}/{q.denominator}"


def _check_prefix(prefix: Sequence[int]) -> tuple[int, ...]:
    prefix = tuple(prefix)
    last = 0
    for d in prefix:
        if not isinstance(d, int):
            raise DomainError(f"prefix digit {d!r} is not an int")
        if d <= last:
            raise DomainError(f"prefix {prefix} is not strictly increasing from 1")
        last = d
    return prefix


@dataclass(frozen=True)
class PierceSeq:
    """A Pierce sequence: increasing finite prefix plus an optional tail stream.

    ``tail=None`` means the sequence ends with infinite digits (the finite
    case).  A tail stream continues the prefix: its position j supplies the
    digit at global position len(prefix) + j, so a finite table tail still
    yields a finite sequence.  Two stream-backed sequences compare equal
    only when their rules do.
    """

    prefix: tuple[int, ...] = ()
    tail: DigitStream | None = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", _check_prefix(self.prefix))
        if self.tail is not None and self.tail.length == 0:
            object.__setattr__(self, "tail", None)

    @classmethod
    def from_rational(cls, x) -> "PierceSeq":
        """The digit-sequence map from [0, 1] into the sequence space."""
        return cls(expand(x))

    @classmethod
    def from_stream(cls, stream: DigitStream) -> "PierceSeq":
        return cls((), stream)

    @property
    def length(self) -> "int | None":
        """Number of finite digits, or None for stream-backed sequences."""
        if self.tail is None:
            return len(self.prefix)
        tail_len = self.tail.length
        return None if tail_len is None else len(self.prefix) + tail_len

    @property
    def is_finite(self) -> bool:
        return self.length is not None

    def digits(self, depth: int) -> tuple[int, ...]:
        """Finite digits at positions 1..depth (fewer if the sequence ends).

        Stream digits are validated as they materialize: each must exceed
        its predecessor, which already forces d_n >= n.
        """
        if depth < 0:
            raise DomainError("depth must be >= 0")
        if depth > MAX_DEPTH:
            raise DepthOverflowError(f"depth {depth} exceeds cap {MAX_DEPTH}")
        out = list(self.prefix[:depth])
        if self.tail is None or depth <= len(self.prefix):
            return tuple(out)
        last = self.prefix[-1] if self.prefix else 0
        for j in range(1, depth - len(self.prefix) + 1):
            try:
                d = self.tail.digit(j)
            except IndexError:
                break
            if d <= last:
                raise DomainError(
                    f"stream digit {d} at position {len(self.prefix) + j} "
                    f"breaks monotonicity (previous digit {last})"
                )
            out.append(d)
            last = d
        return tuple(out)

    def digit_at(self, n: int) -> "int | float":
        """Digit at 1-based position n, INF past the end of a finite sequence."""
        ds = self.digits(n)
        return ds[n - 1] if len(ds) >= n else INF

    def finite_digits(self) -> tuple[int, ...]:
        if not self.is_finite:
            raise DomainError("sequence is stream-backed; use digits(depth)")
        return self.digits(self.length)

    def __str__(self):
        if self.is_finite:
            return "(" + ", ".join(map(str, self.finite_digits())) + ")"
        head = ", ".join(map(str, self.digits(6)))
        return f"({head}, ...)"


def as_sequence(value) -> PierceSeq:
    """Coerce tuples/lists of digits or streams into a PierceSeq."""
    if isinstance(value, PierceSeq):
        return value
    if isinstance(value, DigitStream):
        return PierceSeq.from_stream(value)
    return PierceSeq(tuple(value))


def is_realizable(seq) -> bool:
    """Whether some x in [0, 1] has exactly this digit sequence.

    The only non-realizable sequences are the finite ones of length >= 2
    whose last two digits are consecutive.
    """
    seq = as_sequence(seq)
    if not seq.is_finite:
        return True
    digits = seq.finite_digits()
    return len(digits) < 2 or digits[-2] + 1 < digits[-1]


def phi_partial(seq, n: int) -> Rat:
    """n-th partial sum of the alternating evaluation series, exact."""
    seq = as_sequence(seq)
    return evaluate_digits(seq.digits(n))


def phi(seq, depth: int = DEFAULT_DEPTH) -> Enclosure:
    """Value of a Pierce sequence under the alternating evaluation series.

    Finite sequences evaluate exactly.  Stream-backed sequences return the
    bracket between consecutive partial sums, whose width is the tail bound
    1/(sigma_1 ... sigma_{depth+1}).
    """
    seq = as_sequence(seq)
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if seq.is_finite:
        return Enclosure.exact(evaluate_digits(seq.finite_digits()))
    lo = phi_partial(seq, depth)
    hi = phi_partial(seq, depth + 1)
    if lo > hi:
        lo, hi = hi, lo
    return Enclosure(lo, hi)


def truncate(seq, n: int) -> PierceSeq:
    """Finite sequence keeping the first n digits (fewer if the input ends).

    The result can be non-realizable even when the input is realizable.
    """
    if n < 1:
        raise DomainError("truncation order must be >= 1")
    seq = as_sequence(seq)
    return PierceSeq(seq.digits(n))


def hat(seq) -> PierceSeq:
    """Same finite sequence with its last digit incremented."""
    seq = as_sequence(seq)
    if not seq.is_finite or seq.length == 0:
        raise DomainError("hat needs a finite non-empty sequence")
    digits = seq.finite_digits()
    return PierceSeq(digits[:-1] + (digits[-1] + 1,))


def hat_prime(seq) -> PierceSeq:
    """Finite sequence with last+1 appended; non-realizable, same value as hat."""
    seq = as_sequence(seq)
    if not seq.is_finite or seq.length == 0:
        raise DomainError("hat_prime needs a finite non-empty sequence")
    digits = seq.finite_digits()
    return PierceSeq(digits + (digits[-1] + 1,))


def rho(a, b) -> Rat:
    """Digit metric: 0 when equal, else 1/a + 1/b with 1/INF = 0."""
    for d in (a, b):
        if d != INF and (not isinstance(d, int) or d < 1):
            raise DomainError(f"{d!r} is not a positive integer or INF")
    if a == b:
        return Fraction(0)
    ra = Fraction(0) if a == INF else Fraction(1, a)
    rb = Fraction(0) if b == INF else Fraction(1, b)
    return ra + rb


def rho_seq(sigma, tau, depth: int = DEFAULT_DEPTH) -> Enclosure:
    """Sequence metric sum_n rho(sigma_n, tau_n)/n! as a certified enclosure.

    Exact whenever both sequences are finite (all later terms vanish), and
    exact for equal sequences.  Otherwise the tail past ``depth`` is
    enclosed by [0, 4/(depth+1)!], since rho(sigma_k, tau_k) <= 2/k.
    """
    sigma, tau = as_sequence(sigma), as_sequence(tau)
    if depth < 1:
        raise DomainError("depth must be >= 1")
    if sigma == tau:
        return Enclosure.exact(0)
    both_finite = sigma.is_finite and tau.is_finite
    horizon = max(sigma.length, tau.length, 1) if both_finite else depth
    if horizon > MAX_DEPTH:
        raise DepthOverflowError(f"depth {horizon} exceeds cap {MAX_DEPTH}")
    ds, dt = sigma.digits(horizon), tau.digits(horizon)
    total = Fraction(0)
    fact = 1
    for n in range(1, horizon + 1):
        fact *= n
        a = ds[n - 1] if n <= len(ds) else INF
        b = dt[n - 1] if n <= len(dt) else INF
        total += rho(a, b) / fact
    if both_finite:
        return Enclosure.exact(total)
    return Enclosure(total, total + Fraction(4, fact * (horizon + 1)))


def enumerate_prefixes(
    n: int,
    max_product: "int | None" = None,
    max_digit: "int | None" = None,
) -> Iterator[tuple[int, ...]]:
    """All strictly increasing n-tuples of positive integers under a bound.

    Yields each cylinder prefix exactly once, in lexicographic order.  At
    least one of ``max_product`` / ``max_digit`` is required, otherwise the
    enumeration would be infinite.
    """
    if n < 1:
        raise DomainError("prefix order must be >= 1")
    if max_product is None and max_digit is None:
        raise DomainError("need max_product or max_digit to keep the enumeration finite")

    def rec(chosen, last, prod):
        level = len(chosen)
        if level == n:
            yield tuple(chosen)
            return
        d = last + 1
        while True:
            if max_digit is not None and d > max_digit:
                return
            new_prod = prod * d
            if max_product is not None:
                # cheapest completion appends d+1, d+2, ...
                rest = new_prod
                for step in range(1, n - level):
                    rest *= d + step
                if rest > max_product:
                    return
            chosen.append(d)
            yield from rec(chosen, d, new_prod)
            chosen.pop()
            d += 1

    yield from rec([], 0, 1)

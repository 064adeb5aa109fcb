"""Digit machinery for Pierce expansions on the closed unit interval.

Everything here runs in exact rational arithmetic (``fractions.Fraction``)
so that the algebraic identities relating a number, its digits, and its
partial sums can be checked with equality rather than tolerances.  The
infinite digit that pads finite expansions is represented by ``math.inf``,
which orders correctly against every int.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

Rat = Fraction

#: The infinite digit (one-point compactification of the positive integers).
INF = math.inf

#: A digit: positive int, or INF once an expansion has terminated.
ExtDigit = int | float

#: Rational expansions are always finite, but their length is only bounded
#: by the numerator; fail loudly instead of looping on absurd inputs.
MAX_EXPANSION_DIGITS = 10_000


class DomainError(ValueError):
    """Input outside an operation's domain (e.g. x not in [0, 1])."""


class DepthOverflowError(RuntimeError):
    """An expansion or truncation depth exceeded its configured cap."""


def as_rational(value) -> Rat:
    """Coerce to an exact Fraction.

    Accepts Fraction, int, or a "p/q" / "p" string.  Floats and decimal
    strings are rejected: silently expanding the nearest binary or decimal
    rational is exactly the bug this library exists to avoid.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise DomainError(f"refusing inexact input {value!r}; pass a Fraction, int, or 'p/q'")
    if isinstance(value, str):
        text = value.strip()
        parts = text.split("/")
        try:
            if len(parts) == 1:
                return Fraction(int(parts[0]))
            if len(parts) == 2:
                return Fraction(int(parts[0]), int(parts[1]))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational literal {value!r}: {exc}") from None
        raise DomainError(f"cannot parse rational literal {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise DomainError(f"unsupported rational input of type {type(value).__name__}")


def _check_unit(x: Rat) -> Rat:
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    return x


def digit1(x) -> "int | float":
    """First Pierce digit: floor(1/x) for x != 0, INF at 0."""
    x = _check_unit(as_rational(x))
    if x == 0:
        return INF
    return x.denominator // x.numerator


def shift(x) -> Rat:
    """One step of the Pierce shift: 1 - digit1(x) * x, with shift(0) = 0.

    For x = p/q in lowest terms this is (q mod p)/q, so iterating strictly
    decreases the numerator and terminates for every rational.
    """
    x = _check_unit(as_rational(x))
    if x == 0:
        return Fraction(0)
    return Fraction(x.denominator % x.numerator, x.denominator)


def shift_power(x, n: int) -> Rat:
    """n-th iterate of the shift map."""
    x = _check_unit(as_rational(x))
    if n < 0:
        raise DomainError("iteration count must be >= 0")
    p, q = x.numerator, x.denominator
    for _ in range(n):
        if p == 0:
            break
        p = q % p
    return Fraction(p, q)


def expand(x, max_digits: int = MAX_EXPANSION_DIGITS) -> tuple[int, ...]:
    """Pierce digits of a rational x in [0, 1], as a (possibly empty) tuple.

    The digits are strictly increasing, satisfy d_k >= k, and when the
    expansion has length >= 2 its last two digits are never consecutive.
    """
    x = _check_unit(as_rational(x))
    digits = []
    p, q = x.numerator, x.denominator
    while p:
        if len(digits) >= max_digits:
            raise DepthOverflowError(f"expansion exceeds {max_digits} digits")
        d, p = divmod(q, p)
        digits.append(d)
    return tuple(digits)


def convergent(x, n: int) -> Rat:
    """n-th partial sum of the Pierce expansion of x; INF digits contribute 0."""
    if n < 1:
        raise DomainError("convergent order must be >= 1")
    digits = expand(x)
    return evaluate_digits(digits[:n])


def evaluate_digits(digits) -> Rat:
    """Exact alternating sum sum_k (-1)^(k+1) / (d_1 ... d_k) of finite digits."""
    num, den = 0, 1
    for k, d in enumerate(digits):
        # num_{k+1} = num_k * d + (-1)^k keeps the sum over the running product
        num = num * d + (1 if k % 2 == 0 else -1)
        den *= d
    return Fraction(num, den)


@dataclass(frozen=True)
class DigitStream:
    """Deterministic rule producing the digit at each position 1, 2, 3, ...

    Streams stand in for infinite Pierce sequences (or long finite tables),
    so equality is equality of the defining rule, never of the emitted
    extension: two different rules may emit the same digits.
    """

    kind: str
    params: tuple = ()

    @classmethod
    def from_table(cls, digits) -> "DigitStream":
        table = tuple(int(d) for d in digits)
        for pos, d in enumerate(table, start=1):
            if d < 1:
                raise DomainError(f"table digit {d} must be a positive integer")
            if pos >= 2 and table[pos - 2] >= d:
                raise DomainError("table digits must be strictly increasing")
        return cls("table", table)

    @classmethod
    def arithmetic(cls, a: int, b: int = 0) -> "DigitStream":
        """Rule d_n = a*n + b.  Needs a >= 1 and a + b >= 1 so d_n >= n holds."""
        if a < 1 or a + b < 1:
            raise DomainError(f"arithmetic rule d_n = {a}n + {b} violates d_n >= n")
        return cls("arithmetic", (a, b))

    @classmethod
    def factorial(cls) -> "DigitStream":
        """Rule d_n = n!."""
        return cls("factorial", ())

    @classmethod
    def from_rule(cls, rule: Callable[[int], int], name: str = "custom") -> "DigitStream":
        """Arbitrary callable rule; compared by identity of the callable."""
        return cls("custom", (name, rule))

    def digit(self, n: int) -> int:
        """Digit at 1-based position n; raises IndexError past a finite table."""
        if n < 1:
            raise DomainError("digit positions are 1-based")
        if self.kind == "table":
            if n > len(self.params):
                raise IndexError(n)
            return self.params[n - 1]
        if self.kind == "arithmetic":
            a, b = self.params
            return a * n + b
        if self.kind == "factorial":
            return math.factorial(n)
        d = self.params[1](n)
        if not isinstance(d, int) or d < 1:
            raise DomainError(f"custom rule emitted {d!r} at position {n}, need a positive int")
        return d

    @property
    def length(self) -> "int | None":
        """Number of digits for finite tables, None for unbounded rules."""
        return len(self.params) if self.kind == "table" else None

    def digits(self, count: int) -> Iterator[int]:
        limit = count if self.length is None else min(count, self.length)
        for n in range(1, limit + 1):
            yield self.digit(n)


#: Named digit streams for constants whose Pierce digits are known in
#: closed form. 1 - 1/e has digits 1, 2, 3, ... because its alternating
#: factorial series is already a Pierce expansion.
_NAMED_STREAMS = {
    "one-minus-inv-e": lambda: DigitStream.arithmetic(1, 0),
}


def constant_stream(name: str) -> DigitStream:
    """Digit stream of a named constant; see DigitStream constructors for custom rules."""
    try:
        return _NAMED_STREAMS[name]()
    except KeyError:
        known = ", ".join(sorted(_NAMED_STREAMS))
        raise DomainError(f"unknown constant {name!r} (known: {known})") from None

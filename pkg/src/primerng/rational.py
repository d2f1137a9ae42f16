"""Periodic digit patterns as reduced fractions and back.

A pattern of period L with value V (read as a base-b integer) is the
expansion of V / (b**L - 1). Reduction gives the canonical a/N, whose
denominator factors explain the period: the LFSR pattern 001101011110001
is 6897/32767 with 32767 = 7 · 31 · 151.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Optional

from .errors import NonPeriodicError, UnsupportedSizeError, ZeroValueError
from .numtheory import Factorization, factorize, multiplicative_order
from .sequence import DigitSequence


@dataclass(frozen=True)
class RationalSeq:
    numerator: int
    denominator: int
    base: int = 2
    denominator_factors: Optional[Factorization] = None
    factored: bool = True

    def __post_init__(self):
        a, n = self.numerator, self.denominator
        # 1/1 is the all-(b-1) pattern 0.(b-1)(b-1)...; every other value is proper.
        if not (0 < a < n or a == n == 1):
            raise ValueError(f"need 0 < a < N, got {a}/{n}")
        if math.gcd(a, n) != 1:
            raise ValueError(f"{a}/{n} is not reduced")
        if math.gcd(self.base, n) != 1:
            raise NonPeriodicError(f"1/{n} is not purely periodic in base {self.base}")
        f = self.denominator_factors
        if f is not None and f.value != n:
            raise ValueError(f"factorization of {f.value} attached to denominator {n}")

    @classmethod
    def from_fraction(cls, a: int, n: int, base: int = 2) -> "RationalSeq":
        """Reduce a/N and attach the denominator factorization when feasible."""
        if a == 0:
            raise ZeroValueError("zero has no periodic expansion with 0 < a")
        g = math.gcd(a, n)
        a, n = a // g, n // g
        if math.gcd(base, n) != 1:
            raise NonPeriodicError(f"{a}/{n} is not purely periodic in base {base}")
        try:
            factors = factorize(n) if n > 1 else Factorization(1, ())
        except UnsupportedSizeError:
            return cls(a, n, base, None, factored=False)
        return cls(a, n, base, factors)

    @classmethod
    def parse(cls, text: str, base: int = 2) -> "RationalSeq":
        a, _, n = text.partition("/")
        return cls.from_fraction(int(a), int(n), base)

    @property
    def period(self) -> Optional[int]:
        if self.denominator == 1:
            return 1
        if not self.factored:
            return None
        return multiplicative_order(self.base, self.denominator)

    def factored_form(self) -> str:
        if self.denominator_factors is None:
            return f"{self.numerator} / {self.denominator}"
        parts = [str(p) if e == 1 else f"{p}^{e}" for p, e in self.denominator_factors.factors]
        return f"{self.numerator} / ({' · '.join(parts) or '1'})"

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


def sequence_to_rational(pattern: DigitSequence, base: Optional[int] = None) -> RationalSeq:
    """Reduced a/N whose base-b expansion repeats the first period of ``pattern``."""
    base = pattern.base if base is None else base
    length = pattern.declared_period or len(pattern)
    if length < 1:
        raise ValueError("empty pattern")
    digits = pattern.digits[:length]
    if len(digits) < length:
        raise ValueError("pattern shorter than its declared period")
    value = 0
    for d in digits:
        value = value * base + d
    if value == 0:
        raise ZeroValueError("all-zero pattern has no representation a/N with a > 0")
    return RationalSeq.from_fraction(value, base**length - 1, base)


def iter_rational_digits(r: RationalSeq) -> Iterator[int]:
    if r.denominator == 1:
        while True:
            yield r.base - 1
    rem, n, b = r.numerator, r.denominator, r.base
    while True:
        d, rem = divmod(b * rem, n)
        yield d


def rational_to_sequence(r: RationalSeq, count: int) -> DigitSequence:
    it = iter_rational_digits(r)
    digits = [next(it) for _ in range(count)]
    return DigitSequence(r.base, digits, declared_period=r.period)

"""Prime-reciprocal (d-) sequences: the base-b expansion digits of 1/p.

Digit positions count from 1, so the binary digit at position i is
``(2**i mod p) mod 2``; for p = 13 the first period reads 000100111011.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice

import numpy as np

from .errors import InvalidPrimeError, InvalidSpecError, PreconditionError, UnsupportedSizeError
from .numtheory import is_probable_prime, multiplicative_order
from .sequence import DigitSequence

DEFAULT_DIGIT_CAP = 2**24


@dataclass(frozen=True)
class DSeqSpec:
    p: int
    base: int = 2

    index_origin = 1

    def __post_init__(self):
        if self.p < 3 or not is_probable_prime(self.p):
            raise InvalidPrimeError(f"{self.p} is not an odd prime")
        if self.base < 2:
            raise InvalidSpecError(f"base must be >= 2, got {self.base}")
        if math.gcd(self.base, self.p) != 1:
            raise InvalidSpecError(f"base {self.base} shares a factor with {self.p}")


def bit_at(spec: DSeqSpec, i: int) -> int:
    if spec.base != 2:
        raise InvalidSpecError(f"bit_at needs base 2, spec has base {spec.base}")
    if i < 1:
        raise ValueError(f"positions start at 1, got {i}")
    return pow(2, i, spec.p) & 1


def iter_digits(spec: DSeqSpec, start: int = 1) -> Iterator[int]:
    """Endless long-division digits of 1/p from position ``start``."""
    p, b = spec.p, spec.base
    r = pow(b, start - 1, p)
    while True:
        q, r = divmod(b * r, p)
        yield q


@lru_cache(maxsize=1024)
def period(spec: DSeqSpec) -> int:
    return multiplicative_order(spec.base, spec.p)


def is_max_length(spec: DSeqSpec) -> bool:
    return period(spec) == spec.p - 1


def digits_one_period(spec: DSeqSpec, cap: int = DEFAULT_DIGIT_CAP) -> DigitSequence:
    n = period(spec)
    if n > cap:
        raise UnsupportedSizeError(f"period {n} of 1/{spec.p} exceeds the digit cap {cap}")
    return _one_period(spec)


@lru_cache(maxsize=8)
def _one_period(spec: DSeqSpec) -> DigitSequence:
    n = period(spec)
    p, b = spec.p, spec.base
    out = bytearray(n) if b <= 256 else [0] * n
    r = 1
    for i in range(n):
        out[i], r = divmod(b * r, p)
    return DigitSequence(b, bytes(out) if b <= 256 else tuple(out), declared_period=n)


def digits_array(spec: DSeqSpec, count: int, start: int = 1, cap: int = DEFAULT_DIGIT_CAP) -> np.ndarray:
    """Digits ``start .. start+count-1`` as an array, built by tiling one period.

    Periods longer than ``cap`` fall back to direct long division.
    """
    if period(spec) > cap:
        dtype = np.uint8 if spec.base <= 256 else object
        return np.fromiter(islice(iter_digits(spec, start), count), dtype=dtype, count=count)
    seq = digits_one_period(spec, cap)
    if isinstance(seq.digits, bytes):
        one = np.frombuffer(seq.digits, dtype=np.uint8)
    else:
        one = np.array(seq.digits, dtype=object)
    offset = (start - 1) % len(one)
    return np.resize(np.roll(one, -offset), count)


def take(spec: DSeqSpec, count: int, start: int = 1) -> DigitSequence:
    out = digits_array(spec, count, start)
    digits = out.tobytes() if spec.base <= 256 else tuple(out.tolist())
    return DigitSequence(spec.base, digits, declared_period=period(spec))


def half_complement_holds(spec: DSeqSpec) -> bool:
    """Whether the second half-period of a maximum-length binary d-sequence
    is the bitwise complement of the first half.

    Raises :class:`PreconditionError` for sequences that are not maximum
    length, where the property is not expected to hold at all.
    """
    if spec.base != 2:
        raise InvalidSpecError("half-complement check needs base 2")
    if not is_max_length(spec):
        raise PreconditionError(f"d-sequence of {spec.p} is not maximum length")
    bits = np.frombuffer(digits_one_period(spec).digits, dtype=np.uint8)
    half = (spec.p - 1) // 2
    return bool(np.all(bits[half:] == 1 - bits[:half]))


@dataclass(frozen=True)
class ExpansionRatio:
    value: float
    max_length: bool

    def __float__(self):
        return self.value


def expansion_ratio(p: int) -> ExpansionRatio:
    """``(p - 1) / log2(p)``: period length per bit needed to write down p.

    The formula describes maximum-length binary sequences; ``max_length``
    records whether 2 is actually a primitive root of ``p``.
    """
    spec = DSeqSpec(p, 2)
    return ExpansionRatio((p - 1) / math.log2(p), is_max_length(spec))

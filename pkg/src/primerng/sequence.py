"""Finite digit strings and the shared bitstream text/binary formats."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import BinaryIO, Optional

import numpy as np


@dataclass(frozen=True)
class DigitSequence:
    """Digits in ``[0, base)`` with an optional declared period.

    Digits are stored as ``bytes`` for bases up to 256 and as a tuple
    otherwise, so bit streams of millions of entries stay compact.
    """

    base: int
    digits: bytes | tuple[int, ...]
    declared_period: Optional[int] = None

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        digits = self.digits
        if self.base <= 256:
            if not isinstance(digits, bytes):
                digits = bytes(digits)
        elif not isinstance(digits, tuple):
            digits = tuple(int(d) for d in digits)
        object.__setattr__(self, "digits", digits)
        if digits and (max(digits) >= self.base or min(digits) < 0):
            raise ValueError(f"digit out of range for base {self.base}")
        period = self.declared_period
        if period is not None:
            if period < 1:
                raise ValueError("declared period must be positive")
            if period < len(digits) and digits[period:] != digits[: len(digits) - period]:
                raise ValueError(f"digits do not repeat with period {period}")

    @classmethod
    def from_string(cls, text: str, base: int = 2, declared_period: Optional[int] = None):
        """Parse the ASCII form written by :meth:`__str__`."""
        text = text.strip()
        if base <= 10:
            digits = [int(ch) for ch in text]
        else:
            digits = [int(tok) for tok in text.split()]
        return cls(base, digits, declared_period)

    def __len__(self):
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __str__(self):
        return format_digits(self.digits, self.base)


def format_digits(digits: Iterable[int], base: int) -> str:
    if base <= 10:
        if isinstance(digits, (bytes, bytearray)) and base == 2:
            return bytes(digits).translate(_ASCII_BITS).decode("ascii")
        return "".join(map(str, digits))
    return " ".join(map(str, digits))


_ASCII_BITS = bytes.maketrans(b"\x00\x01", b"01")


def pack_bits(bits) -> bytes:
    """Pack 0/1 values MSB-first; the final byte is zero-padded."""
    if not isinstance(bits, np.ndarray):
        bits = np.frombuffer(bytes(bits), dtype=np.uint8)
    return np.packbits(bits.astype(np.uint8, copy=False), bitorder="big").tobytes()


def unpack_bits(data: bytes, count: Optional[int] = None) -> bytes:
    arr = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="big")
    if count is not None:
        arr = arr[:count]
    return arr.tobytes()


class BitWriter:
    """Streams bit chunks to a binary sink as ASCII '0'/'1' or packed bytes.

    Packed output carries leftover bits between chunks so byte boundaries are
    independent of how the caller splits the stream.
    """

    def __init__(self, sink: BinaryIO, fmt: str = "ascii-bits"):
        if fmt not in ("ascii-bits", "packed"):
            raise ValueError(f"unknown bit format {fmt!r}")
        self.sink = sink
        self.fmt = fmt
        self._pending = b""

    def write(self, bits: bytes) -> None:
        if self.fmt == "ascii-bits":
            self.sink.write(bits.translate(_ASCII_BITS))
            return
        bits = self._pending + bits
        whole = len(bits) - len(bits) % 8
        self._pending = bits[whole:]
        if whole:
            self.sink.write(pack_bits(bits[:whole]))

    def close(self) -> None:
        if self.fmt == "ascii-bits":
            self.sink.write(b"\n")
        elif self._pending:
            self.sink.write(pack_bits(self._pending))
            self._pending = b""
        self.sink.flush()

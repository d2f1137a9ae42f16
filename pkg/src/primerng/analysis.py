"""Balance, periodic autocorrelation and position recovery for bit streams."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import dseq
from .dseq import DSeqSpec
from .errors import PreconditionError, UnsupportedSizeError
from .sequence import DigitSequence

RECOVERY_CAP = 2**22


@dataclass
class AnalysisReport:
    length: int
    zeros: int
    ones: int
    half_balance: Optional[tuple[tuple[int, int], tuple[int, int]]] = None
    autocorrelation: dict[int, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    recovery: Optional[dict] = None

    def to_json(self) -> str:
        doc = asdict(self)
        doc["autocorrelation"] = {str(k): v for k, v in sorted(self.autocorrelation.items())}
        if self.half_balance is not None:
            doc["half_balance"] = [list(h) for h in self.half_balance]
        if doc["recovery"] is None:
            del doc["recovery"]
        return json.dumps(doc, indent=2, sort_keys=True)


def _bits_array(bits: DigitSequence) -> np.ndarray:
    if bits.base != 2:
        raise ValueError(f"expected a binary sequence, got base {bits.base}")
    return np.frombuffer(bits.digits, dtype=np.uint8)


def balance_stats(bits: DigitSequence, period: Optional[int] = None) -> AnalysisReport:
    """Zero/one counts; with an even period, also counts for each half of the first period."""
    arr = _bits_array(bits)
    ones = int(arr.sum())
    report = AnalysisReport(len(arr), len(arr) - ones, ones)
    period = period or bits.declared_period
    if period:
        if period % 2:
            report.notes.append(f"period {period} is odd; no half-period split")
        elif period > len(arr):
            report.notes.append(f"input shorter than period {period}; no half-period split")
        else:
            h = period // 2
            first, second = int(arr[:h].sum()), int(arr[h:period].sum())
            report.half_balance = ((h - first, first), (h - second, second))
    return report


def autocorrelation(
    bits: DigitSequence, shifts: Iterable[int], period: Optional[int] = None
) -> dict[int, float]:
    """Periodic autocorrelation over one period, in the +-1 convention.

    For each shift s the value is (agreements - disagreements) / L between
    the period and its cyclic rotation by s.
    """
    period = period or bits.declared_period
    if not period:
        raise PreconditionError("autocorrelation needs a declared period")
    arr = _bits_array(bits)
    if len(arr) < period:
        raise PreconditionError(f"input has {len(arr)} bits, fewer than one period ({period})")
    signs = 1 - 2 * arr[:period].astype(np.int64)
    return {s: int(np.dot(signs, np.roll(signs, -s))) / period for s in shifts}


def _one_period_bits(p: int) -> bytes:
    spec = DSeqSpec(p, 2)
    n = dseq.period(spec)
    if n > RECOVERY_CAP:
        raise UnsupportedSizeError(f"period {n} of 1/{p} exceeds the scan cap {RECOVERY_CAP}")
    return dseq.digits_one_period(spec, cap=RECOVERY_CAP).digits


def recover_position(p: int, window: DigitSequence) -> list[int]:
    """All start positions (1-based, within one period) where ``window``
    matches the cyclic binary d-sequence of ``p``.

    This is a plain scan over the period; short windows already pin the
    position down, which is why a bare d-sequence is predictable.
    """
    if window.base != 2:
        raise ValueError("window must be binary")
    w = bytes(window.digits)
    if not w:
        raise ValueError("empty window")
    seq = _one_period_bits(p)
    n = len(seq)
    text = seq * (-(-(n + len(w) - 1) // n))
    hits, i = [], text.find(w)
    while 0 <= i < n:
        hits.append(i + 1)
        i = text.find(w, i + 1)
    return hits


def window_uniqueness(p: int, window_len: int) -> bool:
    seq = _one_period_bits(p)
    n = len(seq)
    if not 1 <= window_len <= n:
        raise PreconditionError(f"window length must be in [1, {n}]")
    text = seq + seq[: window_len - 1]
    return len({text[i : i + window_len] for i in range(n)}) == n


def analyze(
    bits: DigitSequence,
    period: Optional[int] = None,
    shifts: Optional[Iterable[int]] = None,
) -> AnalysisReport:
    """Balance report plus autocorrelation when a period is known.

    Without explicit shifts, the autocorrelation covers shift 0 and, for
    even periods, the half-period shift.
    """
    report = balance_stats(bits, period)
    period = period or bits.declared_period
    if period and len(bits) >= period:
        if shifts is None:
            shifts = [0, period // 2] if period % 2 == 0 else [0]
        report.autocorrelation = autocorrelation(bits, shifts, period)
    elif shifts:
        report.notes.append("no full period available; autocorrelation skipped")
    return report

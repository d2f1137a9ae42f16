"""Longer periods from several binary d-sequences: mod-2 sums and splicing."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import dseq
from .dseq import DSeqSpec
from .errors import InvalidSpecError, PrimeRngError, UnsupportedSizeError
from .numtheory import divisors
from .sequence import DigitSequence

DEFAULT_WINDOW_CAP = 2**26


@dataclass(frozen=True)
class CombinedSpec:
    components: tuple[DSeqSpec, ...]
    mode: Literal["xor", "splice"] = "xor"

    def __post_init__(self):
        comps = tuple(c if isinstance(c, DSeqSpec) else DSeqSpec(int(c), 2) for c in self.components)
        object.__setattr__(self, "components", comps)
        if self.mode not in ("xor", "splice"):
            raise InvalidSpecError(f"unknown combination mode {self.mode!r}")
        if len(comps) < 2:
            raise InvalidSpecError("a combination needs at least two component sequences")
        if any(c.base != 2 for c in comps):
            raise InvalidSpecError("combined components must be binary d-sequences")
        primes = [c.p for c in comps]
        if len(set(primes)) != len(primes):
            raise InvalidSpecError(f"duplicate primes in {primes}: their mod-2 sum cancels")

    @classmethod
    def of(cls, *primes: int, mode: str = "xor") -> "CombinedSpec":
        return cls(tuple(DSeqSpec(p, 2) for p in primes), mode)

    @property
    def primes(self) -> list[int]:
        return [c.p for c in self.components]


def _xor_array(components: Sequence[DSeqSpec], count: int, start: int = 1) -> np.ndarray:
    out = np.zeros(count, dtype=np.uint8)
    for c in components:
        out ^= dseq.digits_array(c, count, start)
    return out


def xor_stream(spec: CombinedSpec, count: int, start: int = 1) -> DigitSequence:
    """Bits ``start .. start+count-1`` of the mod-2 sum of the components."""
    if spec.mode != "xor":
        raise InvalidSpecError("xor_stream needs a spec in xor mode")
    return DigitSequence(2, _xor_array(spec.components, count, start).tobytes())


def period_bound(*primes: int) -> int:
    """lcm of (p - 1) over the primes: the longest period a mod-2 sum can have."""
    return math.lcm(*(p - 1 for p in primes))


def minimal_period(spec: CombinedSpec | DSeqSpec, cap: int = DEFAULT_WINDOW_CAP) -> int:
    """Smallest divisor d of the lcm bound B such that the stream repeats with period d.

    The window holds 2B bits, so even d = B is an actual check on the data
    rather than true by construction; a stream whose period does not divide B
    raises instead of returning.
    """
    if isinstance(spec, DSeqSpec):
        components: tuple[DSeqSpec, ...] = (spec,)
    else:
        if spec.mode != "xor":
            raise InvalidSpecError("minimal_period needs a spec in xor mode")
        components = spec.components
    bound = period_bound(*(c.p for c in components))
    if bound > cap:
        raise UnsupportedSizeError(f"period bound {bound} exceeds the window cap {cap}")
    window = _xor_array(components, 2 * bound)
    for d in divisors(bound):
        if np.array_equal(window[d:], window[:-d]):
            return d
    raise PrimeRngError(f"stream does not repeat within the bound {bound}")


def splice(
    components: Sequence[DSeqSpec],
    order: Literal["concatenate", "interleave"],
    count: int,
) -> DigitSequence:
    """Join component sequences into one stream of ``count`` digits.

    ``concatenate`` emits one full period of each component in turn and
    cycles; ``interleave`` takes position i from every component in
    round-robin before moving to position i + 1.
    """
    if len(components) < 2:
        raise InvalidSpecError("splicing needs at least two components")
    bases = {c.base for c in components}
    if len(bases) != 1:
        raise InvalidSpecError("spliced components must share a base")
    base = bases.pop()
    if order == "concatenate":
        block = np.concatenate([dseq.digits_array(c, dseq.period(c)) for c in components])
        data = np.resize(block, count)
    elif order == "interleave":
        rows = -(-count // len(components))
        stacked = np.stack([dseq.digits_array(c, rows) for c in components], axis=1)
        data = stacked.reshape(-1)[:count]
    else:
        raise InvalidSpecError(f"unknown splice order {order!r}")
    return DigitSequence(base, data.tobytes() if base <= 256 else tuple(data.tolist()))

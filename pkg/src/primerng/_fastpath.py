"""Word-sized kernel for the power-exponent generator.

Both moduli must be odd and below 2**64. Residues are held in Montgomery
form (x * 2**64 mod n) so each powering step needs only 64-bit multiplies;
the emitted bits are identical to the arbitrary-precision loop in ``rng``.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

R = 1 << 64
_MASK = (1 << 64) - 1


def available() -> bool:
    return njit is not None


def supports(n1: int, n2: int) -> bool:
    return available() and all(n % 2 == 1 and 3 <= n < R for n in (n1, n2))


def _setup(n: int) -> tuple[int, int]:
    ninv = (-pow(n, -1, R)) & _MASK
    return ninv, pow(R, -1, n)


if njit is not None:
    _U32 = np.uint64(32)
    _M32 = np.uint64(0xFFFFFFFF)
    _ZERO = np.uint64(0)
    _ONE = np.uint64(1)

    @njit(cache=True, inline="always")
    def _mulhi(a, b):
        a_lo = a & _M32
        a_hi = a >> _U32
        b_lo = b & _M32
        b_hi = b >> _U32
        p0 = a_lo * b_lo
        p1 = a_lo * b_hi
        p2 = a_hi * b_lo
        p3 = a_hi * b_hi
        mid = (p0 >> _U32) + (p1 & _M32) + (p2 & _M32)
        return p3 + (p1 >> _U32) + (p2 >> _U32) + (mid >> _U32)

    @njit(cache=True, inline="always")
    def _redc(hi, lo, n, ninv):
        m = lo * ninv
        t = hi + _mulhi(m, n)
        overflow = t < hi
        if lo != _ZERO:
            t2 = t + _ONE
            overflow = overflow or t2 < t
            t = t2
        if overflow or t >= n:
            t = t - n
        return t

    @njit(cache=True, inline="always")
    def _mont_mul(a, b, n, ninv):
        return _redc(_mulhi(a, b), a * b, n, ninv)

    @njit(cache=True, inline="always")
    def _mont_pow(x, ebits, one, n, ninv):
        acc = one
        for bit in ebits:
            acc = _mont_mul(acc, acc, n, ninv)
            if bit:
                acc = _mont_mul(acc, x, n, ninv)
        return acc

    @njit(cache=True)
    def _run(x1, n1, ninv1, one1, x2, n2, ninv2, one2, ebits, square, out):
        for i in range(out.shape[0]):
            v1 = _redc(_ZERO, x1, n1, ninv1)
            v2 = _redc(_ZERO, x2, n2, ninv2)
            out[i] = np.uint8((v1 ^ v2) & _ONE)
            if square:
                x1 = _mont_mul(x1, x1, n1, ninv1)
                x2 = _mont_mul(x2, x2, n2, ninv2)
            else:
                x1 = _mont_pow(x1, ebits, one1, n1, ninv1)
                x2 = _mont_pow(x2, ebits, one2, n2, ninv2)
        return x1, x2


def run(x1: int, x2: int, n1: int, n2: int, exponent: int, count: int) -> tuple[bytes, int, int]:
    """Emit ``count`` bits from residues (x1, x2); return the bits and the advanced residues."""
    ninv1, rinv1 = _setup(n1)
    ninv2, rinv2 = _setup(n2)
    ebits = np.array([int(b) for b in bin(exponent)[2:]], dtype=np.uint8)
    out = np.empty(count, dtype=np.uint8)
    m1, m2 = _run(
        np.uint64((x1 * R) % n1), np.uint64(n1), np.uint64(ninv1), np.uint64(R % n1),
        np.uint64((x2 * R) % n2), np.uint64(n2), np.uint64(ninv2), np.uint64(R % n2),
        ebits, exponent == 2, out,
    )
    return out.tobytes(), int(m1) * rinv1 % n1, int(m2) * rinv2 % n2

"""Integer kernel: modular powers, primality, factoring, multiplicative order."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    InvalidModulusError,
    InvalidPrimeError,
    NotAUnitError,
    UnsupportedSizeError,
)

FACTOR_LIMIT = 2**64
TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses for every n < 3.3e24 (covers 2^64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"factorization of non-positive value {self.value}")
        product = 1
        for p, e in self.factors:
            if e < 1 or not is_probable_prime(p):
                raise ValueError(f"bad factor {p}^{e}")
            product *= p**e
        if product != self.value:
            raise ValueError(f"factors multiply to {product}, not {self.value}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return " · ".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


def mod_exp(base: int, exponent: int, modulus: int) -> int:
    if modulus < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise ValueError("negative exponent")
    return pow(base, exponent, modulus)


def is_probable_prime(n: int, rounds: int = 20) -> bool:
    """Miller-Rabin test.

    Exact for ``n < 2**64`` (fixed witness set). Above that, ``rounds``
    witnesses are drawn from a generator seeded by ``n`` so answers are
    reproducible; a composite slips through with probability <= 4**-rounds.
    """
    if n < 2:
        return False
    if n <= TRIAL_LIMIT:
        return bool(_sieve()[n])
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    if n < 2**64:
        witnesses = _MR_WITNESSES
    else:
        rng = random.Random(n)
        witnesses = [rng.randrange(2, n - 1) for _ in range(rounds)]

    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_blum_prime(p: int) -> bool:
    return p % 4 == 3 and is_probable_prime(p)


@lru_cache(maxsize=1)
def _sieve() -> bytearray:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, TRIAL_LIMIT + 1, i)))
    return sieve


@lru_cache(maxsize=1)
def _prime_blocks(size: int = 256) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Primes up to the trial limit in blocks, each paired with its product.

    One gcd against a block's product skips the whole block when none of its
    primes divides n.
    """
    primes = [i for i, flag in enumerate(_sieve()) if flag]
    blocks = [tuple(primes[i : i + size]) for i in range(0, len(primes), size)]
    return tuple((b, math.prod(b)) for b in blocks)


def _pollard_brent(n: int) -> int:
    """Return a non-trivial factor of the odd composite ``n``."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    """Complete factorization by trial division to 10**6, then Pollard-Brent rho."""
    if n < 2:
        raise ValueError(f"cannot factor {n}")
    if n > FACTOR_LIMIT:
        raise UnsupportedSizeError(f"{n} exceeds the factoring bound 2^64")
    value, found = n, {}
    for block, product in _prime_blocks():
        if block[0] * block[0] > n:
            break
        if math.gcd(n, product) == 1:
            continue
        for p in block:
            if p * p > n:
                break
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                found[p] = e
    if n > 1:
        # no factor below min(sqrt(n), 10^6): n is prime whenever n < 10^12
        if n < TRIAL_LIMIT**2:
            found[n] = found.get(n, 0) + 1
        else:
            _split(n, found)
    return Factorization(value, tuple(sorted(found.items())))


def carmichael_lambda(f: Factorization) -> int:
    result = 1
    for p, e in f.factors:
        if p == 2:
            term = 1 if e == 1 else 2 if e == 2 else 2 ** (e - 2)
        else:
            term = p ** (e - 1) * (p - 1)
        result = math.lcm(result, term)
    return result


def multiplicative_order(g: int, m: int) -> int:
    """Smallest t >= 1 with g**t == 1 (mod m).

    Starts from the Carmichael function of ``m`` and strips prime factors while
    the power stays 1, so the cost is a few modular powers, not a scan.
    """
    if m < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {m}")
    if math.gcd(g, m) != 1:
        raise NotAUnitError(f"{g} is not a unit modulo {m}")
    if m == 2:
        return 1
    group_exp = m - 1 if is_probable_prime(m) else carmichael_lambda(factorize(m))
    order = group_exp
    for q, _ in factorize(group_exp).factors if group_exp > 1 else ():
        while order % q == 0 and pow(g, order // q, m) == 1:
            order //= q
    return order


def is_primitive_root(g: int, p: int) -> bool:
    if not is_probable_prime(p):
        raise InvalidPrimeError(f"{p} is not prime")
    return multiplicative_order(g, p) == p - 1


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in increasing order."""
    if n == 1:
        return [1]
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)

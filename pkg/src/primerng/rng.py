"""Recursive power-exponent generator over two moduli.

Two residues start at ``S mod n1`` and ``S**k mod n2``. Each step emits the
XOR of their parities and then raises both to the ``e``-th power::

    a(t) = (S**(e**t) mod n1) mod 2  XOR  (S**(k * e**t) mod n2) mod 2

Outputs are indexed from 0: a(0) uses the seed itself. With k = 1 both
residues see the same exponent; k > 1 shifts the second one.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, fields
from typing import Literal, NamedTuple, Optional

from . import _fastpath
from .errors import ConfigError
from .numtheory import is_probable_prime
from .sequence import DigitSequence

MAX_POWER = 2**31
_CHUNK = 1 << 20
# below this many bits the compiled kernel's call and first-use cost dominates
_FAST_MIN = 1 << 14


@dataclass(frozen=True)
class RngConfig:
    n1: int
    n2: int
    seed: int
    exponent: int = 2
    seed_power: int = 1
    modulus_kind: Literal["prime", "composite"] = "prime"
    n1_factors: Optional[tuple[int, ...]] = None
    n2_factors: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        for name in ("n1_factors", "n2_factors"):
            value = getattr(self, name)
            if value is not None and not isinstance(value, tuple):
                object.__setattr__(self, name, tuple(int(v) for v in value))

    def to_text(self) -> str:
        """Flat ``key = value`` form, one key per line, readable by :meth:`from_text`."""
        lines = [
            f"n1 = {self.n1}",
            f"n2 = {self.n2}",
            f"seed = {self.seed}",
            f"exponent = {self.exponent}",
            f"seed_power = {self.seed_power}",
            f"modulus_kind = {self.modulus_kind}",
        ]
        for name in ("n1_factors", "n2_factors"):
            value = getattr(self, name)
            if value is not None:
                lines.append(f"{name} = {','.join(map(str, value))}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_mapping(cls, values: Mapping[str, str | int]) -> "RngConfig":
        unknown = set(values) - {f.name for f in fields(cls)}
        if unknown:
            raise ConfigError([f"unknown-key: {k}" for k in sorted(unknown)])
        kwargs = {}
        for key, value in values.items():
            if key == "modulus_kind":
                kwargs[key] = str(value)
            elif key.endswith("_factors"):
                kwargs[key] = _parse_factor_list(value)
            else:
                kwargs[key] = int(value)
        missing = {"n1", "n2", "seed"} - set(kwargs)
        if missing:
            raise ConfigError([f"missing-key: {k}" for k in sorted(missing)])
        return cls(**kwargs)

    @classmethod
    def from_text(cls, text: str) -> "RngConfig":
        return cls.from_mapping(parse_key_values(text))


def _parse_factor_list(value) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    return tuple(int(tok) for tok in str(value).replace(",", " ").split())


def parse_key_values(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError([f"syntax: line {lineno} has no '='"])
        out[key.strip()] = value.strip()
    return out


@dataclass(frozen=True)
class RngState:
    x1: int
    x2: int
    step: int = 0


def _modulus_problems(label: str, n: int, kind: str, factors) -> list[str]:
    problems = []
    if n < 3 or n % 2 == 0:
        problems.append(f"bad-modulus: {label}={n} must be odd and >= 3")
        return problems
    if kind == "prime":
        if not is_probable_prime(n):
            problems.append(f"not-prime: {label}={n} is composite")
    elif factors is None:
        problems.append(f"cannot-verify-blum: {label}={n} given without its factorization")
    else:
        if math.prod(factors) != n:
            problems.append(f"bad-factors: {label} factors multiply to {math.prod(factors)}, not {n}")
        for q in factors:
            if not is_probable_prime(q):
                problems.append(f"bad-factors: {label} factor {q} is not prime")
            elif q % 4 != 3:
                problems.append(f"not-blum: {label} factor {q} is not 3 mod 4")
    return problems


def problems(config: RngConfig) -> list[str]:
    """Every failed check for ``config``; empty when it is usable."""
    out = []
    if config.modulus_kind not in ("prime", "composite"):
        out.append(f"bad-kind: modulus_kind must be prime or composite, got {config.modulus_kind!r}")
    for label, n, factors in (("n1", config.n1, config.n1_factors), ("n2", config.n2, config.n2_factors)):
        out += _modulus_problems(label, n, config.modulus_kind, factors)
    if config.n1 == config.n2:
        out.append("same-modulus: n1 and n2 must differ")
    if not 1 < config.exponent <= MAX_POWER:
        out.append(f"bad-exponent: need 2 <= exponent <= 2^31, got {config.exponent}")
    if not 0 < config.seed_power <= MAX_POWER:
        out.append(f"bad-seed-power: need 1 <= seed_power <= 2^31, got {config.seed_power}")
    if config.seed < 1:
        out.append(f"bad-seed: seed must be positive, got {config.seed}")
        return out
    for label, n in (("n1", config.n1), ("n2", config.n2)):
        if n < 3:
            continue
        if math.gcd(config.seed, n) != 1:
            out.append(f"not-coprime: seed shares a factor with {label}={n}")
        elif config.seed % n in (1, n - 1):
            out.append(f"degenerate-seed: seed is congruent to +-1 mod {label}={n}")
    return out


def validate(config: RngConfig) -> RngConfig:
    found = problems(config)
    if found:
        raise ConfigError(found)
    return config


def init(config: RngConfig, *, check: bool = True) -> RngState:
    if check:
        validate(config)
    return RngState(config.seed % config.n1, pow(config.seed, config.seed_power, config.n2), 0)


def advance(state: RngState, config: RngConfig) -> RngState:
    e = config.exponent
    return RngState(pow(state.x1, e, config.n1), pow(state.x2, e, config.n2), state.step + 1)


def next_bit(state: RngState, config: RngConfig) -> tuple[int, RngState]:
    """Emit the XOR of the residue parities, then advance both residues."""
    return (state.x1 ^ state.x2) & 1, advance(state, config)


class PowerExponentGenerator:
    """Stateful bit source; single owner, advanced sequentially.

    Moduli below 2**64 run through a compiled word-sized kernel. Everything
    else, and the fallback when numba is missing, uses Python integers.
    """

    def __init__(self, config: RngConfig, *, check: bool = True, fast: bool = True):
        self.config = config
        self.state = init(config, check=check)
        self.fast = fast and _fastpath.supports(config.n1, config.n2)

    def bits(self, count: int) -> bytes:
        s, cfg = self.state, self.config
        if self.fast and count >= _FAST_MIN:
            out, x1, x2 = _fastpath.run(s.x1, s.x2, cfg.n1, cfg.n2, cfg.exponent, count)
        else:
            out, x1, x2 = _slow_run(s.x1, s.x2, cfg.n1, cfg.n2, cfg.exponent, count)
        self.state = RngState(x1, x2, s.step + count)
        return out

    def chunks(self, count: int, chunk: int = _CHUNK) -> Iterator[bytes]:
        while count > 0:
            n = min(chunk, count)
            yield self.bits(n)
            count -= n

    def __iter__(self) -> Iterator[int]:
        while True:
            yield from self.bits(4096)


def _slow_run(x1, x2, n1, n2, e, count):
    out = bytearray(count)
    if e == 2:
        for i in range(count):
            out[i] = (x1 ^ x2) & 1
            x1 = x1 * x1 % n1
            x2 = x2 * x2 % n2
    else:
        for i in range(count):
            out[i] = (x1 ^ x2) & 1
            x1 = pow(x1, e, n1)
            x2 = pow(x2, e, n2)
    return bytes(out), x1, x2


def generate(config: RngConfig, count: int, *, check: bool = True) -> DigitSequence:
    return DigitSequence(2, PowerExponentGenerator(config, check=check).bits(count))


class PeriodResult(NamedTuple):
    preperiod: int
    period: int


def measure_period(config: RngConfig, max_steps: int, *, check: bool = True) -> Optional[PeriodResult]:
    """Cycle length and tail length of the residue pair under repeated powering.

    Uses Brent's cycle detection on the state (x1, x2). Returns None when no
    cycle closes within ``max_steps`` advances.
    """
    start = init(config, check=check)
    e, n1, n2 = config.exponent, config.n1, config.n2

    def f(s):
        return pow(s[0], e, n1), pow(s[1], e, n2)

    x0 = (start.x1, start.x2)
    power = lam = 1
    tortoise, hare = x0, f(x0)
    steps = 1
    while tortoise != hare:
        if steps >= max_steps:
            return None
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        lam += 1
        steps += 1

    tortoise = hare = x0
    for _ in range(lam):
        hare = f(hare)
    mu = 0
    while tortoise != hare:
        tortoise, hare = f(tortoise), f(hare)
        mu += 1
    return PeriodResult(mu, lam)

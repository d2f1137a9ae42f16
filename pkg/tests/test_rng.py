import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primerng import _fastpath, rng
from primerng.errors import ConfigError
from primerng.rng import PowerExponentGenerator, RngConfig, RngState

from oracles import lcm, odd_primes_below, rng_closed_form

BASIC = RngConfig(n1=11, n2=13, seed=3)


def test_validate_accepts_coprime_seed():
    cfg = RngConfig(n1=7, n2=13, seed=10)
    assert rng.validate(cfg) is cfg


@pytest.mark.parametrize(
    "cfg, code",
    [
        (RngConfig(7, 13, seed=7), "not-coprime"),
        (RngConfig(7, 13, seed=1), "degenerate-seed"),
        (RngConfig(7, 13, seed=12), "degenerate-seed"),
        (RngConfig(7, 13, seed=14), "not-coprime"),
        (RngConfig(7, 7, seed=3), "same-modulus"),
        (RngConfig(9, 13, seed=2), "not-prime"),
        (RngConfig(8, 13, seed=3), "bad-modulus"),
        (RngConfig(7, 13, seed=3, exponent=1), "bad-exponent"),
        (RngConfig(7, 13, seed=3, seed_power=0), "bad-seed-power"),
        (RngConfig(7, 13, seed=0), "bad-seed"),
        (RngConfig(77, 437, seed=5, modulus_kind="composite"), "cannot-verify-blum"),
        (RngConfig(65, 437, seed=2, modulus_kind="composite", n1_factors=(5, 13), n2_factors=(19, 23)), "not-blum"),
        (RngConfig(77, 437, seed=5, modulus_kind="composite", n1_factors=(7, 13), n2_factors=(19, 23)), "bad-factors"),
    ],
)
def test_validate_reports_each_failure(cfg, code):
    with pytest.raises(ConfigError) as info:
        rng.validate(cfg)
    assert any(p.startswith(code) for p in info.value.problems), info.value.problems


def test_validate_lists_every_problem():
    found = rng.problems(RngConfig(7, 7, seed=7, exponent=1))
    assert {p.split(":")[0] for p in found} >= {"same-modulus", "bad-exponent", "not-coprime"}


def test_blum_composites_validate():
    cfg = RngConfig(77, 437, seed=5, modulus_kind="composite", n1_factors=(7, 11), n2_factors=(19, 23))
    assert rng.validate(cfg) is cfg


@pytest.mark.parametrize(
    "cfg, expected",
    [
        (RngConfig(11, 13, seed=3), RngState(3, 3, 0)),
        (RngConfig(11, 13, seed=3, seed_power=2), RngState(3, 9, 0)),
        (RngConfig(7, 13, seed=10), RngState(3, 10, 0)),
    ],
)
def test_init(cfg, expected):
    assert rng.init(cfg) == expected


def test_init_refuses_invalid_config():
    with pytest.raises(ConfigError):
        rng.init(RngConfig(7, 13, seed=7))


def test_next_bit_sequence():
    state = rng.init(BASIC)
    bits, states = [], []
    for _ in range(3):
        states.append((state.x1, state.x2))
        b, state = rng.next_bit(state, BASIC)
        bits.append(b)
    assert bits == [0, 0, 1]
    assert states == [(3, 3), (9, 9), (4, 3)]
    assert state.step == 3


def test_generate():
    assert str(rng.generate(BASIC, 8)) == "00100010"
    assert len(rng.generate(BASIC, 0)) == 0
    assert rng.generate(BASIC, 500) == rng.generate(BASIC, 500)


def test_even_residues_give_zero_first_bit():
    cfg = RngConfig(n1=11, n2=13, seed=4)
    assert rng.generate(cfg, 1).digits == b"\x00"


ORACLE_CONFIGS = [
    RngConfig(11, 13, seed=3),
    RngConfig(1019, 2027, seed=5),
    RngConfig(1019, 2027, seed=5, seed_power=3),
    RngConfig(1019, 2027, seed=7, exponent=3),
    RngConfig(1019, 2027, seed=7, exponent=5, seed_power=4),
    RngConfig(77, 437, seed=5, modulus_kind="composite", n1_factors=(7, 11), n2_factors=(19, 23)),
    RngConfig(2**61 - 1, 18446744073709551557, seed=123456789, seed_power=2),
]


@pytest.mark.parametrize("cfg", ORACLE_CONFIGS)
def test_stream_matches_closed_form(cfg):
    bits = rng.generate(cfg, 1500).digits
    for t in range(1500):
        assert bits[t] == rng_closed_form(cfg.seed, cfg.n1, cfg.n2, cfg.exponent, cfg.seed_power, t), t


@pytest.mark.parametrize("cfg", ORACLE_CONFIGS)
def test_state_invariant(cfg):
    gen = PowerExponentGenerator(cfg)
    for _ in range(5):
        gen.bits(1000)
        t = gen.state.step
        big = cfg.exponent**t
        assert gen.state.x1 == pow(cfg.seed, big, cfg.n1)
        assert gen.state.x2 == pow(cfg.seed, cfg.seed_power * big, cfg.n2)


def test_output_is_xor_of_single_modulus_streams():
    cfg = RngConfig(1019, 2027, seed=5, seed_power=3)
    # each half on its own: pair the modulus with a constant-parity partner (x2 = 0)
    s = rng.init(cfg)
    left = PowerExponentGenerator(cfg)
    left.state = RngState(s.x1, 0, 0)
    right = PowerExponentGenerator(cfg)
    right.state = RngState(0, s.x2, 0)
    a, b = left.bits(3000), right.bits(3000)
    combined = bytes(x ^ y for x, y in zip(a, b))
    assert combined == rng.generate(cfg, 3000).digits


@pytest.mark.skipif(not _fastpath.available(), reason="numba not installed")
def test_fast_path_is_bit_identical():
    r = random.Random(7)
    for _ in range(40):
        n1 = r.randrange(3, 2**64) | 1
        n2 = r.randrange(3, 2**64) | 1
        e = r.choice([2, 3, 17, 2**31 - 1])
        x1, x2 = r.randrange(n1), r.randrange(n2)
        fast = _fastpath.run(x1, x2, n1, n2, e, 300)
        slow = rng._slow_run(x1, x2, n1, n2, e, 300)
        assert fast == slow


def test_generator_chunks_are_seamless():
    cfg = RngConfig(2**61 - 1, 18446744073709551557, seed=99)
    whole = rng.generate(cfg, 50000).digits
    gen = PowerExponentGenerator(cfg)
    pieces = b"".join(gen.chunks(50000, chunk=7919))
    assert pieces == whole
    slow = PowerExponentGenerator(cfg, fast=False).bits(50000)
    assert slow == whole


def test_large_moduli_fall_back_to_python_integers():
    p1, p2 = 2**127 - 1, 2**89 - 1
    cfg = RngConfig(p1, p2, seed=3, exponent=3)
    bits = rng.generate(cfg, 200).digits
    assert list(bits) == [rng_closed_form(3, p1, p2, 3, 1, t) for t in range(200)]


def test_measure_period_basic():
    found = rng.measure_period(BASIC, 1000)
    assert found == (0, 4)
    bits = rng.generate(BASIC, 200).digits
    assert all(bits[t] == bits[t + 4] for t in range(196))


def test_measure_period_fixed_point():
    cfg = RngConfig(11, 13, seed=1)
    assert rng.measure_period(cfg, 10, check=False) == (0, 1)


def test_measure_period_not_found():
    cfg = RngConfig(2**61 - 1, 18446744073709551557, seed=5)
    assert rng.measure_period(cfg, 100) is None


def test_measure_period_with_preperiod():
    # ord(2) mod 31 is 5 (odd), but the squaring map on ord(3) = 30 has a tail
    cfg = RngConfig(31, 43, seed=3)
    pre, per = rng.measure_period(cfg, 10000)
    states = [rng.init(cfg)]
    for _ in range(pre + 2 * per + 2):
        states.append(rng.advance(states[-1], cfg))
    pairs = [(s.x1, s.x2) for s in states]
    assert pre > 0
    assert pairs[pre] == pairs[pre + per]
    assert len(set(pairs[pre : pre + per])) == per
    assert pairs[pre - 1] not in pairs[pre : pre + per]


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_measure_period_reproduces_stream(data):
    primes = odd_primes_below(50)
    p1 = data.draw(st.sampled_from(primes[1:]))
    p2 = data.draw(st.sampled_from([p for p in primes[1:] if p != p1]))
    seed = data.draw(st.integers(2, p1 * p2))
    e = data.draw(st.sampled_from([2, 3]))
    cfg = RngConfig(p1, p2, seed=seed, exponent=e)
    if rng.problems(cfg):
        return
    pre, per = rng.measure_period(cfg, 10**5)
    horizon = pre + 3 * per + 10
    bits = rng.generate(cfg, horizon).digits
    assert all(bits[t] == bits[t + per] for t in range(pre, horizon - per))


def test_period_never_exceeds_lcm_bound():
    primes = odd_primes_below(50)[1:]
    for p1 in primes:
        for p2 in primes:
            if p1 >= p2:
                continue
            for seed in range(2, p1 * p2, 7):
                cfg = RngConfig(p1, p2, seed=seed)
                if rng.problems(cfg):
                    continue
                _, per = rng.measure_period(cfg, 10**4)
                assert per <= lcm(p1 - 1, p2 - 1)


def test_config_text_round_trip():
    cfg = RngConfig(77, 437, seed=5, exponent=3, seed_power=2, modulus_kind="composite",
                    n1_factors=(7, 11), n2_factors=(19, 23))
    text = cfg.to_text()
    assert "n1_factors = 7,11" in text
    assert RngConfig.from_text(text) == cfg
    assert RngConfig.from_text("# c\nn1=11\nn2 = 13\nseed=3 # trailing\n") == BASIC


def test_config_text_errors():
    with pytest.raises(ConfigError):
        RngConfig.from_text("n1 = 11\nn2 = 13\nseed = 3\nbogus = 1\n")
    with pytest.raises(ConfigError):
        RngConfig.from_text("n1 = 11\nn2 = 13\n")
    with pytest.raises(ConfigError):
        RngConfig.from_text("n1 11\n")

"""Command-line front end.

Data goes to stdout and diagnostics to stderr. Exit status is 0 on success,
1 for usage errors and 2 for domain errors such as a composite where a
prime is required.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import BinaryIO, Optional, Sequence

from . import analysis, combine, dseq, rational, rng
from .errors import PrimeRngError
from .sequence import BitWriter, DigitSequence, format_digits, unpack_bits

CHUNK = 1 << 16


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="primerng", description="Prime-reciprocal sequences and the power-exponent generator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    formats = ("ascii-bits", "packed", "report")

    p = sub.add_parser("dseq", help="digits of 1/p in a base")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--count", type=_nonneg, help="digits to emit (default: one period)")
    p.add_argument("--start", type=_positive, default=1, help="first position, counted from 1")
    p.add_argument("--format", choices=formats, default="ascii-bits")

    p = sub.add_parser("period", help="period of 1/p in a base")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--base", type=int, default=2)

    p = sub.add_parser("rational", help="periodic pattern <-> reduced fraction")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pattern", help="one period of digits")
    src.add_argument("--fraction", help="a/N")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--count", type=_nonneg, help="digits to expand (default: one period)")
    p.add_argument("--factored", action="store_true", help="also print a / (factored N)")

    p = sub.add_parser("combine", help="mod-2 sum or splice of binary d-sequences")
    p.add_argument("--primes", type=int, nargs="+", required=True)
    p.add_argument("--mode", choices=("xor", "concatenate", "interleave"), default="xor")
    p.add_argument("--count", type=_nonneg, help="bits to emit (default: the lcm period bound)")
    p.add_argument("--measure-period", action="store_true")
    p.add_argument("--format", choices=formats, default="ascii-bits")

    p = sub.add_parser("rng", help="power-exponent generator bits")
    p.add_argument("--config", type=Path, help="flat key = value config file; flags override it")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--exponent", type=int)
    p.add_argument("--seed-power", type=int)
    p.add_argument("--modulus-kind", choices=("prime", "composite"))
    p.add_argument("--n1-factors", type=_int_list)
    p.add_argument("--n2-factors", type=_int_list)
    p.add_argument("--count", type=_nonneg, default=1024)
    p.add_argument("--measure-period", action="store_true")
    p.add_argument("--max-steps", type=_positive, default=10**6)
    p.add_argument("--format", choices=formats, default="ascii-bits")

    p = sub.add_parser("analyze", help="balance and autocorrelation report (JSON)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="bit stream file, '-' for stdin")
    src.add_argument("--prime", type=int, help="analyze one period of the binary d-sequence of p")
    p.add_argument("--input-format", choices=("ascii-bits", "packed"), default="ascii-bits")
    p.add_argument("--bits", type=_nonneg, help="number of bits to read from packed input")
    p.add_argument("--period", type=_positive)
    p.add_argument("--shifts", type=_int_list)

    p = sub.add_parser("attack", help="locate a window inside the d-sequence of p")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--window", help="observed bits, e.g. 0011")
    p.add_argument("--window-length", type=_positive, help="report whether every window of this length is unique")

    return parser


def _emit_stream(out: BinaryIO, chunks, fmt: str, base: int = 2, period: Optional[int] = None) -> None:
    if fmt == "report":
        if base != 2:
            raise UsageError("--format report needs base 2")
        bits = b"".join(chunks)
        report = analysis.analyze(DigitSequence(2, bits), period if period and period <= len(bits) else None)
        out.write(report.to_json().encode() + b"\n")
        return
    if base == 2:
        writer = BitWriter(out, fmt)
        for chunk in chunks:
            writer.write(chunk)
        writer.close()
        return
    if fmt != "ascii-bits":
        raise UsageError(f"--format {fmt} needs base 2")
    sep = b"" if base <= 10 else b" "
    first = True
    for chunk in chunks:
        if not len(chunk):
            continue
        if not first:
            out.write(sep)
        out.write(format_digits(chunk, base).encode())
        first = False
    out.write(b"\n")


def _chunked(total: int, make):
    done = 0
    while done < total:
        n = min(CHUNK, total - done)
        yield make(done, n)
        done += n


def _cmd_dseq(args, out):
    spec = dseq.DSeqSpec(args.prime, args.base)
    count = dseq.period(spec) if args.count is None else args.count

    def make(done, n):
        arr = dseq.digits_array(spec, n, args.start + done)
        return arr.tobytes() if spec.base <= 256 else arr.tolist()

    _emit_stream(out, _chunked(count, make), args.format, spec.base, dseq.period(spec))


def _cmd_period(args, out):
    spec = dseq.DSeqSpec(args.prime, args.base)
    flag = "max-length" if dseq.is_max_length(spec) else "not-max-length"
    out.write(f"{dseq.period(spec)} {flag}\n".encode())


def _cmd_rational(args, out):
    if args.pattern is not None:
        r = rational.sequence_to_rational(DigitSequence.from_string(args.pattern, args.base))
        lines = [str(r)]
        if args.factored:
            lines.append(r.factored_form())
    else:
        r = rational.RationalSeq.parse(args.fraction, args.base)
        count = args.count if args.count is not None else r.period
        if count is None:
            raise PrimeRngError("denominator too large to find the period; pass --count")
        lines = [str(rational.rational_to_sequence(r, count))]
        if args.factored:
            lines.append(r.factored_form())
    out.write(("\n".join(lines) + "\n").encode())


def _cmd_combine(args, out):
    components = [dseq.DSeqSpec(p, 2) for p in args.primes]
    if args.mode == "xor":
        spec = combine.CombinedSpec(tuple(components), "xor")
        bound = combine.period_bound(*args.primes)
        if args.measure_period:
            out.write(f"minimal_period={combine.minimal_period(spec)} bound={bound}\n".encode())
            return
        count = bound if args.count is None else args.count
        make = lambda done, n: combine.xor_stream(spec, n, start=1 + done).digits
        _emit_stream(out, _chunked(count, make), args.format)
        return
    if args.measure_period:
        raise UsageError("--measure-period applies to --mode xor")
    if len(components) < 2:
        raise PrimeRngError("splicing needs at least two primes")
    count = sum(dseq.period(c) for c in components) if args.count is None else args.count
    _emit_stream(out, [combine.splice(components, args.mode, count).digits], args.format)


_RNG_KEYS = ("n1", "n2", "seed", "exponent", "seed_power", "modulus_kind", "n1_factors", "n2_factors")


def _rng_config(args) -> rng.RngConfig:
    values = {}
    if args.config is not None:
        try:
            text = args.config.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}")
        values.update(rng.parse_key_values(text))
    for key in _RNG_KEYS:
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    if "n2_factors" in values or "n1_factors" in values:
        values.setdefault("modulus_kind", "composite")
    for key in ("n1", "n2", "seed"):
        if key not in values:
            raise UsageError(f"missing --{key.replace('_', '-')} (or config key {key})")
    return rng.RngConfig.from_mapping(values)


def _cmd_rng(args, out):
    config = _rng_config(args)
    if args.measure_period:
        found = rng.measure_period(config, args.max_steps)
        if found is None:
            out.write(f"not-found max_steps={args.max_steps}\n".encode())
        else:
            out.write(f"preperiod={found.preperiod} period={found.period}\n".encode())
        return
    gen = rng.PowerExponentGenerator(config)
    _emit_stream(out, gen.chunks(args.count), args.format)


def _read_bits(args) -> DigitSequence:
    if args.input == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            data = Path(args.input).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read input: {exc}")
    if args.input_format == "packed":
        return DigitSequence(2, unpack_bits(data, args.bits))
    text = data.decode("ascii", errors="replace").strip()
    if set(text) - {"0", "1"}:
        raise PrimeRngError("ascii-bits input may contain only '0' and '1'")
    return DigitSequence.from_string(text, 2)


def _cmd_analyze(args, out):
    if args.prime is not None:
        bits = dseq.digits_one_period(dseq.DSeqSpec(args.prime, 2))
    else:
        bits = _read_bits(args)
    report = analysis.analyze(bits, args.period, args.shifts)
    out.write(report.to_json().encode() + b"\n")


def _cmd_attack(args, out):
    if args.window is None and args.window_length is None:
        raise UsageError("attack needs --window or --window-length")
    if args.window is not None:
        if not args.window or set(args.window) - {"0", "1"}:
            raise UsageError("--window must be a non-empty string of 0s and 1s")
        hits = analysis.recover_position(args.prime, DigitSequence.from_string(args.window, 2))
        out.write((" ".join(map(str, hits)) + "\n").encode())
    if args.window_length is not None:
        unique = analysis.window_uniqueness(args.prime, args.window_length)
        out.write(f"{'unique' if unique else 'not-unique'}\n".encode())


COMMANDS = {
    "dseq": _cmd_dseq,
    "period": _cmd_period,
    "rational": _cmd_rational,
    "combine": _cmd_combine,
    "rng": _cmd_rng,
    "analyze": _cmd_analyze,
    "attack": _cmd_attack,
}


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[BinaryIO] = None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout.buffer
    err = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"primerng: usage error: {exc}", file=err)
        return 1
    except ValueError as exc:
        print(f"primerng: error: {exc}", file=err)
        return 2
    except BrokenPipeError:
        return 0
    out.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())

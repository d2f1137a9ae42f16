"""Prime-reciprocal (d-) sequences, their rational form, XOR combinations and
the recursive power-exponent bit generator."""

from .analysis import AnalysisReport, autocorrelation, balance_stats, recover_position, window_uniqueness
from .combine import CombinedSpec, minimal_period, period_bound, splice, xor_stream
from .dseq import DSeqSpec, bit_at, digits_one_period, expansion_ratio, half_complement_holds, is_max_length, period
from .errors import PrimeRngError
from .numtheory import (
    Factorization,
    factorize,
    is_blum_prime,
    is_primitive_root,
    is_probable_prime,
    mod_exp,
    multiplicative_order,
)
from .rational import RationalSeq, rational_to_sequence, sequence_to_rational
from .rng import PowerExponentGenerator, RngConfig, RngState, generate, measure_period
from .sequence import DigitSequence

__version__ = "0.1.0"

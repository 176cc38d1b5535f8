"""Square-free sequences on arithmetic progressions via erase-and-retry."""

from .checker import CheckReport, find_canonical_repetition, is_nonrepetitive, oracle_all_repetitions
from .core import (
    Alphabet,
    ConfigurationError,
    DifferenceSet,
    InputError,
    ListAssignment,
    NonrepError,
    PartialSequence,
    Repetition,
    ap_positions,
    default_list_size,
)
from .generator import (
    BudgetExceeded,
    Choice,
    Erasure,
    ExecutionTrace,
    GeneratorConfig,
    TraceCorruption,
    available_symbols,
    generate,
    replay,
)
from .logcodec import DecodeError, Log, count_logs_upper_bound, decode, encode

__version__ = "0.1.0"

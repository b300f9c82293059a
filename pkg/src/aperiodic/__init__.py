"""Rudin-Shapiro type sign sequences, their substitution rules and spectral statistics.

Generalised Rudin-Shapiro constructions (signed recurrences and Fourier-matrix
recurrences), their substitution rules, and numerical checks of their
exponential-sum bounds.
"""

__version__ = "0.1.0"

from .alphabet import (
    CoefficientSequence,
    Letter,
    Word,
    bar_shift,
    factor_map,
    format_word,
    parse_word,
    subword_set,
)
from .recurrence import (
    Binary,
    ConstructionSpec,
    Fourier,
    SignProgram,
    coefficients,
    evolve,
    partial_prefix,
)
from .spectral import (
    UnitCircleGrid,
    analyze,
    autocorrelation,
    balance_deficit,
    exp_sum,
    periodogram,
    root_n_constant,
    sup_profile,
)
from .substitution import (
    apply,
    compose,
    eigenvalues,
    fixed_point_prefix,
    legal_words,
    letter_at,
    make_rule,
    rule_from_signs,
    substitution_matrix,
)
from .verify import run_suite

"""Exact computation of Ewens-Pitman partition statistics.

Probabilities, moments and conditional moments of the two-parameter
Ewens-Pitman partition structure, each available through a generating
function (exponential Riordan array) pipeline and a brute-force enumeration,
in exact rational arithmetic.
"""
from .errors import (
    AlphaZero,
    DegenerateParams,
    EwensPitmanError,
    IdentityViolation,
    NonzeroConstantTerm,
    NotCovering,
    NotInvertible,
    OracleBoundExceeded,
    OrderExceeded,
    OrderTooLarge,
    ParamRange,
)
from .ewens_pitman import (
    ConditionalQuery,
    EPParams,
    bruteforce_expectation,
    conditional_moment,
    joint_moment_sizes,
    marginal_length,
    moment_length,
    normalization,
    phi,
    pmf,
)
from .partitions import Partition, PascalVertex, enumerate_level, kingman_dim
from .riordan import ExpRiordan, GStirlingParams, ftra, gstirling, laguerre_row
from .series import ExpSeries, ThetaPoly
from .symfun import altrep_f_lambda, closed_f_lambda, newton_f_lambda

__version__ = "0.1.0"

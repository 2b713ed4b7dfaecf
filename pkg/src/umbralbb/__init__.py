"""Exact umbral computation of Bernoulli-Barnes numbers and polynomials."""
from .algebra import MultiPoly, TruncatedSeries, binomial, factorial, multinomial
from .barnes import (
    BarnesContext,
    bb_number_multinomial,
    bb_number_series,
    bb_number_umbral,
    bb_polynomial,
    bb_series,
    dual_transform,
    norlund_polynomial,
    p_sequence,
)
from .identities import IdentityReport, PalindromicWeights
from .suite import SuiteRanges, run_suite
from .umbral import (
    DEFAULT_MOMENTS,
    MomentProvider,
    UmbralPoly,
    UmbralSymbol,
    bernoulli_number,
    evaluate,
    expand_linear_power,
    uniform_moment,
)

__version__ = "0.1.0"

__all__ = [
    "BarnesContext", "DEFAULT_MOMENTS", "IdentityReport", "MomentProvider", "MultiPoly",
    "PalindromicWeights", "SuiteRanges", "TruncatedSeries", "UmbralPoly", "UmbralSymbol",
    "bb_number_multinomial", "bb_number_series", "bb_number_umbral", "bb_polynomial",
    "bb_series", "bernoulli_number", "binomial", "dual_transform", "evaluate",
    "expand_linear_power", "factorial", "multinomial", "norlund_polynomial", "p_sequence",
    "run_suite", "uniform_moment",
]

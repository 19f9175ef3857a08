"""p-adic approximations and divisibility of binomial coefficients."""

from .arith import (
    INFINITY,
    PAdicResidue,
    ResidueContext,
    invert,
    padic_pow,
    rational_valuation,
    valuation,
)
from .binomial import (
    binomial_exact,
    modified_binomial_exact,
    modified_binomial_mod,
    modified_factorial_exact,
    modified_factorial_mod,
)

__version__ = "0.1.0"

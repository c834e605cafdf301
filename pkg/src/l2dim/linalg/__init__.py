"""Exact linear algebra over Z, Q and rational Laurent polynomial rings."""

from .chains import ChainComplexError, FreeChainComplex, chain_homology_ranks
from .laurent import LaurentPoly
from .matrix import RingMatrix
from .rank import determinant, evaluation_rank, fraction_field_rank, rational_kernel
from .rings import (
    INTEGERS,
    LAURENT_UNI,
    RATIONALS,
    NotAPIDError,
    RingTag,
    laurent_multi,
)
from .snf import SNFResult, hermite_form, smith_normal_form

__all__ = [
    "ChainComplexError",
    "FreeChainComplex",
    "INTEGERS",
    "LAURENT_UNI",
    "LaurentPoly",
    "NotAPIDError",
    "RATIONALS",
    "RingMatrix",
    "RingTag",
    "SNFResult",
    "chain_homology_ranks",
    "determinant",
    "evaluation_rank",
    "fraction_field_rank",
    "hermite_form",
    "laurent_multi",
    "rational_kernel",
    "smith_normal_form",
]

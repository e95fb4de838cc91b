"""Efficient primitive multiple-recursive matrix method (MRMM) generators over GF(2)."""

from .algebra import (
    FactorSet,
    factor_2d_minus_1,
    is_irreducible,
    is_primitive,
    poly_gcd,
    poly_mul_mod,
    poly_pow_mod,
    random_monic_poly,
)
from .analysis import berlekamp_massey, coordinate_stream, measure_period, verify_spec
from .construct import (
    HornerForm,
    MrmmSpec,
    extract_spec,
    find_primitive_mrmm,
    horner_decompose,
    horner_matrix,
)
from .engine import MrmmState, companion_matrix, generate, step_fast, step_naive
from .langford import LangfordArrangement, find_langford, positions, tweaked_stream, u_stream

__version__ = "0.1.0"

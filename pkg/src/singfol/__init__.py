"""Exact analysis of singular holomorphic foliations given by polynomial presentations."""

from .fields import VectorField, kernel_generators, lie_bracket, vf_apply, vf_eval
from .foliation import (
    Foliation,
    StratumReport,
    annihilation_check,
    generic_rank,
    involutivity_check,
    is_singular,
    singular_equations,
    stratum_index,
    tangent_fiber,
)
from .structure import (
    CoordinateRoles,
    DecompositionReport,
    FoliationProfile,
    build_decomposition,
    flow_constant_field,
    malgrange_check,
    product_extend,
    slice_extend,
    split_check,
    tangency_check,
)

__version__ = "0.1.0"

"""Information sets for first- and second-order Generalized Reed-Muller codes,
computed from (q, m, order) and certified by exact rank over GF(q)."""

from .code import build_generator_matrix, code_dimension, grm_generator, is_information_set, phi_check
from .cosets import CrtIso, DefiningSetZ, cyclotomic_coset, grm_defining_set, q_orbit, q_weight
from .field import ExtField, FieldSpec, GF, expand_over_base, find_primitive
from .infoset import (
    find_decompositions,
    gamma_first_order,
    gamma_general,
    gamma_second_order,
    to_information_sets,
)
from .pipeline import run_instance

__version__ = "0.1.0"

__all__ = [
    "CrtIso",
    "DefiningSetZ",
    "ExtField",
    "FieldSpec",
    "GF",
    "build_generator_matrix",
    "code_dimension",
    "cyclotomic_coset",
    "expand_over_base",
    "find_decompositions",
    "find_primitive",
    "gamma_first_order",
    "gamma_general",
    "gamma_second_order",
    "grm_defining_set",
    "grm_generator",
    "is_information_set",
    "phi_check",
    "q_orbit",
    "q_weight",
    "run_instance",
    "to_information_sets",
]

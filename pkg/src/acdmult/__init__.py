"""Exact deciders for block-rigid CRQ-groups of ring type and their multiplication groups."""

from .arith import (
    crt_solve,
    euler_phi,
    is_p_fraction,
    is_p_number,
    mod_inverse,
    p_adic_valuation,
    primes_in_progression,
    reduce_rational_mod,
)
from .deciders import iso, near_iso, realizable, realize, self_mult_iso
from .generators import GenConfig, example_4_9, random_descriptor
from .group_model import (
    GroupDescriptor,
    GroupElement,
    IdempotentType,
    TypeComponent,
    canonicalize,
    condition_m,
    group_contains,
    main_decomposition,
    scalar_action,
    structure_queries,
    validate,
)
from .mult_structure import MultElement, in_KG, in_KG_star, mult_contains, mult_of, ring_iso
from .residue_lattice import (
    ResidueTuple,
    UnitSubgroup,
    gamma_subgroup,
    in_gamma_vinf,
    s_tuple,
    subgroup_closure,
    vinf_subgroup,
)
from .verdict import Verdict

__all__ = [
    "canonicalize",
    "condition_m",
    "crt_solve",
    "euler_phi",
    "example_4_9",
    "gamma_subgroup",
    "GenConfig",
    "group_contains",
    "GroupDescriptor",
    "GroupElement",
    "IdempotentType",
    "in_gamma_vinf",
    "in_KG",
    "in_KG_star",
    "is_p_fraction",
    "is_p_number",
    "iso",
    "main_decomposition",
    "mod_inverse",
    "mult_contains",
    "mult_of",
    "MultElement",
    "near_iso",
    "p_adic_valuation",
    "primes_in_progression",
    "random_descriptor",
    "realizable",
    "realize",
    "reduce_rational_mod",
    "ResidueTuple",
    "ring_iso",
    "s_tuple",
    "scalar_action",
    "self_mult_iso",
    "structure_queries",
    "subgroup_closure",
    "TypeComponent",
    "UnitSubgroup",
    "validate",
    "Verdict",
    "vinf_subgroup",
]

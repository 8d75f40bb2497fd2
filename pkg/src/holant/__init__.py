"""Exact tools for Holant problems over cyclotomic fields.

Scalars live in cyclotomic fields and arithmetic is exact throughout.
The main entry points are re-exported here; submodules hold the rest.
"""

from .errors import HolantError
from .field import I, ONE, ZERO, Scalar, field_order, parse_scalar, set_field, sqrt_if_simple, zeta
from .group import (
    CaseLabel,
    GroupReport,
    ProjMat,
    canonicalize_K4,
    canonicalize_order2,
    classify_group,
    enumerate_binaries,
    group_closure,
    pipeline_classify,
    proj_order,
)
from .reduction import K, Basis2, jordan_classify, transform_func, vandermonde_solve
from .structure import (
    arity_reduce,
    compute_c_and_normalize,
    decompose_arity4,
    membership_in_lambda_genB,
    pauli_expand,
    ratio_lemma_check,
    reality_check,
    rewiring_step,
    support_class,
)
from .tensor import Func, Gadget, GadgetBuilder, eq, gadget_function, holant_value, neq2

__version__ = "0.1.0"

__all__ = [
    "HolantError",
    "I",
    "ONE",
    "ZERO",
    "Scalar",
    "field_order",
    "parse_scalar",
    "set_field",
    "sqrt_if_simple",
    "zeta",
    "CaseLabel",
    "GroupReport",
    "ProjMat",
    "canonicalize_K4",
    "canonicalize_order2",
    "classify_group",
    "enumerate_binaries",
    "group_closure",
    "pipeline_classify",
    "proj_order",
    "K",
    "Basis2",
    "jordan_classify",
    "transform_func",
    "vandermonde_solve",
    "arity_reduce",
    "compute_c_and_normalize",
    "decompose_arity4",
    "membership_in_lambda_genB",
    "pauli_expand",
    "ratio_lemma_check",
    "reality_check",
    "rewiring_step",
    "support_class",
    "Func",
    "Gadget",
    "GadgetBuilder",
    "eq",
    "gadget_function",
    "holant_value",
    "neq2",
]

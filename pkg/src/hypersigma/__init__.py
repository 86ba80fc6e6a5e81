"""Exact computer algebra for hyperelliptic sigma functions and their heat equations."""
from .algebra import (
    ANY_WEIGHT,
    NON_HOMOGENEOUS,
    ContextMismatch,
    GenusContext,
    InconsistencyError,
    Kind,
    Poly,
    Var,
)
from .diffop import DiffOp, commutator, op_equal

__all__ = [
    "ANY_WEIGHT",
    "NON_HOMOGENEOUS",
    "ContextMismatch",
    "DiffOp",
    "GenusContext",
    "InconsistencyError",
    "Kind",
    "Poly",
    "Var",
    "commutator",
    "op_equal",
]

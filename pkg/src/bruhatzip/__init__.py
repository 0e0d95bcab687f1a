"""Bruhat and zip stratifications for classical Weyl groups."""

from .coxeter import (
    CartanType,
    CoxeterSystem,
    DegreeMismatchError,
    DomainError,
    GroupTypeError,
    make_system,
)
from .extended import (
    DiagramAut,
    ExtElt,
    GroupProfile,
    OmegaGroup,
    StrataPoset,
    double_quotient,
    galois_quotient,
    gerbe_dim,
    stack_dim,
)
from .strata import CapacityError, ZipDatum, beta0, beta0_fiber, make_zip_datum, xi_poset

__all__ = [
    "CartanType",
    "CoxeterSystem",
    "DegreeMismatchError",
    "DomainError",
    "GroupTypeError",
    "make_system",
    "DiagramAut",
    "ExtElt",
    "GroupProfile",
    "OmegaGroup",
    "StrataPoset",
    "double_quotient",
    "galois_quotient",
    "gerbe_dim",
    "stack_dim",
    "CapacityError",
    "ZipDatum",
    "beta0",
    "beta0_fiber",
    "make_zip_datum",
    "xi_poset",
]

"""Exact construction and analysis of flat affine symplectic Lie algebras."""

from .algebra import Algebra, FaslaTriple, SymplecticForm, basis_vector, change_basis
from .catalog import dim2_family, even_dim_family, paper_suite
from .cohomology import Bimodule, Cochain, cohomology_dims, nijenhuis_differential
from .cotangent import (
    CotangentData,
    detect_lagrangian_ideal,
    hess_product,
    twisted_cotangent,
    validate_cotangent,
)
from .double_extension import (
    ExtensionParams,
    decompose_to_zero,
    double_extend,
    reduce_by_ideal,
    validate_extension,
)
from .dynamics import (
    central_translations,
    chu_connection,
    completeness,
    compose_affine,
    etale_representation,
    symplectic_check,
)
from .verify import VerificationReport, check_fasla, is_fasla

__all__ = [
    "Algebra",
    "FaslaTriple",
    "SymplecticForm",
    "basis_vector",
    "change_basis",
    "dim2_family",
    "even_dim_family",
    "paper_suite",
    "Bimodule",
    "Cochain",
    "cohomology_dims",
    "nijenhuis_differential",
    "CotangentData",
    "detect_lagrangian_ideal",
    "hess_product",
    "twisted_cotangent",
    "validate_cotangent",
    "ExtensionParams",
    "decompose_to_zero",
    "double_extend",
    "reduce_by_ideal",
    "validate_extension",
    "central_translations",
    "chu_connection",
    "completeness",
    "compose_affine",
    "etale_representation",
    "symplectic_check",
    "VerificationReport",
    "check_fasla",
    "is_fasla",
]

"""Desk-scale quantum-group representation oracle: explicit based modules,
matrix coefficients, generalized minors, and identity verification."""

from .reps import (
    ModuleRep,
    NotMinuscule,
    RelationError,
    build_adjoint_module,
    build_g2_module,
    build_minuscule_module,
    build_sl2_irrep,
    divided_power_apply,
    dual_module,
    extremal_vector,
    tensor_module,
)
from .mcoeff import CoeffExpr, MatrixCoeff, brute_force_words, coeff_equal, expr_equal, minor, product_coeff
from .g2verify import verify_g2_identities
from .chevalley import ChevalleyAlgebra, chevalley_checks
from .psi import OutOfDomain, pair_set, psi_decompose, verify_psi_pair

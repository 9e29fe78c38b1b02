"""Exact computations with omni-Lie algebras, D-structures, C-algebras and
the Courant bracket on polynomial sections."""

from .exactla import Subspace, span, rref, solve_linear
from .omni import (
    OmniElement,
    OmniSubspace,
    cartan_form,
    jacobiator,
    omni_bracket,
    omni_pairing,
)
from .liealg import BilinearOp, catalog, graph_subspace, is_lie, is_skew
from .dstruct import classify, maximality_check, recover_bilinear, search_d_structures
from .calgebra import build_omni_instance, check_axioms, validate_instance
from .courant import CourantSection, Poly, courant_bracket, courant_pairing, dirac_check

__all__ = [
    "Subspace", "span", "rref", "solve_linear",
    "OmniElement", "OmniSubspace", "cartan_form", "jacobiator", "omni_bracket", "omni_pairing",
    "BilinearOp", "catalog", "graph_subspace", "is_lie", "is_skew",
    "classify", "maximality_check", "recover_bilinear", "search_d_structures",
    "build_omni_instance", "check_axioms", "validate_instance",
    "CourantSection", "Poly", "courant_bracket", "courant_pairing", "dirac_check",
]

__version__ = "0.1.0"

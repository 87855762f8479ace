"""Nilsolitons, their abelian derivation families, and solvable extensions."""

from .algebra import (
    BracketNotationError,
    MetricLieAlgebra,
    NotNilpotentError,
    algebra_from_json,
    algebra_to_json,
    jacobi_defect,
    nilpotency_step,
    parse_bracket_notation,
)
from .catalog import get_entry, load_catalog
from .curvature import curvature_report, ricci_fast, ricci_oracle, sectional_curvature
from .derivations import derivation_report, derivation_space, skew_derivations, symmetric_derivations
from .domains import domain_membership
from .moduli import extend, extend_entry, moduli_slice
from .soliton import EigenvalueType, NotNilsolitonError, eigenvalue_type, nilsoliton_certificate
from .weyl import canonical_form, entry_action, maximal_abelian, weyl_group

__version__ = "0.1.0"

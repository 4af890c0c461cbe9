"""Exact grid-homology engine for annular links and braid closures."""

from .annular_invariant import PLFunction, pl_function, tau, tmod_cross_check, value_at
from .braids import BraidWord, parse_word
from .grid_core import GridDiagram, GridState, from_braid, validate
from .transverse_refinement import eta, legendrian_grading_audit, theta_for_braid, theta_nonzero

__all__ = [
    "BraidWord", "GridDiagram", "GridState", "PLFunction", "eta", "from_braid",
    "legendrian_grading_audit", "parse_word", "pl_function", "tau", "theta_for_braid",
    "theta_nonzero", "tmod_cross_check", "validate", "value_at",
]

"""Derived equivalence classification of gentle algebras via surface models."""
from .curves import CurvePath, intersection_number, parse_curve, winding
from .decision import (
    InvariantRecord,
    NotGentleError,
    Verdict,
    ag_invariant,
    compare_records,
    compute_invariants,
    derived_equivalent,
    partition,
)
from .homology import arf_invariant, fundamental_cycles, genus_one_gcd, quadratic_form
from .presentation import GentlePresentation, PresentationError, parse_presentation, validate_gentle
from .surface import (
    DissectedSurface,
    algebra_of_dissection,
    build_dissected_surface,
    compute_shape,
    parse_dissection,
)
from .surface_cut import CutTriangulation, cut_algebra, cut_degree, cut_equivalent, cut_invariants, parse_triangulation
from .tilting import check_dissection, silting_verdict, synthesize_grading

__all__ = [
    "CurvePath", "CutTriangulation", "DissectedSurface", "GentlePresentation", "InvariantRecord",
    "NotGentleError", "PresentationError", "Verdict", "ag_invariant", "algebra_of_dissection",
    "arf_invariant", "build_dissected_surface", "check_dissection", "compare_records",
    "compute_invariants", "compute_shape", "cut_algebra", "cut_degree", "cut_equivalent",
    "cut_invariants", "derived_equivalent", "fundamental_cycles", "genus_one_gcd",
    "intersection_number", "parse_curve", "parse_dissection", "parse_presentation",
    "parse_triangulation", "partition", "quadratic_form", "silting_verdict",
    "synthesize_grading", "validate_gentle", "winding",
]

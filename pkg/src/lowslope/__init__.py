"""Positive Dehn-twist factorizations over a genus-g curve system, their
invariant ledgers, and doubling / lantern constructions of low-slope
Lefschetz fibrations."""

from .expr import Compose, Declared, IDENTITY, Image, Inverse, Named, Power, Twist
from .ledger import InvariantLedger, SlopeReport, h1_of_fiber_quotient, sanity_bounds, slope_report
from .pipelines import (
    closed_form_invariants,
    doubling_sequence,
    doubling_step,
    hyperelliptic_base,
    lantern_walk,
    simply_connected_member,
    slope_limit,
)
from .relators import RelatorTemplate, relator_library
from .snf import smith_normal_form
from .surface import (
    DeclaredDiffeo,
    check_declared_consistency,
    get_surface,
    homology_of_curve,
    matrix_of_map,
    normalize_curve,
)
from .words import (
    Factorization,
    fiber_sum,
    gather_right,
    global_conjugate,
    hurwitz_move,
    substitute,
    verify_relator_homology,
)

__all__ = [
    "Compose", "Declared", "IDENTITY", "Image", "Inverse", "Named", "Power", "Twist",
    "InvariantLedger", "SlopeReport", "h1_of_fiber_quotient", "sanity_bounds", "slope_report",
    "closed_form_invariants", "doubling_sequence", "doubling_step", "hyperelliptic_base",
    "lantern_walk", "simply_connected_member", "slope_limit",
    "RelatorTemplate", "relator_library", "smith_normal_form",
    "DeclaredDiffeo", "check_declared_consistency", "get_surface", "homology_of_curve",
    "matrix_of_map", "normalize_curve",
    "Factorization", "fiber_sum", "gather_right", "global_conjugate", "hurwitz_move",
    "substitute", "verify_relator_homology",
]

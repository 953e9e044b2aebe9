"""Admissible curves in the pseudo-Galilean 4-space G^1_4.

Jet-based Frenet apparatus, special-curve classification, identity audits
and a Frenet-system integrator, with a small expression language for
curves.
"""

__version__ = "0.1.0"

from .algebra import CausalClass, PGPoint, PGVector, classify_vector, cross3, det4, dot, norm, point_distance
from .dsl import CurveDef, load_curve, parse_curve, parse_expr, to_text
from .frenet import (
    AdmissibleCurveJets,
    FrenetApparatus,
    SignTriple,
    apparatus_at,
    decompose_position,
    fourth_order_residual,
    frenet_apparatus,
    frenet_matrix,
    reparametrize_by_arclength,
)
from .integrator import CurvatureSpec, FramePath, canonical_initial_frame, integrate_frenet, sample_to_curvedef
from .jets import Jet

__all__ = [
    "AdmissibleCurveJets", "CausalClass", "CurvatureSpec", "CurveDef", "FramePath",
    "FrenetApparatus", "Jet", "PGPoint", "PGVector", "SignTriple", "apparatus_at",
    "canonical_initial_frame", "classify_vector", "cross3", "decompose_position", "det4",
    "dot", "fourth_order_residual", "frenet_apparatus", "frenet_matrix", "integrate_frenet",
    "load_curve", "norm", "parse_curve", "parse_expr", "point_distance",
    "reparametrize_by_arclength", "sample_to_curvedef", "to_text",
]

"""Constructive local analysis over Z_p and F_p[[t]].

Hensel lifting for square polynomial systems, scaled inverse and implicit
function evaluation at points where the Jacobian determinant is not a unit,
the Jacobian smoothness criterion, and a sampler producing points of a
smooth variety arbitrarily close to a given one.
"""

from .density import DensityReport, DensityRequest, density_sample
from .errors import HenselError
from .fppoly import FpPoly
from .hensel import HenselProblem, LiftResult, check_isometry, hensel_lift, solve_for_target
from .local_maps import ImplicitSystem, LocalChart, implicit_eval, inverse_eval, make_chart
from .mvpoly import MultiPoly, PolyMap, adjugate, build_h, extract_g, jacobian_det, jacobian_matrix
from .ring import RingContext, Valuation, ValuedElement
from .smoothness import SmoothnessReport, VarietySpec, Verdict, select_pivot, smooth_check
from .systemfile import SystemSpec, parse_system, print_system

__all__ = [
    "DensityReport", "DensityRequest", "density_sample", "HenselError", "FpPoly",
    "HenselProblem", "LiftResult", "check_isometry", "hensel_lift", "solve_for_target",
    "ImplicitSystem", "LocalChart", "implicit_eval", "inverse_eval", "make_chart",
    "MultiPoly", "PolyMap", "adjugate", "build_h", "extract_g", "jacobian_det",
    "jacobian_matrix", "RingContext", "Valuation", "ValuedElement", "SmoothnessReport",
    "VarietySpec", "Verdict", "select_pivot", "smooth_check", "SystemSpec",
    "parse_system", "print_system",
]

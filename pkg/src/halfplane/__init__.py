"""Weighted Hilbert spaces of Laplace transforms on the right half-plane.

Exact exponential-polynomial arithmetic on the time side, adaptive
quadrature on the half-plane side, and certification routines for the
isometry, reproducing kernels, Banach-algebra conditions and multipliers.
"""
__version__ = "0.1.0"

from .errors import (ConfigError, Divergent, DivergentKernel, DomainViolation, EmptyGrid,
                     HalfplaneError, InvalidSpec, NonFinite, NonPositiveArgument, NotInSpace,
                     NotMultiplier, ToleranceNotMet, UnboundedDerivative, UnboundedDetected)
from .exppoly import AnalyticFn, ExpPoly, Term, WeightExpr, WTerm, convolve, laplace, multiply
from .measure import Atom, MeasureSpec, Power, delta2_check
from .quad import QuadConfig, QuadResult
from .report import CheckReport
from .weight import SpaceSpec, derive_weights, preset, total_weight
from .spaces import a2m_norm_numeric, inner_product, isometry_check, l2w_norm, resolvent_norm
from .kernel import kernel_eval, kernel_matrix, kernel_norm_sq, kernel_sup, reproducing_check
from .algebra import (auxiliary_algebra_norm, banach_checks, measure_domination,
                      necessary_condition, submultiplicativity_trial, sufficient_convolution,
                      truncated_bound)
from .multiplier import (CarlesonMeasureSpec, carleson_constant_estimate, hinf_norm,
                         kernel_eigen_check, multiplier_lower_bound,
                         quasi_carleson_exact, quasi_carleson_integral)

__all__ = [
    "ConfigError", "Divergent", "DivergentKernel", "DomainViolation", "EmptyGrid", "HalfplaneError",
    "InvalidSpec", "NonFinite", "NonPositiveArgument", "NotInSpace", "NotMultiplier",
    "ToleranceNotMet", "UnboundedDerivative", "UnboundedDetected",
    "AnalyticFn", "ExpPoly", "Term", "WeightExpr", "WTerm", "convolve", "laplace", "multiply",
    "Atom", "MeasureSpec", "Power", "delta2_check", "QuadConfig", "QuadResult", "CheckReport",
    "SpaceSpec", "derive_weights", "preset", "total_weight",
    "a2m_norm_numeric", "inner_product", "isometry_check", "l2w_norm", "resolvent_norm",
    "kernel_eval", "kernel_matrix", "kernel_norm_sq", "kernel_sup", "reproducing_check",
    "auxiliary_algebra_norm", "banach_checks", "measure_domination", "necessary_condition",
    "submultiplicativity_trial", "sufficient_convolution", "truncated_bound",
    "CarlesonMeasureSpec", "carleson_constant_estimate", "hinf_norm", "kernel_eigen_check",
    "multiplier_lower_bound", "quasi_carleson_exact", "quasi_carleson_integral",
]

"""Dunkl operators, kappa-spherical harmonics and the fundamentality test on the unit sphere."""

from .dunkl import DunklContext
from .fundamentality import FundamentalityReport, check_fundamentality, lambda_kappa, summability_limits
from .functions import GFunction, parse_g, polynomial
from .gegenbauer import CesaroParams, GegenbauerSeries, cesaro_mean, expand
from .harmonics import harmonic_kernel, kernel_identity_residual, orthonormal_basis
from .intertwine import apply_V, build_table, check_intertwining, truncated_V
from .poly import MPoly, parse_poly, to_text
from .quadrature import SphereRule, build_rule, integrate
from .roots import RootSystemSpec, build_standard, dihedral, make_spec, validate, z2

__version__ = "0.1.0"

__all__ = [
    "CesaroParams",
    "DunklContext",
    "FundamentalityReport",
    "GFunction",
    "GegenbauerSeries",
    "MPoly",
    "RootSystemSpec",
    "SphereRule",
    "apply_V",
    "build_rule",
    "build_standard",
    "build_table",
    "cesaro_mean",
    "check_fundamentality",
    "check_intertwining",
    "dihedral",
    "expand",
    "harmonic_kernel",
    "integrate",
    "kernel_identity_residual",
    "lambda_kappa",
    "make_spec",
    "orthonormal_basis",
    "parse_g",
    "parse_poly",
    "polynomial",
    "summability_limits",
    "to_text",
    "truncated_V",
    "validate",
    "z2",
]

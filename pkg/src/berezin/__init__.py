"""Berezin transforms and Berezin ranges on weighted Bergman spaces of the disk.

Core numerics live in plain functions (:mod:`berezin.core`,
:mod:`berezin.quadrature`, :mod:`berezin.toeplitz`,
:mod:`berezin.composition`, :mod:`berezin.ranges`); scikit-learn style
transformers wrapping them are in :mod:`berezin.estimators`.
"""

__version__ = "0.1.0"

from .composition import (PolarParts, WeylOperator, blaschke_berezin_parts, comp_berezin,
                          conjugate_partner, weyl_apply, weyl_berezin, weyl_berezin_number,
                          weyl_isometry_residual)
from .core import (SpaceParams, basis_coeff, basis_coeffs, kernel_eval, kernel_norm_sq,
                   monomial_inner, normalized_kernel_eval, principal_pow)
from .exceptions import BerezinError, DomainError, NumericError, ResolutionError
from .quadrature import (DiskRule, RadialRule, adapted_rule, disk_rule, gauss_jacobi_rule,
                         integrate, split_radial_rule)
from .ranges import (ConvexityReport, GridSpec, RangeSample, boundary_limit_probe, collinearity,
                     convex_hull, convexity_defect, min_modulus, polar_grid, sample_range)
from .symbols import (Automorphism, SymbolExpr, apply_automorphism, blaschke_fixed_point,
                      covariant_mobius, eval_symbol, is_harmonic, laplacian)
from .toeplitz import (TruncatedOperator, berezin_from_matrix, berezin_modsq_series,
                       berezin_toeplitz, berezin_toeplitz_covariant, berezin_toeplitz_quad,
                       numerical_range_boundary, required_dimension, toeplitz_matrix)

__all__ = [
    "__version__",
    "Automorphism", "BerezinError", "ConvexityReport", "DiskRule", "DomainError", "GridSpec",
    "NumericError", "PolarParts", "RadialRule", "RangeSample", "ResolutionError", "SpaceParams",
    "SymbolExpr", "TruncatedOperator", "WeylOperator",
    "adapted_rule", "apply_automorphism", "basis_coeff", "basis_coeffs", "berezin_from_matrix",
    "berezin_modsq_series", "berezin_toeplitz", "berezin_toeplitz_covariant",
    "berezin_toeplitz_quad", "blaschke_berezin_parts", "blaschke_fixed_point",
    "boundary_limit_probe", "collinearity", "comp_berezin", "conjugate_partner", "convex_hull",
    "convexity_defect", "covariant_mobius", "disk_rule", "eval_symbol", "gauss_jacobi_rule",
    "integrate", "is_harmonic", "kernel_eval", "kernel_norm_sq", "laplacian", "min_modulus",
    "monomial_inner", "normalized_kernel_eval", "numerical_range_boundary", "polar_grid",
    "principal_pow", "required_dimension", "sample_range", "split_radial_rule",
    "toeplitz_matrix", "weyl_apply", "weyl_berezin", "weyl_berezin_number",
    "weyl_isometry_residual",
]

"""Exact root bounds for b-functions of A-hypergeometric systems."""

from .bfun import (
    CorollaryReport,
    RootBound,
    convert_convention,
    corollary_check,
    fourier_bound,
    gkz_bound,
    point_bound,
    validate_matrix,
)
from .errors import GenericityError, SearchBoundExceeded, ValidationError
from .groebner import toric_ideal
from .linform import ParamLinForm
from .polyhedra import cone_facets, is_normal
from .strata import fourier_strata, gkz_strata, strata_box_check

__version__ = "0.1.0"

__all__ = [
    "CorollaryReport",
    "GenericityError",
    "ParamLinForm",
    "RootBound",
    "SearchBoundExceeded",
    "ValidationError",
    "cone_facets",
    "convert_convention",
    "corollary_check",
    "fourier_bound",
    "fourier_strata",
    "gkz_bound",
    "gkz_strata",
    "is_normal",
    "point_bound",
    "strata_box_check",
    "toric_ideal",
    "validate_matrix",
]

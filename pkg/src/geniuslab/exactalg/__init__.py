"""Exact scalar, polynomial, series and interpolation kernel."""

from .interp import (
    InterpolationError,
    RationalFn,
    fit_ratfn,
    interpolate_poly,
    nullspace,
)
from .poly import ExponentError, MultiPoly, Ring, RingMismatch, poly_arith, poly_coeff_extract
from .rational import Q, Rational, fmt, to_fraction
from .series import (
    SeriesError,
    TruncSeries,
    coeff_extract,
    from_poly,
    series_exp,
    series_log,
    series_mul,
    series_recip,
    series_sqrt,
)

__all__ = [
    "ExponentError",
    "InterpolationError",
    "MultiPoly",
    "Q",
    "Rational",
    "RationalFn",
    "Ring",
    "RingMismatch",
    "SeriesError",
    "TruncSeries",
    "coeff_extract",
    "fit_ratfn",
    "fmt",
    "from_poly",
    "interpolate_poly",
    "nullspace",
    "poly_arith",
    "poly_coeff_extract",
    "series_exp",
    "series_log",
    "series_mul",
    "series_recip",
    "series_sqrt",
    "to_fraction",
]

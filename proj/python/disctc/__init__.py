"""Topological-complexity bounds and Morse-theoretic checks for discriminantal varieties."""

from ._disctc import (
    CatalogMiss,
    Error,
    NumericError,
    ParseError,
    ValidationError,
    bound_for_config_spaces,
    build_catalog,
    coeffs_to_roots,
    disc_c,
    disc_c_resultant,
    disc_f,
    homog_lattice,
    is_homogeneisation,
    plan,
    potential_gprime,
    roots_to_coeffs,
    tc_upper_bound,
    verify_signatures,
)

__all__ = [
    "CatalogMiss",
    "Error",
    "NumericError",
    "ParseError",
    "ValidationError",
    "bound_for_config_spaces",
    "build_catalog",
    "coeffs_to_roots",
    "disc_c",
    "disc_c_resultant",
    "disc_f",
    "homog_lattice",
    "is_homogeneisation",
    "plan",
    "potential_gprime",
    "roots_to_coeffs",
    "tc_upper_bound",
    "verify_signatures",
]

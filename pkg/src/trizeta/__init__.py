"""Genus, L-polynomials and maximality of trinomial curves over finite fields."""

from .errors import CapExceeded, DomainError, ParseError, RoundingError, TrizetaError
from .gf import Field, FieldElement, field_of_order, make_extension, make_field
from .charsum import (MultiplicativeCharacter, character, gauss_sum, jacobi, jacobi0,
                      count_power_system, twisted_power_sum)
from .polygon import LatticePolygon, interior_points, newton_polygon, i_of_curve
from .curve import CaseForm, Trinomial, classify, genus, is_abs_irreducible, parse_trinomial
from .zeta import LPolynomial, brute_count, enumerate_orbits, l_polynomial, predicted_affine_count
from .maximality import (MaximalityVerdict, covering_degree, maximal_extension_degrees,
                         maximal_over_square, minimal_negative_exponent, scan)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "DomainError", "ParseError", "RoundingError", "TrizetaError",
    "Field", "FieldElement", "field_of_order", "make_extension", "make_field",
    "MultiplicativeCharacter", "character", "gauss_sum", "jacobi", "jacobi0",
    "count_power_system", "twisted_power_sum",
    "LatticePolygon", "interior_points", "newton_polygon", "i_of_curve",
    "CaseForm", "Trinomial", "classify", "genus", "is_abs_irreducible", "parse_trinomial",
    "LPolynomial", "brute_count", "enumerate_orbits", "l_polynomial", "predicted_affine_count",
    "MaximalityVerdict", "covering_degree", "maximal_extension_degrees",
    "maximal_over_square", "minimal_negative_exponent", "scan",
]

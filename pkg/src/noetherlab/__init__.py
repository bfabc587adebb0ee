"""Exact symbolic checks for the constructive steps behind rationality
results for fixed fields of transitive degree-14 permutation groups.

The package re-executes each construction over exact fields (the rationals
or GF(p)) and compares canonical forms: group elements and their orders,
substitution actions on rational function fields, invariant elements and
their eigenvalue laws, and the lattice degree counts behind the fixed-field
identifications.
"""

__version__ = "0.1.0"

from .scalars import QQ, Field, Scalar, field_make
from .symfield import (Character, Polynomial, RationalFunction,
                       SubstitutionMap, VariableSpace, eigen_factor, is_fixed,
                       parse_expression, poly_gcd)
from .perms import PermGroup, Permutation, parse_cycles

__all__ = [
    "QQ", "Field", "Scalar", "field_make",
    "Character", "Polynomial", "RationalFunction", "SubstitutionMap",
    "VariableSpace", "eigen_factor", "is_fixed", "parse_expression", "poly_gcd",
    "PermGroup", "Permutation", "parse_cycles",
    "__version__",
]

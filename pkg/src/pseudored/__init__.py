"""Exact computations with simple modules of Weil-restricted groups over imperfect fields.

Purely inseparable towers k'/k over F_p(t_1..t_m), the group R_{k'/k}(G_m) as
matrices over k, the subfields k'(lam), representation recipes with an
irreducibility checker, dimension formulas and Galois orbits on weights.
"""

from .errors import PseudoredError
from .fields import FieldElement, Tower, load_tower, make_tower, parse_tower_text, random_element
from .linalg import Matrix, Subspace, kernel, rref, spin
from .subfields import (
    AmbientTower,
    Subfield,
    brute_lambda_span,
    compositum,
    lambda_field,
    load_algebra,
    stabilizer_field,
)
from .weil import WeilGroupPoint, coordinate_profile, d_hat, generic_element, mult_matrix

__version__ = "0.1.0"

__all__ = [
    "AmbientTower", "FieldElement", "Matrix", "PseudoredError", "Subfield", "Subspace", "Tower",
    "WeilGroupPoint", "brute_lambda_span", "compositum", "coordinate_profile", "d_hat",
    "generic_element", "kernel", "lambda_field", "load_algebra", "load_tower", "make_tower",
    "mult_matrix", "parse_tower_text", "random_element", "rref", "spin", "stabilizer_field",
]

"""Exact computation with quadratic forms over constructible field towers.

Witt indices, classical invariants, quaternion-symbol Brauer classes,
fundamental-ideal neighbors, refined local-global verdicts, and refined
m-invariants, all in exact arithmetic.
"""

__version__ = "0.1.0"

from .errors import WittkitError, Undecided, MixedFields  # noqa: F401
from .fields import (  # noqa: F401
    Elem,
    FieldDesc,
    Place,
    elem_arith,
    factor_poly,
    finite_field,
    finite_place,
    infinite_place,
    is_square,
    laurent_field,
    padic_field,
    rational_function_field,
    residue_of,
    square_class_rep,
    square_class_reps,
    two_variable_field,
    valuation_of,
)

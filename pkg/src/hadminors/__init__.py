"""Minors of ±1 matrices: enumeration, maxdet catalog, and derived statistics."""

from .catalog import (
    SearchBudget,
    SearchExhausted,
    construct,
    kron,
    maxdet,
    paley_hadamard,
    representative,
    search_maxdet,
    spectrum,
    sylvester,
)
from .errors import CapacityError, HadminorsError, ParseError, RoundingHazardError
from .matrix import (
    Selector,
    SignMatrix,
    apply_equivalence,
    det_exact,
    det_float_guarded,
    det_parity_gf2,
    is_hadamard,
    parse_matrix,
    serialize,
)
from .minors import (
    MinorProfile,
    enumerate_minors,
    enumerate_minors_algA,
    enumerate_minors_algD,
    merge_profiles,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "HadminorsError",
    "MinorProfile",
    "ParseError",
    "RoundingHazardError",
    "SearchBudget",
    "SearchExhausted",
    "Selector",
    "SignMatrix",
    "apply_equivalence",
    "construct",
    "det_exact",
    "det_float_guarded",
    "det_parity_gf2",
    "enumerate_minors",
    "enumerate_minors_algA",
    "enumerate_minors_algD",
    "is_hadamard",
    "kron",
    "maxdet",
    "merge_profiles",
    "paley_hadamard",
    "parse_matrix",
    "representative",
    "search_maxdet",
    "serialize",
    "spectrum",
    "sylvester",
]

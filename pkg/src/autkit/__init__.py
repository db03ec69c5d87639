"""autkit: constructions, automorphism groups and identification for finite groups."""

from .perm import Permutation, PermutationGroup, StabilizerChain, parse_cycles
from .table import CapExceeded, Fingerprint, GroupTable
from .fp import (CosetTable, EnumerationError, Presentation, Word,
                 check_relators, parse_word, presentation_order, regular_rep,
                 todd_coxeter, validate_presentation)

__version__ = "0.1.0"

__all__ = [
    "Permutation", "PermutationGroup", "StabilizerChain", "parse_cycles",
    "CapExceeded", "Fingerprint", "GroupTable",
    "CosetTable", "EnumerationError", "Presentation", "Word",
    "check_relators", "parse_word", "presentation_order", "regular_rep",
    "todd_coxeter", "validate_presentation",
    "__version__",
]

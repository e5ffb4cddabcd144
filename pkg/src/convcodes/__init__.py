"""Convolutional codes over finite fields: algebra, distances, constructions,
input-state-output realizations, channels and decoders."""

from .channels import ERASED, ErasureStream, erase_channel, qsc_channel
from .code import ConvolutionalCode, random_noncatastrophic
from .galois import GF, FieldElement, field_create, primitive_element
from .metrics import (column_distance, column_distances, distance_profile, free_distance,
                      generalized_singleton, is_complete_mdp, is_mdp, is_mds, is_reverse_mdp,
                      is_smds, is_superregular)
from .minors import BudgetExceeded
from .poly import Poly, PolyMatrix
from .sysrep import IsoRep, code_from_iso, iso_from_code
from .verdict import Verdict

__all__ = [
    "ERASED", "ErasureStream", "erase_channel", "qsc_channel",
    "ConvolutionalCode", "random_noncatastrophic",
    "GF", "FieldElement", "field_create", "primitive_element",
    "column_distance", "column_distances", "distance_profile", "free_distance",
    "generalized_singleton", "is_complete_mdp", "is_mdp", "is_mds", "is_reverse_mdp",
    "is_smds", "is_superregular",
    "BudgetExceeded", "Poly", "PolyMatrix", "IsoRep", "code_from_iso", "iso_from_code",
    "Verdict",
]

"""Toolkit for extremal binary self-dual codes of lengths 64 and 66."""

from .circulant import FourCirculantSpec, four_circulant_code, search_four_circulant
from .codes import (
    LinearCode,
    ParityClass,
    classify_enumerator,
    min_weight,
    parity_class,
    shadow,
    weight_distribution,
)
from .covering import certify_cr12, covering_radius_exact, delsarte_bound
from .equivalence import are_equivalent, canonical_form, fingerprint, partition_classes
from .extend import split_cosets, tsai_extend
from .gf2 import BitMatrix, BitVector
from .neighbors import doubly_even_neighbors, neighbor, weight10_neighbor_vector

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "FourCirculantSpec",
    "LinearCode",
    "ParityClass",
    "are_equivalent",
    "canonical_form",
    "certify_cr12",
    "classify_enumerator",
    "covering_radius_exact",
    "delsarte_bound",
    "doubly_even_neighbors",
    "fingerprint",
    "four_circulant_code",
    "min_weight",
    "neighbor",
    "parity_class",
    "partition_classes",
    "search_four_circulant",
    "shadow",
    "split_cosets",
    "tsai_extend",
    "weight10_neighbor_vector",
    "weight_distribution",
]

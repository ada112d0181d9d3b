"""Purely real (twisted) Hurwitz numbers by enumeration.

Transposition sequences, their 2^m : 1 map onto sequences of pair matchings,
and the realisation of those sequences as constellations on possibly
non-orientable surfaces.
"""
from .constellation import (
    CDConstellation,
    FlagMap,
    MalformedConstellationError,
    SurfaceReport,
    build_constellation,
    export_graph,
    extract_matchings,
    import_structured,
    orientable_by_flips,
    surface_report,
)
from .factorization import (
    CountOverflowError,
    FactorizationCount,
    TranspositionSeq,
    count_by_cycle_type,
    enumerate_factorizations,
    hurwitz_number,
    twisted_product,
    valid_transpositions,
)
from .matching_seq import (
    MatchingSeq,
    enumerate_matching_seqs,
    p_map,
    p_preimages,
    validate_matching_seq,
)
from .perm_core import (
    PairMatching,
    Partition,
    Permutation,
    Transposition,
    compose,
    conjugate,
    cycle_type,
    hyperoctahedral_elements,
    is_twisted_class_member,
    lambda_of,
    parse_partition,
    parse_permutation,
    partitions,
    tau,
)

__version__ = "0.1.0"

__all__ = [
    "CDConstellation",
    "FlagMap",
    "MalformedConstellationError",
    "SurfaceReport",
    "build_constellation",
    "export_graph",
    "extract_matchings",
    "import_structured",
    "orientable_by_flips",
    "surface_report",
    "CountOverflowError",
    "FactorizationCount",
    "TranspositionSeq",
    "count_by_cycle_type",
    "enumerate_factorizations",
    "hurwitz_number",
    "twisted_product",
    "valid_transpositions",
    "MatchingSeq",
    "enumerate_matching_seqs",
    "p_map",
    "p_preimages",
    "validate_matching_seq",
    "PairMatching",
    "Partition",
    "Permutation",
    "Transposition",
    "compose",
    "conjugate",
    "cycle_type",
    "hyperoctahedral_elements",
    "is_twisted_class_member",
    "lambda_of",
    "parse_partition",
    "parse_permutation",
    "partitions",
    "tau",
]

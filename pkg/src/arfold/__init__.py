"""Exact combinatorics of (folded) AR quivers of longest-element classes."""

from .rootsys import RootSystem, root_system
from .words import (
    CapExceededError,
    CommutationClass,
    NotReducedError,
    cluster_point,
    commutation_class,
    coxeter_composition,
    is_foldable,
    reflect,
    root_sequence,
    twisted_adapted_point,
    twisted_coxeter_elements,
)
from .arquiver import (
    ARQuiver,
    DynkinQuiver,
    adapted_quiver_of,
    adapted_word,
    all_quivers,
    convex_order,
    coxeter_element_of,
    gamma_q,
    hasse_quiver,
    read_reduced_words,
)
from .twistfold import (
    FoldedQuiver,
    e6_folded_quiver,
    fold,
    folded_reflection,
    twist_from_a,
    twist_from_d,
    twisted_folded_quivers,
)
from .seqorder import (
    RootedPolynomial,
    SequenceVector,
    bilex_less,
    class_less,
    classify_cover,
    dist,
    distance_polynomial,
    is_simple,
    minimal_pairs_of_root,
    minimal_sequences,
    o_t,
    phi_pairs,
    socle,
)
from .affine import (
    FundamentalModuleLabel,
    SpectralParameter,
    denominator,
    dorey_triples,
    v_assign,
    v_untwisted_twisted,
    verify_den_dist,
    verify_dorey,
    verify_f4_conjecture,
)

__all__ = [
    "ARQuiver",
    "CapExceededError",
    "CommutationClass",
    "DynkinQuiver",
    "NotReducedError",
    "RootSystem",
    "adapted_quiver_of",
    "adapted_word",
    "all_quivers",
    "cluster_point",
    "commutation_class",
    "coxeter_composition",
    "coxeter_element_of",
    "gamma_q",
    "hasse_quiver",
    "is_foldable",
    "read_reduced_words",
    "reflect",
    "root_sequence",
    "root_system",
    "twisted_adapted_point",
    "twisted_coxeter_elements",
]

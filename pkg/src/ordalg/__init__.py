"""Finite posets and preorders, order-map classes, and their incidence bialgebras."""

from .algebra import (
    AlgElem,
    Monomial,
    TensorElem,
    UNIT,
    coaction,
    coproduct,
    coproduct_admissible,
    coproduct_collapses,
    coproduct_contractions,
    coproduct_cuts,
    counit,
    product,
)
from .canonical import IsoClass, are_isomorphic, canonical_form, relabel
from .enumeration import (
    ContractionDatum,
    CutDatum,
    catalog,
    enumerate_admissible,
    enumerate_collapses,
    enumerate_contractions,
    enumerate_convex_subsets,
    enumerate_downsets,
    enumerate_preorder_contractions,
    set_partitions,
)
from .errors import (
    CarrierMismatch,
    MalformedInput,
    NotAContraction,
    NotAPoset,
    NotAdmissible,
    OrdalgError,
    SizeBoundExceeded,
    SpeciesMembershipError,
)
from .maps import (
    ContractionChain,
    MapFlags,
    PartialMap,
    QuotientGrid,
    admissible_to_contraction,
    admissible_to_preorder_contraction,
    classify,
    compose_partial,
    contraction_to_admissible,
    glue_collapses,
    glue_contractions,
    grid_coherence_failures,
    is_admissible,
    is_collapse,
    is_contraction,
    is_convex_map,
    is_monotone,
    is_preorder_contraction,
    pullback,
    quotient,
    quotient_grid,
    r_map,
)
from .orders import (
    CoverPair,
    DEFAULT_MAX_SIZE,
    OrderMap,
    Partition,
    Relation,
    compose,
    connected_components,
    covers,
    disjoint_union,
    equiv_classes,
    identity_map,
    induced_subposet,
    induced_subrelation,
    is_connected_subset,
    is_convex_subset,
    posetify,
    strict_covers,
    transitive_closure,
)
from .species import (
    ALL_CONNECTED_POSETS,
    ALL_POSETS,
    ALL_PREORDERS,
    DISCRETE_SETS,
    LINEAR_TREES,
    SpeciesSpec,
    TREES,
    builtin_species,
    is_member,
    verify_closure,
)

__version__ = "0.1.0"

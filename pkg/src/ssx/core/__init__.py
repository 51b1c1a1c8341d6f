"""Core toolkit: operators, simplicial sets, maps, search and (co)limits."""

from .operators import (
    Operator,
    compose,
    constant,
    degeneracy,
    enumerate_operators,
    epi_mono_factorize,
    face,
    identity,
    injections,
    surjections,
)
from .simplicial import (
    CapExceeded,
    FgSimplicialSet,
    PresentationError,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    TruncatedSimplicialSet,
    act,
    canonical_name,
    compose_maps,
    gen_simplex,
    identity_map,
    level_set,
    normalize_simplex,
    regenerate,
    rename,
    subobject,
    is_isomorphism,
    top_dim,
    skeleton,
    truncate,
)
from .search import (
    Budget,
    BudgetExceeded,
    NoWitness,
    as_budget,
    count_homs,
    extensions,
    hom_set,
    merge_pins,
    pins_along,
)
from .nerves import (
    FiniteCategory,
    Poset,
    boundary,
    build_standard,
    empty,
    horn,
    nerve_of_category,
    nerve_of_poset,
    operator_simplex,
    point,
    poset_map_on_nerves,
    sequence_to_simplex,
    simplex_operator,
    simplex_to_sequence,
    standard_simplex,
)
from .constructions import (
    Colimit,
    Limit,
    RepresentedHomSet,
    UnionFind,
    coproduct,
    exponential,
    finite_colimit,
    finite_limit,
    product,
    product_map,
    pullback,
    pushout,
)

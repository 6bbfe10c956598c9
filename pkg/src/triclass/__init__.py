"""Classification of single-input lower triangular control systems.

Exact multi-index combinatorics, polynomial jets, lower triangular normal
forms with their L- and E-types, and Lie-bracket feedback-equivalence
checks, all in exact arithmetic.
"""

from .multiindex import (
    MultiIndex,
    ZERO,
    LeftOrder,
    componentwise_le,
    generates,
    left_compare,
    lex_less,
    lex_sorted,
    parse_multiindex,
    proper_index,
)
from .indexsets import (
    ComplementResult,
    EmptySlotError,
    MixedPropernessError,
    complement_of_generated,
    essential_sets,
    in_generated,
    least,
    proper_indices_of_order,
    weakly_essential_alg1,
    weakly_essential_alg2,
)
from .jetfun import (
    EliminationResult,
    EssentialIndexError,
    Jet,
    ParseError,
    SolverFailedError,
    TriangularMap,
    compose_maps,
    compose_triangular,
    eliminate_index,
    essential_of,
    indices_of,
    invert_triangular,
    least_of,
    parse_jet,
    substitute,
)

__all__ = [name for name in dir() if not name.startswith("_")]

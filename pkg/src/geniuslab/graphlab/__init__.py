"""Matchings in regular bipartite graphs and graph positivity."""

from .canon import canonical_form, canonical_rc, doubly_sorted, enumerate_classes, transpose
from .census import (
    EVALUATED_RANGE,
    SAMPLER,
    STATED_RANGE,
    CensusReport,
    PositivityResult,
    Witness,
    census,
    meaningful_pairs,
    positivity,
    positivity_of_counts,
    sign_ladder,
)
from .graphs import (
    BipartiteGraph,
    RetryBudgetExceeded,
    SplitMix64,
    enum_regular,
    enum_regular_with_counts,
    iter_labeled,
    rand_regular,
)
from .matching import (
    NEGATIVE,
    POSITIVE,
    ZERO,
    MatchingInvariantError,
    delta_float,
    delta_sign,
    match_counts,
    match_counts_bruteforce,
    mbar,
)

__all__ = [name for name in dir() if not name.startswith("_")]

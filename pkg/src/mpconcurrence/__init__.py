"""Lower bounds on multipartite concurrence from sub-state decompositions."""

from .bounds import (
    BoundReport,
    Coefficient,
    convex_combination_bound,
    enumerate_selectors,
    hierarchy_bound,
    pure_hierarchy_check,
    substate_coefficient,
    three_qubit_bound,
)
from .concurrence import (
    ConcurrenceValue,
    convex_roof_upper_estimate,
    pure_concurrence_minors,
    pure_concurrence_purity,
)
from .states import (
    DctParams,
    DensityMatrix,
    PureState,
    dct_state,
    depolarized_ghz_333,
    ghz_pair,
    pure_from_amplitudes,
    random_mixed,
    random_pure,
    random_separable,
)
from .tensor import (
    InvalidInputError,
    SubstateSelector,
    partial_trace,
    partial_transpose,
    project_substate,
    realign,
    trace_norm,
)

__version__ = "0.1.0"

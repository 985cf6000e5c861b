"""A-priori voting power under yes/no and yes/no/abstain voting."""
from .allocation import (
    Basis,
    PopulationTable,
    WeightAllocation,
    invariance_report,
    load_population_table,
    power_based_weights,
    sqrt_weights,
)
from .combinatorics import (
    binomial,
    central_trinomial,
    log_binomial,
    next_central_trinomial,
    trinomial,
)
from .oracle import McEstimate, enumerate_pivot_probability, monte_carlo_pivot
from .power import (
    Method,
    PowerConfig,
    PowerResult,
    ResourceLimitError,
    Strategy,
    VotingScheme,
    binary_power_asymptotic,
    binary_power_exact,
    ternary_power_asymptotic,
    ternary_power_exact,
    ternary_sum_via_trinomials,
)

__version__ = "0.1.0"

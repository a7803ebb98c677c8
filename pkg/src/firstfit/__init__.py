"""First-Fit chain partitioning on posets, with executable checks of its
linear bound when no chain of r elements sits beside a chain of s elements."""

from .errors import (
    BoundViolation,
    CycleError,
    EmptyIntervalError,
    FormatError,
    GiveUpError,
    NonFFPartitionError,
    PosetError,
    PreconditionError,
    SizeError,
)
from .poset import (
    Poset,
    RsWitness,
    antichain,
    chain,
    contains_r_plus_s,
    dilworth,
    disjoint_sum,
    element_height,
    height,
    induced_subposet,
    maximum_antichain,
    width,
    width_bruteforce,
)
from .partition import (
    OrderedChainPartition,
    ff_ratio,
    first_fit,
    min_chain_partition,
    verify_ff_partition,
)
from .intervals import GroupFamily, IntervalAssignment, assign_intervals, build_groups, compute_b
from .society import EvolutionTrace, Kind, Society, check_trace, init_society, run_evolution

__version__ = "0.1.0"

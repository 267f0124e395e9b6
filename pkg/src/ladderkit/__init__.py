"""Constructive colorings and window verification for difference-set
Ramsey experiments: ladder-style AP forcing, accessible-set chains,
square walks, interval blocking, and distance-graph recolorings."""

__version__ = "0.1.0"

from .core import (
    AllNaturals,
    APWitness,
    DifferenceOf,
    DiffSetSpec,
    Explicit,
    GridWitness,
    KthPowers,
    OddPowerDiffs,
    OrderedGraph,
    PathWitness,
    PolynomialImage,
    ResidueClass,
    SpecError,
    SSeqWitness,
    Verdict,
    WindowColoring,
    WindowMismatchError,
    diffset_contains,
    diffset_members,
    read_coloring,
    same_partition,
    spec_from_json,
    validate_witness,
    witness_from_json,
    witness_to_json,
    write_coloring,
)
from .colorings import (
    DigitColoringParams,
    HypothesisError,
    InsufficientPrefixError,
    IntervalPlan,
    base_m_digit_coloring,
    block_coloring,
    interval_blocking_coloring,
    mod_refinement,
    path_recoloring,
    product_coloring,
    tail_recoloring,
)
from .search import (
    WalkState,
    certified_grid_window,
    contract_diffset,
    find_dead_ends,
    find_mono_ap,
    find_mono_grid,
    find_poly_progression,
    find_upward_mono_path,
    longest_mono_s_sequence,
    max_mono_ap_length,
    square_walk,
)
from .verify import (
    ChromaticResult,
    OrderMap,
    SubsetResult,
    WalkOrderReport,
    WindowProperty,
    check_window_property,
    distance_graph_chromatic_window,
    max_s_free_subset,
    order_in_set,
    walk_order_experiment,
)

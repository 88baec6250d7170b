"""Exact subtree counting and count-maximal trees with a given degree sequence."""

from .tree import (
    CycleError,
    DegreeSequence,
    DegreeSequenceError,
    DisconnectedError,
    IdGapError,
    LeafPathDecomposition,
    ParseError,
    Tree,
    TreeError,
    canonical_code,
    degree_sequence_of,
    leaf_path,
    parse_tree,
    path_tree,
    serialize_tree,
    spider,
    star_tree,
)
from .counting import (
    InterleavingError,
    LemmaCD,
    PathProfile,
    component_switch_delta,
    count_all_rooted,
    count_rooted,
    count_subtrees,
    degree_switch_delta,
    lemma_cd,
    path_profile,
    predicted_delta_component_switch,
    tail_switch_delta,
)
from .oracle import CapExceeded, TreeFamily, enumerate_family, oracle_count, oracle_count_containing
from .greedy import GreedyCheck, GreedyTree, build_greedy, is_greedy
from .switching import (
    InvariantError,
    SafetyCapExceeded,
    Switch,
    SwitchError,
    SwitchTrace,
    apply_component_switch,
    apply_degree_switch,
    apply_switch,
    apply_tail_switch,
    phase1,
    phase2,
    phase3,
    replay,
    run_switching_algorithm,
)
from .explorer import (
    ExperimentReport,
    RankedFamily,
    check_conjecture,
    check_tail_dominance,
    probe_switch_ordering,
    rank_family,
    switch_distance_to_greedy,
)

__version__ = "0.1.0"

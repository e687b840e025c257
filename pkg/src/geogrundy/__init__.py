"""Solving engine, instance generator, and play service for Undirected Geography."""

from .constructor import (
    CapExceeded,
    LabeledConstruction,
    build_nimber_position,
    build_tree_nimber,
    construction_edge_count,
    construction_vertex_count,
    verify_lemma,
)
from .graph import (
    DirectedGraph,
    DirectedPosition,
    Graph,
    GraphFormatError,
    Position,
    VertexMask,
    neighbors_alive,
    parse_graph,
    serialize_graph,
)
from .grundy import (
    BudgetExceeded,
    CallbackContractViolation,
    DegreeViolation,
    GrundySolver,
    SolveBudget,
    SolveStats,
    abstract_degree2_reduction,
    exact_grundy,
    grundy_bab,
    grundy_degree3,
    mex,
    nim_sum,
)
from .matching import Matching, is_winnable, maximum_matching, winning_move
from .reductions import (
    ArcGadget,
    GadgetMap,
    InvalidRange,
    LabelingConflict,
    NotBipartite,
    UnoLabeling,
    add_prelude,
    build_separation_instance,
    gg_to_ug,
    gg_winnable,
    label_for_uno,
    shift_nimber_chain,
    uno_from_labeling,
)
from .variants import (
    MultiTokenState,
    PassState,
    PlainState,
    SolveOutcome,
    SumState,
    SwapUnoState,
    fast_variant_solve,
    options,
    swap_uno_to_ug,
    variant_grundy,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Kemeny's constant for vertex, edge-space, and non-backtracking walks.

The package computes Kemeny's constant of the simple random walk, the
walk on directed edges, and the non-backtracking walk of an undirected
graph through four independent routes (mean first passage times,
spectrum, characteristic polynomial, effective resistance), cross-checks
them against each other and against closed forms for regular, biregular,
necklace, and cycle-barbell families, and runs exhaustive small-graph
comparisons between the edge and non-backtracking constants.
"""

from .graphs import (
    BarbellParams,
    BiregularSplit,
    Graph,
    Graph6Error,
    GraphError,
    StructuralProfile,
    from_edge_list,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_cycle_barbell,
    gen_necklace,
    gen_path,
    one_sum,
    parse_graph6,
    profile,
    read_graph6,
    to_graph6,
)
from .chains import (
    ChainError,
    ChainMatrix,
    OrientedEdgeIndex,
    TRANSITION_KINDS,
    adjacency_matrix,
    build_matrix,
    degree_matrix,
    edge_adjacency,
    edge_degree_matrix,
    edge_transition,
    incidence_operators,
    nb_adjacency,
    nb_transition,
    vertex_transition,
)
from .engine import (
    CrossCheckError,
    EngineError,
    KemenyReport,
    ResistanceData,
    Spectrum,
    kemeny_charpoly,
    kemeny_from_charpoly,
    kemeny_mfpt,
    kemeny_one_sum,
    kemeny_resistance,
    kemeny_spectrum,
    kemeny_triple,
    mfpt,
    moment,
    resistance,
    stationary,
)
from .formulas import (
    BiregularProfile,
    BoundCheck,
    FormulaError,
    RegularProfile,
    barbell_argmax,
    barbell_edge_max,
    barbell_kemeny,
    barbell_nb_charpoly,
    barbell_nb_max,
    biregular_bounds,
    biregular_edge_kemeny,
    biregular_nb_kemeny,
    biregular_profile,
    necklace_kemeny,
    regular_bounds,
    regular_edge_kemeny,
    regular_nb_kemeny,
    regular_nb_spectrum,
    regular_profile,
)
from .census import (
    CensusError,
    CensusRecord,
    CensusResult,
    SweepRow,
    barbell_sweep,
    canonical_graph,
    canonical_graph6,
    canonical_labeling,
    census_csv,
    census_nb_vs_edge,
    census_summary,
    enumerate_graphs,
    sweep_csv,
    sweep_skipped,
)

__version__ = "0.1.0"

__all__ = [
    "BarbellParams",
    "BiregularProfile",
    "BiregularSplit",
    "BoundCheck",
    "CensusError",
    "CensusRecord",
    "CensusResult",
    "ChainError",
    "ChainMatrix",
    "CrossCheckError",
    "EngineError",
    "FormulaError",
    "Graph",
    "Graph6Error",
    "GraphError",
    "KemenyReport",
    "OrientedEdgeIndex",
    "RegularProfile",
    "ResistanceData",
    "Spectrum",
    "StructuralProfile",
    "SweepRow",
    "TRANSITION_KINDS",
    "adjacency_matrix",
    "barbell_argmax",
    "barbell_edge_max",
    "barbell_kemeny",
    "barbell_nb_charpoly",
    "barbell_nb_max",
    "barbell_sweep",
    "biregular_bounds",
    "biregular_edge_kemeny",
    "biregular_nb_kemeny",
    "biregular_profile",
    "build_matrix",
    "canonical_graph",
    "canonical_graph6",
    "canonical_labeling",
    "census_csv",
    "census_nb_vs_edge",
    "census_summary",
    "degree_matrix",
    "edge_adjacency",
    "edge_degree_matrix",
    "edge_transition",
    "enumerate_graphs",
    "from_edge_list",
    "gen_complete",
    "gen_complete_bipartite",
    "gen_cycle",
    "gen_cycle_barbell",
    "gen_necklace",
    "gen_path",
    "incidence_operators",
    "kemeny_charpoly",
    "kemeny_from_charpoly",
    "kemeny_mfpt",
    "kemeny_one_sum",
    "kemeny_resistance",
    "kemeny_spectrum",
    "kemeny_triple",
    "mfpt",
    "moment",
    "nb_adjacency",
    "nb_transition",
    "necklace_kemeny",
    "one_sum",
    "parse_graph6",
    "profile",
    "read_graph6",
    "regular_bounds",
    "regular_edge_kemeny",
    "regular_nb_kemeny",
    "regular_nb_spectrum",
    "regular_profile",
    "resistance",
    "stationary",
    "sweep_csv",
    "sweep_skipped",
    "to_graph6",
    "vertex_transition",
]

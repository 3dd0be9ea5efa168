"""Local unique identifiers for GNNs via d-hop unique graph coloring."""

from .bound import BoundInputs, gen_gap_bound, sample_complexity
from .coloring import Coloring, ColoringStats, greedy_dhop_unique, is_dhop_unique, is_proper_khop
from .errors import (
    ComplexityError,
    DimensionError,
    LocalUIDError,
    MissingColorTable,
    ParseError,
    ValidationError,
)
from .graph import Graph, NeighborhoodView, build_graph, khop_neighbors, max_khop_degree, power_graph
from .ilp import FeatureMatrix, IlpInstance, LabeledBipartiteGraph, augment_features, encode_bipartite, parse_ilp
from .local import ReconstructedView, color_priority_mis, local_view_simulate, oracle_view
from .metrics import SolutionPair, mse, top_m_error
from .mp import GnnConfig, ParamSet, WlState, distinguish, forward, forward_colorgnn, wl_hash

__version__ = "0.1.0"

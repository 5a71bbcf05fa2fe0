"""Path-reporting approximate distance oracles.

Exact pairwise oracles (DPPRO), Thorup-Zwick, a single-level landmark oracle,
the multi-level landmark oracle and its graph-free variant, and oracles built
on greedy spanners.
"""

from .answer import OracleAnswer, basic_bound, multilevel_bound
from .basic import BasicOracle, build_basic, choose_rho, query_basic, sample_landmarks
from .dppro import DPPRO, build_dppro, dppro_space_report
from .errors import DisconnectedGraphError, GraphFormatError, NoPathError, NotInPairsError, ParameterError
from .graph import PathWalk, WeightedGraph, generate_graph, read_graph, validate_walk, write_graph
from .multilevel import (MultiLevelOracle, audit_branch_confinement, build_hierarchy, build_lambda_tilde,
                         build_multilevel, build_pair_structures, level_exponents, query_multilevel)
from .paths import CanonicalPathSystem, dijkstra_canonical, extract_path, truncated_ball_search
from .spanner import ComposedOracle, SpannerGraph, build_composed, greedy_spanner, load_spanner, query_composed
from .store import load_oracle, save_oracle
from .tz import TZOracle, UnionSpanner, build_tz, extract_union_spanner, query_tz

__version__ = "0.1.0"

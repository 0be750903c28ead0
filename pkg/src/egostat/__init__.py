"""Ego-network structural statistics for large undirected graphs."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .diameter import effective_diameter90
from .ego import (AssortativityResult, EgoInstanceSummary, NeighborDegreeStats, assortativity_ego,
                  assortativity_global, clustering_ego, ego_instance_summary,
                  neighbor_degree_stats, weighted_mean_ego_degree)
from .errors import (DegenerateFitError, EgostatError, InsufficientDataError, ParseError,
                     UndefinedMetricError)
from .fit import (ClusteringFit, PowerLawFit, c_ego_rand, ccdf, ego_tail_exponent,
                  fit_clustering_powerlaw, fit_degree_exponent, ks_distance,
                  predicted_mean_ego_distribution)
from .generators import generate_er, generate_powerlaw_cm, generate_triangle_closure
from .graph import Graph, IngestOptions, build_graph, parse_edge_list, read_edge_list
from .triangles import (DegreeProfile, EdgeStats, VertexStats, analyze_triangles,
                        average_edge_multiplicity, degree_profile, edge_fourclique_counts,
                        edge_multiplicities, global_clustering, vertex_stats)

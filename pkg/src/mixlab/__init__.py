"""Mixing properties of graphs (algebraic connectivity, Cheeger constant,
random-walk spectral gap) and exact/asymptotic counting of Eulerian
orientations and circuits."""

from .graph import (Graph, blowup, boundary_size, clique_plus_pendant, complete_bipartite, complete_graph,
                    cycle_graph, even_subgraph_corpus, from_edge_list, laplacian, parse_edge_list, parse_graph6,
                    path_graph, sample_gnp, transition_matrix, two_cliques_matched, write_edge_list, write_graph6)
from .linalg import Spectrum, exact_determinant, real_inverse, symmetric_eigenvalues
from .mixing import (cheeger_constant, classify, laplacian_degree_instance, lemma1_rho,
                     min_positive_generalized_eigenvalue, normalized_instance, spectral_summary,
                     theorem1_components, theorem1_gamma, validate_fiedler_inequalities)
from .eulerian import (correction_constants, count_eulerian_circuits_best, count_eulerian_circuits_trails,
                       count_eulerian_orientations, ec_approx, eo_approx, error_metrics, eulerian_report,
                       spanning_tree_count)
from .experiments import (ExperimentConfig, binomial_tail, corpus_sweep, estimate_mixing_probability,
                          quartile_means, scatter_svg, wilson_interval, write_chart_csv)

__version__ = "0.1.0"

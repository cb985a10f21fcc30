"""Edge-connectivity matrices of weighted graphs: realizability, spectra, and quotients."""

__version__ = "0.1.0"

from .connmat import (
    FlowTree,
    degree_diag,
    edge_connectivity_matrix,
    edge_connectivity_matrix_bruteforce,
    gomory_hu_tree,
    matrix_from_flow_tree,
    vertex_connectivity_matrix,
)
from .graph import WeightedGraph, complete_graph, is_connected, parse_edge_list, psd_counterexample_graph
from .matrix import SymMatrix, parse_matrix, row_maxima
from .maxflow import CutResult, local_vertex_connectivity, min_cut
from .quotient import QuotientReport, energy_lower_bound, equitable_quotient, equivalence_classes
from .spectra import (
    Spectrum,
    eigen_sym,
    elementary_eigenpairs,
    energy,
    is_psd,
    min_eig_theorem_check,
    spread,
)
from .terraced import (
    TerraceDecomposition,
    TerraceFailure,
    check_gh_triangle,
    distinct_offdiag_values,
    is_realizable,
    realize_flow_tree,
    terrace_decomposition,
)
from .ultrametric import (
    check_ultrametric,
    from_connectivity,
    ultrametric_min_eig_bound,
    ultrametric_quotient,
    zhan_extremal,
)

__all__ = [name for name in dir() if not name.startswith("_")]

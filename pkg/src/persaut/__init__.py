"""Automorphism groups across the scales of a point cloud.

Graphs, permutation groups, filtration barcodes of surviving automorphisms,
symmetry order and degree curves, and the fullerene stability study.
"""

from .autgroup import automorphism_group, symmetry_degree
from .errors import CapExceeded, ConsistencyError, FeatureError, InputError, NumericError, ResourceLimitError
from .graph import DistanceMatrix, Graph, PointCloud, pairwise_distances, proximity_graph
from .perm import Permutation, PermutationGroup
from .persist import Filtration, barcode, build_filtration, rank_table

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "ConsistencyError", "DistanceMatrix", "FeatureError", "Filtration", "Graph", "InputError",
    "NumericError", "Permutation", "PermutationGroup", "PointCloud", "ResourceLimitError", "automorphism_group",
    "barcode", "build_filtration", "pairwise_distances", "proximity_graph", "rank_table", "symmetry_degree",
]

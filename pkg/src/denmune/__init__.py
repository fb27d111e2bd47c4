"""DenMune: mutual-nearest-neighbor density clustering with automatic noise detection."""

from .classification import PointClassification, PointType, classify_points
from .dataio import DatasetSpec, generate_blobs, load_dataset, load_labels, save_labels
from .engine import (
    NOISE1,
    NOISE2,
    UNASSIGNED,
    ClusteringResult,
    ClusterModel,
    DenMune,
    assign_weak_points,
    cluster_graph,
    create_clusters_skeleton,
    denmune,
)
from .errors import (
    DatasetParseError,
    DenMuneError,
    EmptyTableError,
    InvalidInputError,
    InvalidParameterError,
)
from .metrics import (
    ContingencyTable,
    MetricsReport,
    ari,
    contingency,
    evaluate,
    f1_matched,
    homogeneity_completeness,
    nmi,
)
from .neighbor_graph import NeighborGraph, PointSet, build_neighbor_graph, mutual_neighbors
from .sweep import SweepReport, sweep

__version__ = "0.1.0"

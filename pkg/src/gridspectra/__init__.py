"""Exact spectral and structural verification of clique-extended grid graphs.

Builds s-clique extensions of square grid graphs, certifies their integral
spectra in exact integer arithmetic, and runs the structural reconstruction
pipeline (lines -> twin-class quotient -> grid identification) that decides
whether an arbitrary graph is such an extension.
"""

__version__ = "0.1.0"

from .errors import (
    GridspectraError,
    InvalidParameterError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedClaimError,
)
from .graphs import (
    ExtensionParams,
    Graph,
    cartesian_product,
    clique_extension,
    complement,
    complete_graph,
    grid_graph,
    induced_subgraph,
    local_graph,
    read_graph,
    read_graph6,
    shrikhande_graph,
    write_graph,
)
from .lines import find_lines, maximal_cliques
from .reconstruct import (
    GridIdentification,
    PipelineReport,
    identify_grid_or_shrikhande,
    quotient,
    run_pipeline,
    twin_classes,
)
from .regularity import (
    common_neighbors,
    hoffman_clique_check,
    local_valency_stats,
    max_coclique_order,
    regularity_profile,
)
from .spectra import (
    Spectrum,
    certified_integral_spectrum,
    clique_extension_spectrum,
    expected_spectrum,
    verify_a3_classification,
    verify_hoffman_identity,
    verify_spectrum,
    verify_walk_regularity,
)

__all__ = [
    "ExtensionParams",
    "Graph",
    "GridIdentification",
    "GridspectraError",
    "InvalidParameterError",
    "ParseError",
    "PipelineReport",
    "PreconditionError",
    "ResourceLimitError",
    "Spectrum",
    "UnsupportedClaimError",
    "cartesian_product",
    "certified_integral_spectrum",
    "clique_extension",
    "clique_extension_spectrum",
    "common_neighbors",
    "complement",
    "complete_graph",
    "expected_spectrum",
    "find_lines",
    "grid_graph",
    "hoffman_clique_check",
    "identify_grid_or_shrikhande",
    "induced_subgraph",
    "local_graph",
    "local_valency_stats",
    "max_coclique_order",
    "maximal_cliques",
    "quotient",
    "read_graph",
    "read_graph6",
    "regularity_profile",
    "run_pipeline",
    "shrikhande_graph",
    "twin_classes",
    "verify_a3_classification",
    "verify_hoffman_identity",
    "verify_spectrum",
    "verify_walk_regularity",
    "write_graph",
]

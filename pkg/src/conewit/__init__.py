"""Face-restricted rank-1 cone tests for certifying PPT entanglement."""

__version__ = "0.1.0"

from conewit.cones import (  # noqa: E402
    DNN,
    R1Status,
    ScaledCorrelation,
    SparsePSD,
    extremality_test,
    r1_test,
)
from conewit.detector import Status, Verdict, certify_edge, detect, detect_sweep  # noqa: E402
from conewit.graphs import Graph  # noqa: E402
from conewit.matcore import DEFAULT_TOL, Tolerance, herm_eig  # noqa: E402
from conewit.states import (  # noqa: E402
    BipartiteState,
    Bosonic,
    LdoiTriple,
    RestrictedRank1,
    Sparse,
    build_corr_state,
    build_dicke_mixture,
    build_sparse_family,
)

__all__ = [
    "BipartiteState",
    "Bosonic",
    "DEFAULT_TOL",
    "DNN",
    "Graph",
    "LdoiTriple",
    "R1Status",
    "RestrictedRank1",
    "ScaledCorrelation",
    "Sparse",
    "SparsePSD",
    "Status",
    "Tolerance",
    "Verdict",
    "__version__",
    "build_corr_state",
    "build_dicke_mixture",
    "build_sparse_family",
    "certify_edge",
    "detect",
    "detect_sweep",
    "extremality_test",
    "herm_eig",
    "r1_test",
]

"""Edge-friendly labelings and edge-balanced index sets of complete bipartite graphs."""

from .constructions import (
    build_theorem1_base,
    build_theorem1_max,
    build_theorem2,
    build_two_dense,
    claimed_ebi,
    compute_KN,
    dense_bound_check,
    dense_bound_exact,
    fixture_k35,
    schedule_theorem1,
    schedule_theorem2,
)
from .core import (
    Checkpoint,
    EdgeRef,
    Evaluation,
    Labeling,
    Schedule,
    Shape,
    Side,
    SwapStep,
    VertexClass,
    VertexRef,
    apply_schedule,
    apply_swap,
    complement,
    evaluate,
    parse_labeling,
    serialize_labeling,
    vertex_class,
)
from .report import VerificationReport, export_dot, verify_theorems
from .search import EbiResult, SearchOptions, canonical_key, ebi_exhaustive, local_search

__version__ = "0.1.0"

"""Superstar random-tree model: growth, branching-process embedding, limits and data fits."""
__version__ = "0.1.0"

from ._backend import BACKEND
from .branching import (
    BpState,
    BpVertex,
    MartingaleTrace,
    first_birth_times,
    martingale_trace,
    modified_generation,
    simulate_bp,
    simulate_yule,
    surgery,
)
from .errors import EdgeListParseError, ParameterError
from .ingest import ComponentSummary, EdgeList, analyze_component, giant_component, parse_edge_list
from .model import GrowthParams, ModelTag, RootedTree, grow_preferential, grow_superstar
from .rng import make_rng, replicate
from .stats import (
    Pmf,
    ScalingFit,
    degree_pmf,
    estimate_p,
    loglog_slope,
    max_nonsuperstar_degree,
    relative_error,
    superstar_fraction,
    tree_height,
    tv_distance,
)
from .theory import ModelConstants, constants, lambert_w0, nu_pa, nu_sm, p_geq_k_infty

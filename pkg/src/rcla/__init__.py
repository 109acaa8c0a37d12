"""Grid-based point cloud reduction and denoising for topological data
analysis, with Poisson-noise stability certificates and automatic
parameter selection."""

from .autoselect import (
    AutoSelectConfig,
    AutoSelectResult,
    CandidateReport,
    NoFeasibleCandidateError,
    auto_select,
    betti0_radius_graph,
    delta_candidates,
    knn_distance,
    mu_upper,
    quality_J,
    select_k,
)
from .bottleneck import Matching, bottleneck_distance, interval_inf_dist
from .features import FeatureVector, diagram_features, feature_schema
from .grid import (
    CellHistogram,
    GridSpec,
    as_cloud,
    build_grid,
    cell_center,
    cell_of,
    histogram,
)
from .harness import ExperimentReport, ExperimentSpec, run_comparison
from .persistence import (
    PersistenceDiagram,
    distance_matrix,
    vr_persistence,
    vr_persistence_points,
)
from .poisson import (
    NoiseModel,
    ShapeOccupancy,
    StabilityCertificate,
    pois_cdf,
    pois_tail,
    prob_no_noise_cubes,
    prob_no_outshape_cubes,
    stability_certificate,
)
from .reduction import ReducedCloud, ReductionParams, cla_reduce, rcla_reduce
from .special import beta_quantile, betainc_reg
from .synth import (
    Box,
    UNIT_SQUARE,
    derive_rng,
    hppp_box,
    make_noisy_dataset,
    sample_circle,
    sample_two_circles,
    uniform_box,
)

__version__ = "0.1.0"

"""Floating-point approximation of proximal limit sets."""

from .orbit import (
    OrbitChunk,
    OrbitConfig,
    OrbitPoint,
    TAG_NAMES,
    attracting_vector,
    collect,
    enumerate_orbit,
    iter_points,
    orbit_size,
)
from .pca import (
    AllPointsDiscarded,
    PcaResult,
    StreamingPCA,
    TooFewPoints,
    auto_chart,
    jacobi_eigh,
    pca_top3,
    project_chart,
)
from .pipeline import PipelineResult, run_pipeline
from .render import Canvas, render_scatter
from .spectral import (
    DominantNotRealSimple,
    NoConvergence,
    aberth_roots,
    dominant_eigenvector,
    eta_matrix,
    spectral_gap,
)

"""pinchkit: Ricci pinching thresholds, the Lawson-Simons functional and equality-case rigidity.

Pointwise computations for submanifolds of space forms, described by their
shape operators in orthonormal frames.
"""

from .curvature import (
    CurvatureSummary,
    PointData,
    mean_curvature_sq,
    mean_curvature_vector,
    ricci_min,
    ricci_tensor,
    scalar_curvature,
    sff_norm_sq,
    summarize,
)
from .dataio import RunConfig, batch_classify, load_point_data, save_point_data
from .lawson_simons import (
    OptimizerConfig,
    SubspaceSplit,
    ThetaResult,
    Verdict,
    homology_verdict,
    maximize_theta,
    maximize_theta_many,
    theta_q_basis,
    theta_q_subspace,
    verify_lemma_chain,
)
from .models import clifford_minimal, einstein_torus, equality_case_synthetic, torus_hypersurface, umbilical_sphere
from .pinching import alpha, b_vlachos, compare_alpha_b, gamma, phi, xu_gu_bound
from .rigidity import Classification, classify_point, equality_case_detect
from .surd import QuadSurd

__version__ = "0.1.0"

"""Curvature operators on two-forms and symmetric tensors, G2 / SU(3) structure
algebra, homogeneous-space curvature and Betti-number vanishing criteria."""

from .analysis import SpaceAnalysis, analyze, analyze_space
from .betti import BettiReport, betti_conditions
from .bounds import (
    EinsteinData,
    IntervalBound,
    bound_hat_general,
    bound_hat_special,
    bound_intersections_nk,
    bound_ring_einstein,
    bound_ring_general,
    bound_ring_nk_plus,
    weitzenboeck_constants,
)
from .errors import CurvlabError
from .homogeneous import (
    AW,
    S3S3,
    SpaceModel,
    build_space,
    load_space,
    riemann_components,
    sectional_extremes,
    space_from_structure,
)
from .operators import hat_matrix, restrict, ring_matrix, spectrum
from .structures import (
    standard_g2,
    su3_from_g2,
    su3_subspaces,
    g2_subspaces,
    verify_g2_identities,
    verify_su3_identities,
)
from .tensors import (
    CurvatureTensor,
    form_inner,
    hodge_star,
    kulkarni_nomizu,
    ricci,
    riemann_decompose,
    sectional,
    wedge,
)
from .weyl import weyl_operators

__version__ = "0.1.0"

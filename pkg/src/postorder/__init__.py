"""Postorder rearrangement of the Haar system on the finite dyadic tree."""

from .dwt import (
    CoefficientStream,
    HaarCoefficients,
    StreamingHaar,
    analyze_levelwise,
    analyze_streaming,
    energy,
    synthesize,
)
from .dyadic import (
    MAX_DEPTH,
    CarlesonResult,
    DyadicInterval,
    IntervalSet,
    carleson,
    carleson_witness,
    children,
    contains,
    enumerate_intervals,
    lowermost_level,
    parent,
    subtree,
)
from .geometry import (
    BoundReport,
    Cone,
    MaximalDecomposition,
    RightFillUp,
    carleson_cone_fillup,
    carleson_order_interval,
    cone,
    maximal_decomposition,
    maximal_intervals,
    right_fill_up,
)
from .norms import (
    HaarExpansion,
    NormCertificate,
    apply_bmo_rearrangement,
    apply_hp_rearrangement,
    bmo_norm_sq,
    certify_lower_bound,
    certify_upper_bound_on_subspace,
    fefferman_check,
    h1_norm_bounds,
    h2_norm_sq,
    hp_norm,
    inner_product,
    square_function,
    theorem_operatornorm1_suite,
)
from .ordinals import (
    Rearrangement,
    build_rearrangement,
    lex_order_interval,
    level_of,
    pos_of,
    post_interval,
    post_order_interval,
    post_ordinal_closed,
    post_ordinal_traversal,
    postorder_sequence,
    precedes,
    sigma,
    tau,
)
from .rationals import DyadicRational, RootTwoDyadic

__version__ = "0.1.0"

"""Random sphere graphs: constants, cap thresholds, estimators, certificates and the first-moment baseline."""

from ._core import (
    BaselineResult,
    CapThreshold,
    DomainError,
    InfeasibleError,
    RejectionExhausted,
    ResourceError,
    SingularSequenceError,
    ThresholdConstants,
    cap_probability,
    certify,
    erdos_bound,
    estimate_clique_prob,
    normal_quantile,
    select_p_star,
    solve_cap_threshold,
    solve_p_C,
    threshold_constants,
    verify,
)

__all__ = [
    "BaselineResult",
    "CapThreshold",
    "DomainError",
    "InfeasibleError",
    "RejectionExhausted",
    "ResourceError",
    "SingularSequenceError",
    "ThresholdConstants",
    "cap_probability",
    "certify",
    "erdos_bound",
    "estimate_clique_prob",
    "normal_quantile",
    "select_p_star",
    "solve_cap_threshold",
    "solve_p_C",
    "threshold_constants",
    "verify",
]

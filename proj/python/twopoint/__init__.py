"""Two-point hitting problems for spectrally negative Levy processes."""

from ._core import (
    DomainError,
    Model,
    NumericalFault,
    ScaleEngine,
    UnsupportedCase,
    avoidance_probability,
    boundary_denominator,
    boundary_limit_density,
    check_identities,
    conditioned_resolvent_hat,
    entrance_density,
    excursion_laplace,
    killed_resolvent_density,
    last_visit_laplace,
    local_time_weight,
    mc_h,
    mc_last_visit,
)

__all__ = [
    "DomainError",
    "Model",
    "NumericalFault",
    "ScaleEngine",
    "UnsupportedCase",
    "avoidance_probability",
    "boundary_denominator",
    "boundary_limit_density",
    "check_identities",
    "conditioned_resolvent_hat",
    "entrance_density",
    "excursion_laplace",
    "killed_resolvent_density",
    "last_visit_laplace",
    "local_time_weight",
    "mc_h",
    "mc_last_visit",
]

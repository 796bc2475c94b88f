"""Numerical tools for the classes Omega_lambda of normalized analytic functions
with ``|z f' - f| < lambda`` on the unit disk."""

from .errors import (
    DomainError,
    GFTError,
    InvalidLambda,
    NotCertified,
    PoleEncountered,
    UnknownEquation,
)
from .geometry import Kind, RadiusResult, ScanConfig, min_on_circle, partial_sum_radius, radius_of_positivity
from .omega import (
    MembershipCertificate,
    PhiSpec,
    Verdict,
    boundary_defect,
    cubic_example,
    extremal_k,
    family_f_mu,
    from_phi,
    is_member,
)
from .reports import BoundReport, SuiteReport
from .roots import CATALOG, named_radius, solve_bracketed
from .series import RawSeries, TaylorSeries, convolve, partial_sum, reciprocal_series

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "CATALOG", "DomainError", "GFTError", "InvalidLambda", "Kind",
    "MembershipCertificate", "NotCertified", "PhiSpec", "PoleEncountered", "RadiusResult",
    "RawSeries", "ScanConfig", "SuiteReport", "TaylorSeries", "UnknownEquation", "Verdict",
    "boundary_defect", "convolve", "cubic_example", "extremal_k", "family_f_mu", "from_phi",
    "is_member", "min_on_circle", "named_radius", "partial_sum", "partial_sum_radius",
    "radius_of_positivity", "reciprocal_series", "solve_bracketed",
]

"""
eulercat - Euler characteristics of finite categories

Builds finite categories, their nerves and barycentric subdivisions, and
evaluates the Leinster, series, L², filtered and extended L² Euler
characteristics in exact rational arithmetic.
"""

__version__ = "1.0.0"

from .config import EulercatConfig
from .euler import (
    EulerResult,
    NFiltration,
    UndefinedReason,
    chi_ext_l2_of_sd_op,
    chi_fil,
    chi_l2_acyclic,
    chi_leinster,
    chi_series,
)
from .fincat import CategoryError, FinCat, from_monoid, from_poset
from .subdivision import sd, sd_truncated
from .verify import VerifyHarness

__all__ = [
    "CategoryError",
    "EulerResult",
    "EulercatConfig",
    "FinCat",
    "NFiltration",
    "UndefinedReason",
    "VerifyHarness",
    "chi_ext_l2_of_sd_op",
    "chi_fil",
    "chi_l2_acyclic",
    "chi_leinster",
    "chi_series",
    "from_monoid",
    "from_poset",
    "sd",
    "sd_truncated",
]

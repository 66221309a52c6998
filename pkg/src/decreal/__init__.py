"""Exact real arithmetic on decimal expansions and rational enclosures."""

from .real_core import (
    DEFAULT_CAP,
    DecimalExpansion,
    Digits,
    Enclosure,
    Indeterminate,
    SignedReal,
    SignUnknownError,
    Verdict,
    compare_at,
    digits_from_enclosure,
    truncate,
)
from .sup_engine import BoundOracle, CutOracle, SupremumResult, measure, supremum
from .tower import (
    IntegerPair,
    Natural,
    PeriodicDecimal,
    RationalPair,
    periodic_to_rat,
    rat_to_periodic,
)

__version__ = "0.1.0"

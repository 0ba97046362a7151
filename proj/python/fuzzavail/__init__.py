"""Security-aware availability model backed by a C++ Mamdani engine."""

from ._core import (
    FuzzavailError,
    achieved_availability,
    builtin_rulebase,
    check_rulebase,
    contours,
    format_rulebase,
    global_availability,
    ingest,
    slice,
    surface,
)

__all__ = [
    "FuzzavailError",
    "achieved_availability",
    "builtin_rulebase",
    "check_rulebase",
    "contours",
    "format_rulebase",
    "global_availability",
    "ingest",
    "slice",
    "surface",
]
__version__ = "1.0.0"

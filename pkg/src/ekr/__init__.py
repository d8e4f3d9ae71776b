"""Exact search tools for the Erdos-Ko-Rado property of downsets of small sets."""
from .family import (
    UNBOUNDED,
    CoveringResult,
    SetFamily,
    covering_number,
    cross_intersecting,
    downward_closure,
    head,
    is_downset,
    is_intersecting,
    layer,
    link,
    parse_fam,
    format_fam,
    star,
    star_size_max,
)
from .solver import (
    SolveResult,
    enumerate_maximum_intersecting,
    has_nonstar_maximum,
    max_intersecting,
)
from .engine import (
    EkrReport,
    classify_nonstrict,
    construct_case1,
    construct_case2,
    ekr_report,
)
from .repair import star_repair
from .theorem4 import claim_bounds, theorem4_pipeline

__version__ = "0.1.0"

__all__ = [
    "UNBOUNDED",
    "CoveringResult",
    "SetFamily",
    "covering_number",
    "cross_intersecting",
    "downward_closure",
    "head",
    "is_downset",
    "is_intersecting",
    "layer",
    "link",
    "parse_fam",
    "format_fam",
    "star",
    "star_size_max",
    "SolveResult",
    "enumerate_maximum_intersecting",
    "has_nonstar_maximum",
    "max_intersecting",
    "EkrReport",
    "classify_nonstrict",
    "construct_case1",
    "construct_case2",
    "ekr_report",
    "star_repair",
    "claim_bounds",
    "theorem4_pipeline",
]

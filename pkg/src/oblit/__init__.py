"""Exact-arithmetic engine for certified dense-points dimension bounds.

The package computes replayable upper bounds on the minimal ambient
dimension guaranteeing dense level-l points (or j-planes) on intersections
of hypersurfaces of a given type, uses them to sharpen Hamilton tables for
resolvent degree, and verifies the induced bounds for the sporadic simple
groups.
"""

from .obliterate import (
    BoundCertificate,
    EvalOptions,
    EvalStats,
    Evaluator,
    LevelTooLow,
    StepBudgetExceeded,
    bound_f,
    cert_from_json,
    cert_to_json,
    coarse_bound_f,
    extract,
    planes_from_pts,
    quadric_bound,
    replay,
)
from .rdbound import (
    HamiltonTable,
    MonotonicityError,
    RdBoundFn,
    builtin_table,
    load_table,
    save_table,
    validate,
)
from .sharpen import PlateauProbe, SharpenReport, sharpen_all, sharpen_h
from .sporadic import (
    GroupSpec,
    GroupVerdict,
    builtin_groups,
    degrees_to_type,
    verify_all,
    verify_group,
)
from .typeseq import ZERO, TypeSeq

__version__ = "0.1.0"

__all__ = [
    "BoundCertificate",
    "EvalOptions",
    "EvalStats",
    "Evaluator",
    "GroupSpec",
    "GroupVerdict",
    "HamiltonTable",
    "LevelTooLow",
    "MonotonicityError",
    "PlateauProbe",
    "RdBoundFn",
    "SharpenReport",
    "StepBudgetExceeded",
    "TypeSeq",
    "ZERO",
    "bound_f",
    "builtin_groups",
    "builtin_table",
    "cert_from_json",
    "cert_to_json",
    "coarse_bound_f",
    "degrees_to_type",
    "extract",
    "load_table",
    "planes_from_pts",
    "quadric_bound",
    "replay",
    "save_table",
    "sharpen_all",
    "sharpen_h",
    "validate",
    "verify_all",
    "verify_group",
]

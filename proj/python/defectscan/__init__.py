"""Exact verification of the duality defect conjecture search.

Thin wrapper over the C++ core: integer linear recurrence evaluation, the
admissibility/bounds arithmetic, the exhaustive tuple search with certificates,
and the order-3 double-zero classification.
"""

import json as _json

from ._core import (
    ConstraintError,
    ResourceError,
    __version__,
    admissible_case,
    brute_force_classify,
    check_pattern,
    chern_bounds,
    deduce_odd_case,
    defect_branches,
    degree_bound,
    degree_of,
    find_double_zero,
    integer_nth_root,
    log_concavity_ok,
    poly_divide,
    search_raw,
    segre_sequence,
    u_sequence,
    verify_lemma_structure,
)
from ._core import run_case as _run_case_json


def run_case(N, m, **kwargs):
    """Searches every defect branch of (N, m) and returns the certificate dict."""
    return _json.loads(_run_case_json(N, m, **kwargs))


__all__ = [
    "ConstraintError",
    "ResourceError",
    "__version__",
    "admissible_case",
    "brute_force_classify",
    "check_pattern",
    "chern_bounds",
    "deduce_odd_case",
    "defect_branches",
    "degree_bound",
    "degree_of",
    "find_double_zero",
    "integer_nth_root",
    "log_concavity_ok",
    "poly_divide",
    "run_case",
    "search_raw",
    "segre_sequence",
    "u_sequence",
    "verify_lemma_structure",
]

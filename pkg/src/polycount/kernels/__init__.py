"""Enumeration kernels with backend selection at import time.

The compiled extension is preferred; setting POLYCOUNT_PURE=1 (or a failed
build) selects the pure-Python lane.  Both lanes export the same functions
and must agree exactly; tests/test_kernels.py enforces that.
"""

import os

if os.environ.get("POLYCOUNT_PURE"):
    from . import _pure as _impl
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

BACKEND = _impl.BACKEND

count_vertex_covers = _impl.count_vertex_covers
count_independent_sets = _impl.count_independent_sets
count_perfect_matchings = _impl.count_perfect_matchings
forest_label_profile = _impl.forest_label_profile
count_csp_models = _impl.count_csp_models

__all__ = [
    "BACKEND",
    "count_vertex_covers",
    "count_independent_sets",
    "count_perfect_matchings",
    "forest_label_profile",
    "count_csp_models",
]

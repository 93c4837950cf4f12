"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python twin is a
drop-in replacement producing bit-identical results.  Set
MULTICURVE_BACKEND=pure or =c to force a choice (forcing "c" raises if the
extension is missing).
"""

import os

_choice = os.environ.get("MULTICURVE_BACKEND", "")
if _choice not in ("", "c", "pure"):
    raise ImportError("MULTICURVE_BACKEND must be 'c' or 'pure', got %r" % _choice)

if _choice == "pure":
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "c":
            raise
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
count_ball = _impl.count_ball
trace_of_slope = _impl.trace_of_slope
slopes_upto = _impl.slopes_upto
count_upto = _impl.count_upto
count_multi = _impl.count_multi

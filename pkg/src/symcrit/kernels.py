"""Backend selection for the hot kernels.

The compiled ``_fastcore`` extension is used when it imports; otherwise (or
when ``SYMCRIT_PURE=1`` is set) the pure-Python ``_purecore`` is used.  Both
expose the same functions, so callers only ever import from here.
"""

import os

if os.environ.get("SYMCRIT_PURE", "") not in ("", "0"):
    from . import _purecore as _impl
else:
    try:
        from . import _fastcore as _impl
    except ImportError:  # extension not built
        from . import _purecore as _impl

BACKEND = _impl.BACKEND

fq_mul = _impl.fq_mul
fq_add = _impl.fq_add
fq_sub = _impl.fq_sub
fq_scale = _impl.fq_scale
fq_pow = _impl.fq_pow
fq_inv = _impl.fq_inv
ec_neg = _impl.ec_neg
ec_add = _impl.ec_add
ec_mul = _impl.ec_mul
miller = _impl.miller
count_points = _impl.count_points

__all__ = [
    "BACKEND", "fq_mul", "fq_add", "fq_sub", "fq_scale", "fq_pow", "fq_inv",
    "ec_neg", "ec_add", "ec_mul", "miller", "count_points",
]

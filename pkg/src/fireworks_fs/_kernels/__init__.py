"""Hot kernels with a compiled core and a pure-numpy fallback.

The compiled extension is preferred when importable; set the environment
variable ``FIREWORKS_FS_PURE_PYTHON=1`` to force the fallback. Both backends
implement identical semantics, including tie handling and float rounding.
"""

import os

from fireworks_fs._kernels import fallback as _fallback

if os.environ.get("FIREWORKS_FS_PURE_PYTHON"):
    _impl = _fallback
    BACKEND = "fallback"
else:
    try:
        from fireworks_fs._kernels import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "fallback"

knn_predict_batch = _impl.knn_predict_batch
box_sum_sq = _impl.box_sum_sq

__all__ = ["BACKEND", "knn_predict_batch", "box_sum_sq"]

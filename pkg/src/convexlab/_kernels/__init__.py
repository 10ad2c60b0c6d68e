"""Kernel backend selection: compiled extension if built, numpy fallback otherwise.

Set CONVEXLAB_PURE_PYTHON=1 to force the fallback (used by the benchmark
and for debugging).
"""

import os

if os.environ.get("CONVEXLAB_PURE_PYTHON") == "1":
    from ._fallback import BACKEND, khachiyan_weights
else:
    try:
        from ._khachiyan import BACKEND, khachiyan_weights
    except ImportError:
        from ._fallback import BACKEND, khachiyan_weights

__all__ = ["khachiyan_weights", "BACKEND"]

"""Select the kernel implementation at import time.

The compiled extension is used when importable; ``SUPERSTAR_PURE_PYTHON=1``
forces the pure-Python twin. Both produce identical output.
"""
import os

from . import _purepy

kernels = _purepy
BACKEND = "python"

if os.environ.get("SUPERSTAR_PURE_PYTHON", "").strip() not in ("1", "true", "yes"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        kernels = _kernels
        BACKEND = "cython"

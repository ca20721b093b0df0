"""Kernel backend selection.

Numba kernels are used when numba imports cleanly. Setting
``OVLK_DISABLE_NUMBA=1`` forces the pure-numpy path (useful for debugging
and for the benchmark). The choice is made once, at import time.
"""
import os

ENV_FLAG = "OVLK_DISABLE_NUMBA"


def _disabled():
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


if _disabled():
    from . import _kernels_numpy as kernels

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as kernels
    except ImportError:  # pragma: no cover - numba missing
        from . import _kernels_numpy as kernels

        BACKEND = "numpy"
    else:
        BACKEND = "numba"

__all__ = ["BACKEND", "ENV_FLAG", "kernels"]

"""Backend selection for the compiled kernels.

Numba is used when it imports cleanly and ``QTFA_NO_NUMBA`` is unset (or "0").
Setting ``QTFA_NO_NUMBA=1`` forces the pure-numpy path everywhere; the choice
is made once at import time.  ``QTFA_THREADS`` caps numba's thread pool.
"""

from __future__ import annotations

import logging
import os
import warnings

logger = logging.getLogger(__name__)


def _flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() not in ("", "0", "false", "no")


HAVE_NUMBA = False
if not _flag("QTFA_NO_NUMBA"):
    try:
        import numba  # noqa: F401

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        logger.warning("numba unavailable, falling back to numpy kernels")

if HAVE_NUMBA:
    from numba import njit, prange

    # an old system TBB makes numba warn once and fall back to another layer
    warnings.filterwarnings("ignore", message="The TBB threading layer")

    _threads = os.environ.get("QTFA_THREADS")
    if _threads:
        import numba

        numba.set_num_threads(max(1, min(int(_threads), numba.config.NUMBA_NUM_THREADS)))
else:

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

    prange = range


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"

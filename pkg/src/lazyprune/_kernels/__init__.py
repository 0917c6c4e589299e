"""Kernel lane selection.

The hot scalar kernels exist twice: a compiled Cython extension
(``ckernels``) and a pure-Python mirror (``pykernels``).  Both produce
bitwise-identical results; the compiled lane is picked automatically when
built.  Set ``LAZYPRUNE_KERNELS=pure`` or ``=compiled`` to force a lane
(``compiled`` raises if the extension is unavailable).
"""

import os

from . import pykernels

_choice = os.environ.get("LAZYPRUNE_KERNELS", "auto").strip().lower() or "auto"

if _choice in ("auto", "compiled"):
    try:
        from . import ckernels as _active

        LANE = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "LAZYPRUNE_KERNELS=compiled but the ckernels extension is not built"
            ) from None
        _active = pykernels
        LANE = "pure"
elif _choice == "pure":
    _active = pykernels
    LANE = "pure"
else:
    raise ValueError(f"unrecognized LAZYPRUNE_KERNELS value: {_choice!r}")

matmul_classical = _active.matmul_classical
cholesky_lower = _active.cholesky_lower
invert_lower = _active.invert_lower
lower_cross = _active.lower_cross
sort_desc = _active.sort_desc


def lane() -> str:
    """Name of the active kernel lane: 'compiled' or 'pure'."""
    return LANE

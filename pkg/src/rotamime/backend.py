"""Selects the kernel implementation for the hot loops.

numba is used when it imports and ``ROTAMIME_DISABLE_JIT`` is unset (or set to
0/false/no). Otherwise the vectorized numpy kernels run. Both expose
``advance``, ``trajectory``, ``scan_block`` and ``basin_block`` with identical
signatures; ``step`` and ``g`` are scalar-callable in both.
"""
import os

from . import _np

EOS, ARCTAN, ERF = _np.EOS, _np.ARCTAN, _np.ERF
MAP_F, MAP_G, MAP_HYBRID = _np.MAP_F, _np.MAP_G, _np.MAP_HYBRID

KERNEL_CODES = {"eos": EOS, "arctan": ARCTAN, "erf": ERF}
MAP_CODES = {"F": MAP_F, "G": MAP_G, "hybrid": MAP_HYBRID}


def _jit_requested():
    flag = os.environ.get("ROTAMIME_DISABLE_JIT", "").strip().lower()
    return flag in ("", "0", "false", "no")


USE_JIT = False
if _jit_requested():
    try:
        from . import _nb as _impl

        USE_JIT = True
    except ImportError:  # numba missing
        _impl = _np
else:
    _impl = _np

NAME = "numba" if USE_JIT else "numpy"

advance = _impl.advance
trajectory = _impl.trajectory
scan_block = _impl.scan_block
basin_block = _impl.basin_block

"""Kernel backend selection.

Hot loops are written once as plain Python functions and compiled with
numba when it is available. Setting BANDITLAB_NUMBA=0 (or a failed numba
import) switches every kernel to the uncompiled fallback, which produces
bit-identical results, just slower.
"""

import os

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF

_want_numba = os.environ.get("BANDITLAB_NUMBA", "1") != "0"

if _want_numba:
    try:
        import numba

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False

if NUMBA_ENABLED:

    def jit_kernel(fn):
        return numba.njit(cache=True)(fn)

    # Inside compiled code U64 is a real cast; unsigned arithmetic then
    # wraps mod 2**64 on its own.
    U64 = np.uint64

    def as_key(x):
        # Keys must enter compiled code as uint64. A bare Python int below
        # 2**63 would be typed int64 and poison the unsigned arithmetic.
        return np.uint64(int(x) & MASK64)

else:

    def jit_kernel(fn):
        return fn

    def U64(x):
        return x & MASK64

    def as_key(x):
        return int(x) & MASK64


def backend_name():
    return "numba" if NUMBA_ENABLED else "python"

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-segment detrended-variance kernel.

Hot loop of the fluctuation analysis: for every non-overlapping segment of
the profile, project onto the precomputed orthonormal polynomial basis and
accumulate the squared residual. Fused projection and accumulation, no
temporaries; sums run in fixed index order so results are deterministic.
"""

import numpy as np

DEF MAX_BASIS = 16


def segment_variances(const double[::1] profile, Py_ssize_t scale,
                      const double[:, ::1] basis, bint bidirectional):
    cdef Py_ssize_t n_total = profile.shape[0]
    cdef Py_ssize_t p = basis.shape[1]
    if basis.shape[0] != scale:
        raise ValueError("basis rows must equal the segment length")
    if p > MAX_BASIS:
        raise ValueError("polynomial basis too wide for the compiled kernel")

    cdef Py_ssize_t ns = n_total // scale
    cdef Py_ssize_t nblocks = 2 if bidirectional else 1
    out_arr = np.empty(ns * nblocks, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double coef[MAX_BASIS]
    cdef Py_ssize_t b, i, j, k, start
    cdef double acc, r, s

    with nogil:
        for b in range(nblocks):
            for i in range(ns):
                start = i * scale if b == 0 else n_total - (ns - i) * scale
                for j in range(p):
                    s = 0.0
                    for k in range(scale):
                        s += basis[k, j] * profile[start + k]
                    coef[j] = s
                acc = 0.0
                for k in range(scale):
                    r = profile[start + k]
                    for j in range(p):
                        r -= basis[k, j] * coef[j]
                    acc += r * r
                out[b * ns + i] = acc / scale
    return out_arr

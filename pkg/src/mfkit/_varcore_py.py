"""NumPy fallback for the per-segment detrended-variance kernel.

Same contract as the compiled version in ``_varcore.pyx``: given a profile,
a segment length and an orthonormal polynomial basis for that length, return
the mean squared detrending residual of every segment. Segment order is the
forward pass first, then (if bidirectional) the trailing-aligned pass.
"""

from __future__ import annotations

import numpy as np


def segment_variances(
    profile: np.ndarray, scale: int, basis: np.ndarray, bidirectional: bool
) -> np.ndarray:
    n_total = profile.shape[0]
    ns = n_total // scale
    used = ns * scale
    blocks = [profile[:used]]
    if bidirectional:
        blocks.append(profile[n_total - used :])
    out = []
    for block in blocks:
        seg = block.reshape(ns, scale)
        coef = seg @ basis
        resid = seg - coef @ basis.T
        out.append(np.einsum("ij,ij->i", resid, resid) / scale)
    return np.concatenate(out)

"""Backend selection for the Monte-Carlo and grid-sup inner loops.

The compiled extension is preferred when it imported cleanly; the numpy
implementations below are the reference semantics.  Set
SLOWENT_NO_SPEEDUPS=1 to force the fallback (the benchmark does).
"""

from __future__ import annotations

import os

import numpy as np

_CHUNK = 8192


def _batch_sup_numpy(mats: np.ndarray, ys: np.ndarray) -> np.ndarray:
    out = np.empty(ys.shape[0])
    for lo in range(0, ys.shape[0], _CHUNK):
        block = ys[lo : lo + _CHUNK]
        vals = np.einsum("gij,sj->sgi", mats, block)
        out[lo : lo + _CHUNK] = np.abs(vals).max(axis=(1, 2))
    return out


def _accept_mask_numpy(mats: np.ndarray, ys: np.ndarray, eta: float) -> np.ndarray:
    return (_batch_sup_numpy(mats, ys) <= eta).astype(np.uint8)


if os.environ.get("SLOWENT_NO_SPEEDUPS"):
    _impl = None
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = None

if _impl is not None:
    BACKEND = "cython"

    def batch_sup(mats: np.ndarray, ys: np.ndarray) -> np.ndarray:
        return _impl.batch_sup(
            np.ascontiguousarray(mats), np.ascontiguousarray(ys)
        )

    def accept_mask(mats: np.ndarray, ys: np.ndarray, eta: float) -> np.ndarray:
        return _impl.accept_mask(
            np.ascontiguousarray(mats), np.ascontiguousarray(ys), float(eta)
        )

else:
    BACKEND = "numpy"
    batch_sup = _batch_sup_numpy
    accept_mask = _accept_mask_numpy

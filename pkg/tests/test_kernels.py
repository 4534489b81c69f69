import numpy as np

from slowent import kernels
from slowent.kernels import _accept_mask_numpy, _batch_sup_numpy, accept_mask, batch_sup


def seeded_batch(seed=0, G=40, n=5, S=3000):
    rng = np.random.default_rng(seed)
    mats = rng.normal(size=(G, n, n))
    ys = rng.normal(size=(S, n))
    return mats, ys


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "numpy")


def test_batch_sup_matches_reference():
    mats, ys = seeded_batch()
    fast = batch_sup(mats, ys)
    ref = _batch_sup_numpy(mats, ys)
    assert np.allclose(fast, ref, rtol=1e-12, atol=0)


def test_accept_mask_matches_reference():
    mats, ys = seeded_batch(seed=1)
    eta = float(np.median(_batch_sup_numpy(mats, ys)))
    fast = accept_mask(mats, ys, eta)
    ref = _accept_mask_numpy(mats, ys, eta)
    assert (fast == ref).all()
    assert 0 < fast.sum() < len(ys)


def test_non_contiguous_input_handled():
    mats, ys = seeded_batch(seed=2)
    strided = ys[::2]
    assert np.allclose(batch_sup(mats, strided), _batch_sup_numpy(mats, strided))


def test_rectangular_transform_columns():
    # mats may be (G, n, m) after folding a coordinate transform
    rng = np.random.default_rng(3)
    mats = rng.normal(size=(10, 4, 6))
    ys = rng.normal(size=(100, 6))
    ref = np.abs(np.einsum("gij,sj->sgi", mats, ys)).max(axis=(1, 2))
    assert np.allclose(batch_sup(mats, ys), ref)

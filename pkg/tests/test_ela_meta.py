import numpy as np
import pytest

from optscape.design import DegenerateSampleError
from optscape.ela import FEATURE_NAMES, compute_all
from optscape.ela.meta import features_meta


def test_exact_linear_model_recovered():
    rng = np.random.default_rng(0)
    X = rng.uniform(size=(80, 2))
    z = 3.0 * X[:, 0] - 2.0 * X[:, 1] + 0.5
    f = features_meta(X, z)
    assert f["ela_meta.lin_simple.adj_r2"] == pytest.approx(1.0, abs=1e-9)
    assert f["ela_meta.lin_w_interact.adj_r2"] == pytest.approx(1.0, abs=1e-9)
    assert f["ela_meta.lin_simple.intercept"] == pytest.approx(0.5, abs=1e-9)
    assert f["ela_meta.lin_simple.coef.min"] == pytest.approx(2.0, abs=1e-9)
    assert f["ela_meta.lin_simple.coef.max"] == pytest.approx(3.0, abs=1e-9)
    assert f["ela_meta.lin_simple.coef.max_by_min"] == pytest.approx(1.5, abs=1e-9)


def test_exact_quadratic_conditioning_ratio():
    rng = np.random.default_rng(1)
    X = rng.uniform(size=(120, 2))
    z = 4.0 * (X[:, 0] - 0.5) ** 2 + (X[:, 1] - 0.5) ** 2
    f = features_meta(X, z)
    assert f["ela_meta.quad_simple.adj_r2"] == pytest.approx(1.0, abs=1e-9)
    assert f["ela_meta.quad_w_interact.adj_r2"] == pytest.approx(1.0, abs=1e-9)
    assert f["ela_meta.quad_simple.cond"] == pytest.approx(4.0, abs=1e-6)


def test_adjusted_r2_bounded_above_by_one():
    rng = np.random.default_rng(2)
    X = rng.uniform(size=(100, 3))
    z = rng.normal(size=100)
    f = features_meta(X, z)
    for key in (
        "ela_meta.lin_simple.adj_r2",
        "ela_meta.lin_w_interact.adj_r2",
        "ela_meta.quad_simple.adj_r2",
        "ela_meta.quad_w_interact.adj_r2",
    ):
        assert f[key] <= 1.0


def test_too_small_sample_raises():
    X = np.random.default_rng(3).uniform(size=(5, 3))
    z = np.arange(5.0)
    with pytest.raises(DegenerateSampleError):
        features_meta(X, z)


def test_catalog_order_and_finiteness():
    rng = np.random.default_rng(4)
    X = rng.uniform(size=(150, 3))
    z = (X ** 2).sum(axis=1) + 0.1 * np.sin(13 * X[:, 0])
    from optscape.design import standardize_y

    feats = compute_all(X, standardize_y(z))
    assert tuple(feats.keys()) == FEATURE_NAMES
    assert len(feats) == 38
    assert all(np.isfinite(v) for v in feats.values())

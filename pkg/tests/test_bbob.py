import math

import numpy as np
import pytest

from optscape.bbob import (
    SUITE_DIMS,
    VALID_FIDS,
    VALID_IIDS,
    full_suite,
    instance_seed,
    make_instance,
    rotation_matrix,
    t_asy,
    t_osz,
)
from optscape.domains import DomainError


def _osz_scalar(v):
    # independent scalar route for the oscillation warp
    if v == 0.0:
        return 0.0
    xhat = math.log(abs(v))
    if v > 0:
        c1, c2 = 10.0, 7.9
    else:
        c1, c2 = 5.5, 3.1
    s = 1.0 if v > 0 else -1.0
    return s * math.exp(xhat + 0.049 * (math.sin(c1 * xhat) + math.sin(c2 * xhat)))


def test_t_osz_matches_scalar_route():
    rng = np.random.default_rng(0)
    x = rng.uniform(-10, 10, size=200)
    x[0] = 0.0
    want = np.array([_osz_scalar(v) for v in x])
    np.testing.assert_allclose(t_osz(x), want, rtol=0, atol=1e-14)


def test_t_asy_identity_on_nonpositive():
    Z = np.array([[-1.0, 0.0, -3.5]])
    np.testing.assert_array_equal(t_asy(Z, 0.5), Z)


def test_rotation_is_orthogonal_and_deterministic():
    for d in (2, 3, 5, 10):
        M = rotation_matrix(np.random.default_rng(42), d)
        assert np.abs(M @ M.T - np.eye(d)).max() <= 1e-12
    a = rotation_matrix(np.random.default_rng(5), 4)
    b = rotation_matrix(np.random.default_rng(5), 4)
    np.testing.assert_array_equal(a, b)


def test_seed_formula():
    assert instance_seed(3, 2, 5) == 3_002_005
    assert instance_seed(24, 5, 40) == 24_005_040


def test_separable_ellipsoid_dual_route():
    # independent scalar-loop implementation of the f2 definition
    inst = make_instance(2, 1, 5)
    rng = np.random.default_rng(1)
    X = rng.uniform(-5, 5, size=(50, 5))
    scales = [10 ** (6 * i / 4) for i in range(5)]
    for x, got in zip(X, inst.evaluate_many(X)):
        want = inst.fopt
        for i in range(5):
            want += scales[i] * _osz_scalar(x[i] - inst.xopt[i]) ** 2
        assert got == pytest.approx(want, rel=1e-12, abs=1e-9)


@pytest.mark.parametrize("fid", VALID_FIDS)
@pytest.mark.parametrize("dim", [2, 5])
def test_instance_invariants(fid, dim):
    inst = make_instance(fid, 1, dim)
    assert inst.dim == dim
    assert np.abs(inst.xopt).max() <= 4.0
    assert -1000.0 <= inst.fopt <= 1000.0
    assert abs(inst.evaluate(inst.xopt) - inst.fopt) <= 1e-9
    X = np.random.default_rng(fid * 100 + dim).uniform(-5, 5, size=(500, dim))
    y = inst.evaluate_many(X)
    assert np.isfinite(y).all()
    assert (y >= inst.fopt - 1e-9).all()


def test_instances_reproduce_bitwise():
    a = make_instance(17, 3, 5)
    b = make_instance(17, 3, 5)
    np.testing.assert_array_equal(a.xopt, b.xopt)
    assert a.fopt == b.fopt
    X = np.random.default_rng(2).uniform(-5, 5, size=(20, 5))
    np.testing.assert_array_equal(a.evaluate_many(X), b.evaluate_many(X))


@pytest.mark.parametrize("fid", [1, 5, 20, 24])
def test_instances_differ_across_iids(fid):
    xopts = [make_instance(fid, iid, 2).xopt for iid in VALID_IIDS]
    for i in range(len(xopts)):
        for j in range(i + 1, len(xopts)):
            assert not np.array_equal(xopts[i], xopts[j])


def test_invalid_identifiers_rejected():
    with pytest.raises(ValueError):
        make_instance(0, 1, 2)
    with pytest.raises(ValueError):
        make_instance(25, 1, 2)
    with pytest.raises(ValueError):
        make_instance(1, 0, 2)
    with pytest.raises(ValueError):
        make_instance(1, 6, 2)
    with pytest.raises(ValueError):
        make_instance(1, 1, 1)


def test_evaluate_rejects_bad_points():
    inst = make_instance(1, 1, 3)
    with pytest.raises(DomainError):
        inst.evaluate(np.array([0.0, 0.0]))
    with pytest.raises(DomainError):
        inst.evaluate(np.array([0.0, np.nan, 0.0]))


def test_suite_enumeration():
    ids = [inst.problem_id for inst in full_suite()]
    assert len(ids) == 24 * 5 * 3
    assert len(set(ids)) == len(ids)
    assert ids[0] == "bbob_f01_i01_d02"
    assert ids == [inst.problem_id for inst in full_suite()]
    assert SUITE_DIMS == (2, 3, 5)


def test_domain_is_standard_box():
    inst = make_instance(8, 2, 3)
    assert inst.domain.lower.tolist() == [-5.0] * 3
    assert inst.domain.upper.tolist() == [5.0] * 3

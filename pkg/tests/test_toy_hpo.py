import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optscape.hpo import (
    DATASETS,
    InvalidProbabilitiesError,
    ToyHpoProblem,
    fold_assignment,
    load_dataset,
    logloss,
    toy_problem_grid,
    validate_probabilities,
)


def test_logloss_reference_values():
    # uniform two-class prediction scores ln 2
    P = np.full((10, 2), 0.5)
    labels = np.zeros(10, dtype=int)
    assert logloss(P, labels) == pytest.approx(math.log(2), rel=1e-12)
    # true-class probability 0.25 scores ln 4
    P = np.column_stack([np.full(6, 0.25), np.full(6, 0.75)])
    assert logloss(P, np.zeros(6, dtype=int)) == pytest.approx(math.log(4), rel=1e-12)
    # a perfect prediction is clamped, not zero
    P = np.column_stack([np.ones(4), np.zeros(4)])
    assert logloss(P, np.zeros(4, dtype=int)) == pytest.approx(
        -math.log(1 - 1e-15), rel=1e-6
    )
    # a confidently wrong prediction is clamped to -ln(1e-15)
    assert logloss(P, np.ones(4, dtype=int)) == pytest.approx(
        -math.log(1e-15), rel=1e-12
    )


def test_logloss_rejects_bad_rows():
    with pytest.raises(InvalidProbabilitiesError):
        logloss(np.array([[0.6, 0.6]]), np.array([0]))
    with pytest.raises(InvalidProbabilitiesError):
        logloss(np.array([[0.5, 0.5]]), np.array([2]))
    with pytest.raises(InvalidProbabilitiesError):
        logloss(np.array([[np.nan, 1.0]]), np.array([0]))
    # a tiny row-sum violation is tolerated
    validate_probabilities(np.array([[0.5 + 4e-7, 0.5]]))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_logloss_row_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    P = rng.dirichlet(np.ones(3), size=30)
    labels = rng.integers(0, 3, size=30)
    perm = rng.permutation(30)
    assert logloss(P, labels) == pytest.approx(
        logloss(P[perm], labels[perm]), rel=1e-12
    )


def test_datasets_load_within_contract():
    for name in DATASETS:
        ds = load_dataset(name)
        assert len(ds.X) <= 500
        assert ds.X.shape[1] <= 20
        assert 2 <= ds.n_classes <= 6
        assert set(np.unique(ds.y)) == set(range(ds.n_classes))
        # z-scored columns
        assert np.abs(ds.X.mean(axis=0)).max() < 1e-9


def test_fold_assignment_is_frozen_and_balanced():
    f1 = fold_assignment(240, "linsep2")
    f2 = fold_assignment(240, "linsep2")
    np.testing.assert_array_equal(f1, f2)
    counts = np.bincount(f1, minlength=10)
    assert counts.max() - counts.min() <= 1
    assert not np.array_equal(f1, fold_assignment(240, "blobs3"))


def test_zero_iteration_corner_scores_ln_classes():
    for name in DATASETS:
        prob = ToyHpoProblem(name, 2)
        lo = prob.domain.lower
        val = prob.evaluate(lo)  # iters rounds to 0 at the lower corner
        g = prob.metadata["n_classes"]
        assert abs(val - math.log(g)) <= 1e-9, name


def test_training_beats_uniform_on_separable_data():
    prob = ToyHpoProblem("linsep2", 3)
    # moderate learning rate, many iterations, tiny L2
    z = np.array([math.log(500), math.log(0.5), -7.0])
    val = prob.evaluate(z)
    assert val < math.log(2)


def test_evaluation_is_bitwise_deterministic():
    prob_a = ToyHpoProblem("blobs3", 5)
    prob_b = ToyHpoProblem("blobs3", 5)
    rng = np.random.default_rng(4)
    for _ in range(3):
        z = rng.uniform(prob_a.domain.lower, prob_a.domain.upper)
        assert prob_a.evaluate(z) == prob_b.evaluate(z)


def test_evaluation_matches_pooled_logloss_when_training_converges():
    # assemble the cross-validated prediction matrix by hand and score it
    # with logloss(); evaluate() must agree exactly on a stable config
    from optscape.hpo.toy import N_FOLDS, predict_probabilities, train_logistic

    prob = ToyHpoProblem("linsep2", 2)
    z = np.array([math.log(80), math.log(0.2)])
    params = prob.space.to_eval_space(z)
    data = prob.dataset
    P = np.empty((len(data.X), data.n_classes))
    for f in range(N_FOLDS):
        held = prob.folds == f
        W = train_logistic(
            data.X[~held],
            data.y[~held],
            data.n_classes,
            iters=params["iters"],
            lr=params["lr"],
            l2=1e-3,
        )
        assert W is not None
        P[held] = predict_probabilities(W, data.X[held])
    assert prob.evaluate(z) == logloss(P, data.y)


def test_diverging_config_scores_clamp_worst_case():
    # a huge learning rate blows up training on every fold; the score is
    # then exactly the clamp ceiling, and stays finite and deterministic
    from optscape.hpo.losses import PROB_EPS
    from optscape.hpo.toy import train_logistic

    prob = ToyHpoProblem("blobs3", 5)
    hot = np.array([math.log(2000), 0.0, 7.0, -7.0, -10.0])
    params = prob.space.to_eval_space(hot)
    data = prob.dataset
    W = train_logistic(
        data.X,
        data.y,
        data.n_classes,
        iters=params["iters"],
        lr=params["lr"],
        l2=params["l2"],
        l1=params["l1"],
        smooth=params["smooth"],
    )
    assert W is None
    assert prob.evaluate(hot) == pytest.approx(-math.log(PROB_EPS))


def test_more_iterations_do_not_hurt_on_blobs():
    prob = ToyHpoProblem("blobs3", 2)
    few = prob.evaluate(np.array([math.log(5), math.log(0.3)]))
    many = prob.evaluate(np.array([math.log(400), math.log(0.3)]))
    assert many < few


def test_problem_grid_has_nine_members():
    grid = toy_problem_grid()
    assert len(grid) == 9
    assert len({p.problem_id for p in grid}) == 9
    dims = sorted({p.dim for p in grid})
    assert dims == [2, 3, 5]
    assert all(p.problem_class == "hpo" for p in grid)

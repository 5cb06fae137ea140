import numpy as np
import pytest

from amar.estimation import refit_scales
from amar.exceptions import InsufficientDataError, InsufficientHistoryError, SingularDesignError
from amar.models import AmarModel, InnovationSpec
from amar.mvar import (
    AmvarModel,
    amvar_fit_given_scales,
    amvar_predict_next,
    amvar_rolling_predictions,
    union_scale_selection,
)
from amar.simulate import simulate


def two_independent_series(T, seeds=(5, 6)):
    x1 = simulate(AmarModel((1, 3), (0.3, 0.6), InnovationSpec(seed=seeds[0])), T)
    x2 = simulate(AmarModel((2, 5), (1.9, -1.0), InnovationSpec(seed=seeds[1])), T)
    return np.column_stack((x1, x2))


def test_model_validation():
    with pytest.raises(ValueError):
        AmvarModel((1, 3), (np.eye(2),), 2)  # one matrix missing
    with pytest.raises(ValueError):
        AmvarModel((1,), (np.eye(3),), 2)  # wrong shape


def test_fit_reduces_to_univariate_refit_when_d_is_1():
    x = simulate(AmarModel((1, 3), (0.3, 0.6), InnovationSpec(seed=11)), 2000)
    model, _ = amvar_fit_given_scales(x[:, None], (1, 3))
    alpha, _ = refit_scales(x, (1, 3))
    assert np.allclose([m[0, 0] for m in model.coeff_mats], alpha, atol=1e-10)


def test_fit_block_diagonal_recovery():
    X = two_independent_series(100_000)
    model, cov = amvar_fit_given_scales(X, (1, 2, 3, 5))
    for mat in model.coeff_mats:
        assert abs(mat[0, 1]) < 0.05
        assert abs(mat[1, 0]) < 0.05
    assert cov.shape == (2, 2)
    assert abs(cov[0, 1]) < 0.05


def test_cross_coefficients_shrink_with_t():
    sizes = (1000, 10_000, 100_000)
    offdiag = []
    for T in sizes:
        model, _ = amvar_fit_given_scales(two_independent_series(T), (1, 3, 5))
        offdiag.append(max(abs(m[0, 1]) + abs(m[1, 0]) for m in model.coeff_mats))
    assert offdiag[2] < offdiag[0]


def test_fit_data_requirements():
    with pytest.raises(InsufficientDataError):
        amvar_fit_given_scales(np.zeros((15, 2)), (1, 3, 5))
    with pytest.raises(ValueError):
        amvar_fit_given_scales(np.zeros((100, 2)), ())


def test_collinear_design_names_pair():
    X = two_independent_series(500)
    X = np.column_stack((X[:, 0], X[:, 0]))  # duplicated component
    with pytest.raises(SingularDesignError) as err:
        amvar_fit_given_scales(X, (1, 3))
    assert "component" in str(err.value)


def test_union_scale_selection():
    X = two_independent_series(3000)
    scales = union_scale_selection(X)
    assert scales == tuple(sorted(set(scales)))
    assert set((1, 3)) <= set(scales) or set((2, 5)) <= set(scales)


def test_union_of_explicit_sets():
    # merging per-component detections is a plain sorted union
    assert tuple(sorted({1, 10} | {11})) == (1, 10, 11)


def test_predict_next_identity_matrix_over_scale_one():
    model = AmvarModel((1,), (np.eye(2) / 2,), 2)
    out = amvar_predict_next(model, np.array([[0.0, 0.0], [2.0, 4.0]]))
    assert np.allclose(out, (1.0, 2.0))


def test_predict_block_diagonal_equals_univariate():
    from amar.forecast import predict_next

    mats = (np.diag([0.3, 0.2]), np.diag([0.6, 0.4]))
    model = AmvarModel((1, 3), mats, 2)
    H = np.array([[1.0, 2.0], [0.5, -1.0], [2.0, 0.0]])
    out = amvar_predict_next(model, H)
    for j in range(2):
        uni = predict_next(((1, 3), (mats[0][j, j], mats[1][j, j])), H[:, j])
        assert out[j] == pytest.approx(uni)


def test_predict_short_history():
    model = AmvarModel((1, 4), (np.eye(2), np.eye(2)), 2)
    with pytest.raises(InsufficientHistoryError):
        amvar_predict_next(model, np.zeros((3, 2)))


def test_permutation_equivariance():
    X = two_independent_series(5000)
    scales = (1, 3, 5)
    model, _ = amvar_fit_given_scales(X, scales)
    swapped, _ = amvar_fit_given_scales(X[:, ::-1], scales)
    P = np.array([[0.0, 1.0], [1.0, 0.0]])
    for a, b in zip(model.coeff_mats, swapped.coeff_mats):
        assert np.allclose(P @ a @ P, b, atol=1e-8)
    pred = amvar_predict_next(model, X)
    pred_swapped = amvar_predict_next(swapped, X[:, ::-1])
    assert np.allclose(pred, pred_swapped[::-1], atol=1e-8)


def test_rolling_predictions_match_stepwise():
    X = two_independent_series(300)
    model, _ = amvar_fit_given_scales(X[:250], (1, 3))
    pred = amvar_rolling_predictions(model, X[250:], X[:250])
    for i in range(50):
        step = amvar_predict_next(model, X[: 250 + i])
        assert np.allclose(pred[i], step, atol=1e-10)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amar.exceptions import InsufficientHistoryError
from amar.forecast import (
    hit_rate,
    predict_next,
    rolling_mspe,
    rolling_predictions,
    rolling_rmspe,
)
from amar.models import AmarModel, InnovationSpec
from amar.simulate import simulate


def test_predict_next_single_lag():
    assert predict_next(((1,), (0.9,)), [5.0, 2.0]) == pytest.approx(1.8)


def test_predict_next_two_scales_hand_computed():
    # 0.3 * last + 0.6 * mean(last three)
    assert predict_next(((1, 3), (0.3, 0.6)), [1.0, 1.0, 1.0]) == pytest.approx(0.9)
    assert predict_next(((1, 3), (0.3, 0.6)), [0.0, 3.0, 1.0]) == pytest.approx(
        0.3 * 1.0 + 0.6 * (4.0 / 3.0)
    )


def test_predict_next_null_model():
    assert predict_next(((), ()), [1.0, 2.0]) == 0.0


def test_predict_next_accepts_model_objects():
    m = AmarModel((1, 3), (0.3, 0.6))
    assert predict_next(m, [1.0, 1.0, 1.0]) == pytest.approx(0.9)


def test_predict_next_short_history():
    with pytest.raises(InsufficientHistoryError):
        predict_next(((1, 5), (0.2, 0.3)), [1.0, 2.0])


@given(
    st.lists(st.floats(-3, 3), min_size=4, max_size=10),
    st.lists(st.floats(-3, 3), min_size=10, max_size=10),
    st.floats(-4, 4),
    st.floats(-4, 4),
)
@settings(max_examples=100, deadline=None)
def test_predict_next_linearity(h, g, a, b):
    h = np.asarray(h[:4])
    g = np.asarray(g[:4])
    model = ((1, 4), (0.5, -0.3))
    combined = predict_next(model, a * h + b * g)
    assert combined == pytest.approx(
        a * predict_next(model, h) + b * predict_next(model, g), rel=1e-9, abs=1e-9
    )


def test_rolling_predictions_match_pointwise():
    rng = np.random.default_rng(1)
    history = rng.normal(size=20)
    test = rng.normal(size=7)
    model = ((1, 3), (0.3, 0.6))
    pred = rolling_predictions(model, test, history)
    full = np.concatenate((history, test))
    for i in range(7):
        assert pred[i] == pytest.approx(predict_next(model, full[: 20 + i]))


def test_perfect_model_on_noiseless_recursion():
    model = AmarModel((1,), (0.9,))
    x = np.empty(50)
    x[0] = 1.0
    for t in range(1, 50):
        x[t] = 0.9 * x[t - 1]
    assert rolling_mspe(model, x[30:], x[:30]) == pytest.approx(0.0, abs=1e-20)
    assert hit_rate(model, x[30:], x[:30]) == 1.0


def test_null_model_mspe_is_mean_square():
    test = np.array([1.0, -2.0, 3.0])
    assert rolling_mspe(((), ()), test, np.zeros(5)) == pytest.approx(
        np.mean(test**2)
    )


def test_rmspe_is_sqrt_of_mspe():
    rng = np.random.default_rng(3)
    history, test = rng.normal(size=30), rng.normal(size=10)
    model = ((1, 2), (0.4, 0.2))
    assert rolling_rmspe(model, test, history) == math.sqrt(
        rolling_mspe(model, test, history)
    )


def test_hit_rate_zero_prediction_rule():
    # a flat-zero predictor scores only on exact zero realisations
    assert hit_rate(((), ()), np.array([1.0, 2.0, 3.0]), np.zeros(3)) == 0.0
    assert hit_rate(((), ()), np.array([0.0, 1.0]), np.zeros(3)) == 0.5


def test_true_model_mspe_approaches_noise_variance():
    m = AmarModel((1, 3), (0.3, 0.6), InnovationSpec(seed=99))
    x = simulate(m, 11_000)
    ratio = rolling_mspe(m, x[1000:], x[:1000])
    assert abs(ratio - 1.0) < 0.05  # sigma^2 = 1


def test_empty_test_segment_rejected():
    with pytest.raises(ValueError):
        rolling_mspe(((1,), (0.5,)), np.array([]), np.ones(3))

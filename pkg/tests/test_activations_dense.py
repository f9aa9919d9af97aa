import numpy as np
import pytest

from rustcast.errors import ShapeMismatch
from rustcast.nn.activations import relu, relu_grad, sigmoid, sigmoid_grad, softplus
from rustcast.nn.dense import DenseLayer, dense_backward, dense_forward


def test_relu_examples():
    np.testing.assert_array_equal(relu(np.array([[-1.0, 2.0]])), [[0.0, 2.0]])
    z = np.zeros((3, 4))
    np.testing.assert_array_equal(relu(z), z)
    assert relu(z).shape == z.shape


def test_relu_subgradient_convention():
    np.testing.assert_array_equal(relu_grad(np.array([3.0, -3.0, 0.0])), [1.0, 0.0, 0.0])


def test_sigmoid_values():
    assert sigmoid(0.0) == 0.5
    with np.errstate(over="raise"):
        assert abs(sigmoid(710.0) - 1.0) < 1e-12
        assert sigmoid(-710.0) >= 0.0
        out = sigmoid(np.array([-1e308, 1e308, 0.0]))
    np.testing.assert_array_equal(out, [0.0, 1.0, 0.5])


def test_sigmoid_derivative_matches_finite_difference():
    h = 1e-6
    fd = (sigmoid(0.3 + h) - sigmoid(0.3 - h)) / (2 * h)
    assert abs(sigmoid_grad(0.3) - fd) < 1e-8


def test_softplus_stable():
    assert softplus(np.array(1000.0)) == 1000.0
    assert softplus(np.array(-1000.0)) == 0.0
    assert softplus(np.array(0.0)) == pytest.approx(np.log(2.0))


def test_dense_identity():
    layer = DenseLayer(np.eye(2), np.zeros(2))
    np.testing.assert_array_equal(dense_forward(layer, np.array([[3.0, 4.0]])), [[3.0, 4.0]])


def test_dense_hand_multiplication():
    layer = DenseLayer(np.array([[1.0, 2.0], [3.0, 4.0]]), np.array([1.0, 1.0]))
    np.testing.assert_array_equal(dense_forward(layer, np.array([[1.0, 1.0]])), [[4.0, 8.0]])


def test_dense_shape_mismatch():
    layer = DenseLayer(np.eye(2), np.zeros(2))
    with pytest.raises(ShapeMismatch):
        dense_forward(layer, np.ones((1, 3)))


def test_dense_backward_shapes(rng):
    layer = DenseLayer(rng.normal(size=(3, 5)), rng.normal(size=3))
    x = rng.normal(size=(4, 5))
    dW, db, dx = dense_backward(layer, x, rng.normal(size=(4, 3)))
    assert dW.shape == (3, 5) and db.shape == (3,) and dx.shape == (4, 5)

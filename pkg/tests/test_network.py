import json

import numpy as np
import pytest

from polyreach.network import (NO_CONNECTION, NUM_CODES, ConvMeta, LayerSpec, NetworkFormatError, NetworkSpec,
                               dequantize, lower_conv, nominal_forward, predict, quantize)


def conv_direct(x, weights, bias, stride=1):
    """Reference valid convolution; x (c, h, w), weights (out_c, in_c, kh, kw)."""
    out_c, _, kh, kw = weights.shape
    _, H, W = x.shape
    oh, ow = (H - kh) // stride + 1, (W - kw) // stride + 1
    out = np.empty((out_c, oh, ow))
    for o in range(out_c):
        for i in range(oh):
            for j in range(ow):
                patch = x[:, i * stride : i * stride + kh, j * stride : j * stride + kw]
                out[o, i, j] = np.sum(patch * weights[o]) + bias[o]
    return out


def test_dequantize_examples():
    assert dequantize(0) == -2.0
    assert dequantize(63) == 2.0
    assert dequantize(31) == pytest.approx(-0.031746, abs=1e-6)
    assert dequantize(NO_CONNECTION) == 0.0


def test_dequantize_out_of_range():
    with pytest.raises(ValueError):
        dequantize(64)


def test_quantize_round_trip():
    codes = np.arange(NUM_CODES)
    np.testing.assert_array_equal(quantize(dequantize(codes)), codes)
    assert np.all(np.diff(dequantize(codes)) > 0)


def dense_net(W_codes, biases, n_in):
    return NetworkSpec(n_in, tuple(LayerSpec("dense", c, b) for c, b in zip(W_codes, biases)))


def test_nominal_forward_single_layer():
    net = dense_net([[[63, 0]]], [[0.5]], 2)  # weights (2, -2)
    np.testing.assert_allclose(nominal_forward(net, [1.0, 0.25]), [2.0])
    np.testing.assert_allclose(nominal_forward(net, [0.0, 1.0]), [0.0])  # final relu


def test_nominal_forward_hidden_relu():
    net = dense_net([[[63], [0]], [[63, 63]]], [[0.0, 0.0], [0.0]], 1)
    y, hidden = nominal_forward(net, [1.0], return_hidden=True)
    np.testing.assert_allclose(hidden[0], [2.0, -2.0])
    np.testing.assert_allclose(y, [4.0])


def test_predict():
    assert predict(np.array([0.1, 0.7, 0.2])) == 1
    assert predict(np.array([0.3, 0.3])) == 0
    assert predict(np.array([0.6])) == 1
    assert predict(np.array([0.5])) == 0


def test_conv_ones_filter():
    meta = ConvMeta(in_h=3, in_w=3, in_c=1, kernel_h=2, kernel_w=2, out_c=1, stride=1)
    layer = LayerSpec("conv", np.full((1, 1, 2, 2), 63), [0.0], meta)
    codes, bias = lower_conv(layer)
    assert codes.shape == (4, 9)
    x = np.arange(9.0)
    y = dequantize(codes) @ x + bias
    np.testing.assert_allclose(y, 2 * np.array([8, 12, 20, 24]))
    assert np.sum(codes != NO_CONNECTION) == 16


@pytest.mark.parametrize("seed", range(100))
def test_lower_conv_matches_direct(seed):
    rng = np.random.default_rng(seed)
    in_c, out_c = rng.integers(1, 3, size=2)
    kh, kw = rng.integers(1, 4, size=2)
    stride = int(rng.integers(1, 3))
    H, W = kh + int(rng.integers(0, 5)), kw + int(rng.integers(0, 5))
    meta = ConvMeta(in_h=H, in_w=W, in_c=int(in_c), kernel_h=int(kh), kernel_w=int(kw), out_c=int(out_c),
                    stride=stride)
    wc = rng.integers(0, NUM_CODES, size=(out_c, in_c, kh, kw))
    b = rng.normal(size=out_c)
    layer = LayerSpec("conv", wc, b, meta)
    codes, bias = lower_conv(layer)
    x = rng.normal(size=(in_c, H, W))
    want = conv_direct(x, dequantize(wc), b, stride).reshape(-1)
    np.testing.assert_allclose(dequantize(codes) @ x.reshape(-1) + bias, want, atol=1e-12)


def test_network_json_round_trip(tmp_path):
    meta = ConvMeta(in_h=4, in_w=4, in_c=1, kernel_h=2, kernel_w=2, out_c=2, stride=2)
    net = NetworkSpec(16, (LayerSpec("conv", np.ones((2, 1, 2, 2), int), [0.1, 0.2], meta),
                           LayerSpec("dense", np.zeros((3, 8), int), np.zeros(3))))
    net.save(tmp_path / "n.json")
    back = NetworkSpec.load(tmp_path / "n.json")
    assert json.dumps(back.to_dict()) == json.dumps(net.to_dict())
    assert back.shape == [16, 8, 3]


def test_network_validation():
    with pytest.raises(NetworkFormatError):
        LayerSpec("dense", [[64]], [0.0])
    with pytest.raises(NetworkFormatError):
        dense_net([[[1, 2]], [[1, 2]]], [[0.0], [0.0]], 2)  # 1 output feeding 2 inputs
    with pytest.raises(NetworkFormatError):
        LayerSpec("pool", [[1]], [0.0])

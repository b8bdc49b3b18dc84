"""Synthetic benchmark networks and patterns in the four reference shapes.

No trained weights are available, so networks carry seeded random codes and
patterns are labelled by the nominal network with a few deliberately wrong
labels, which keeps the nominal accuracy below 100%.
"""

from __future__ import annotations

import numpy as np

from .network import BINARY_THRESHOLD, ConvMeta, LayerSpec, NetworkSpec, NUM_CODES, nominal_forward, predict

FIXTURE_NAMES = ("breast_cancer", "iris", "mnist_dense", "mnist_cnn")
# input scale keeping first-layer pre-activations of order one
_INPUT_SCALE = {"breast_cancer": 0.35, "iris": 0.8, "mnist_dense": 0.15, "mnist_cnn": 0.15}
_SIGNED_INPUTS = {"breast_cancer": True, "iris": True, "mnist_dense": False, "mnist_cnn": False}


def _dense(rng: np.random.Generator, n_out: int, n_in: int, bias_scale: float = 0.2) -> LayerSpec:
    codes = rng.integers(0, NUM_CODES, size=(n_out, n_in))
    return LayerSpec("dense", codes, rng.uniform(-bias_scale, bias_scale, n_out))


def build_network(name: str, seed: int = 0) -> NetworkSpec:
    rng = np.random.default_rng([seed, FIXTURE_NAMES.index(name)])
    if name == "breast_cancer":
        out = _dense(rng, 1, 16)
        out = LayerSpec("dense", out.weight_codes, [0.5])
        return NetworkSpec(30, (_dense(rng, 8, 30), _dense(rng, 16, 8), out))
    if name == "iris":
        return NetworkSpec(4, (_dense(rng, 8, 4), _dense(rng, 3, 8)))
    if name == "mnist_dense":
        return NetworkSpec(196, (_dense(rng, 10, 196), _dense(rng, 10, 10)))
    if name == "mnist_cnn":
        meta = ConvMeta(in_h=14, in_w=14, in_c=1, kernel_h=7, kernel_w=7, out_c=1, stride=1)
        conv = LayerSpec("conv", rng.integers(0, NUM_CODES, size=(1, 1, 7, 7)), [0.0], meta)
        return NetworkSpec(196, (conv, _dense(rng, 10, meta.out_dim, 0.5)))
    raise KeyError(f"unknown fixture {name!r}")


def build_patterns(name: str, count: int, seed: int = 0, net: NetworkSpec | None = None,
                   wrong_fraction: float = 0.1) -> tuple[np.ndarray, np.ndarray]:
    """Inputs (count, n0) and labels; about ``wrong_fraction`` of the labels disagree with the nominal net.

    Inputs whose nominal decision is a tie (e.g. every output clamped to zero)
    are skipped, since no label is then unambiguously right.
    """
    net = net or build_network(name, seed)
    rng = np.random.default_rng([seed, FIXTURE_NAMES.index(name), 1])
    scale = _INPUT_SCALE[name]
    low = -1.0 if _SIGNED_INPUTS[name] else 0.0
    X = []
    while len(X) < count:
        x = rng.uniform(low, 1, size=net.input_dim) * scale
        if not _is_tie(nominal_forward(net, x)):
            X.append(x)
    X = np.array(X).reshape(count, net.input_dim)
    n_classes = max(net.output_dim, 2)
    labels = np.array([predict(nominal_forward(net, x)) for x in X], dtype=int)
    flip = rng.random(count) < wrong_fraction
    shift = rng.integers(1, n_classes, size=count)
    labels = np.where(flip, (labels + shift) % n_classes, labels)
    return X, labels


def _is_tie(y: np.ndarray) -> bool:
    if y.shape[0] == 1:
        return bool(y[0] == BINARY_THRESHOLD)
    top = np.sort(y)[-2:]
    return bool(top[0] == top[1])

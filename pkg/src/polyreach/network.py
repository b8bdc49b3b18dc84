"""Nominal quantized network: layer specs, dequantization, conv lowering, forward pass.

Layer semantics follow the analog inference circuit: the first layer passes
its (possibly negative) input straight into the weighted sum, every later
layer applies a ReLU to its input, and a final ReLU stage follows the last
layer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

NUM_CODES = 64
WEIGHT_MIN, WEIGHT_MAX = -2.0, 2.0
STEP = (WEIGHT_MAX - WEIGHT_MIN) / (NUM_CODES - 1)
# marks a connection that does not exist (lowered convolutions)
NO_CONNECTION = -1
# decision threshold for networks with a single output neuron
BINARY_THRESHOLD = 0.5


class NetworkFormatError(ValueError):
    pass


def dequantize(code):
    """Map 6-bit codes onto the uniform grid over [-2, 2]; NO_CONNECTION maps to 0."""
    c = np.asarray(code)
    if not np.issubdtype(c.dtype, np.integer):
        if not np.all(np.equal(np.mod(c, 1), 0)):
            raise ValueError("weight codes must be integers")
        c = c.astype(np.int64)
    if np.any((c < NO_CONNECTION) | (c >= NUM_CODES)):
        raise ValueError(f"weight code out of range [0, {NUM_CODES - 1}]")
    w = np.where(c == NO_CONNECTION, 0.0, WEIGHT_MIN + c * STEP)
    return float(w) if w.ndim == 0 else w


def quantize(weight):
    """Nearest grid code for a real weight (clipped to [-2, 2])."""
    w = np.clip(np.asarray(weight, dtype=float), WEIGHT_MIN, WEIGHT_MAX)
    c = np.rint((w - WEIGHT_MIN) / STEP).astype(np.int64)
    return int(c) if c.ndim == 0 else c


def relu(x):
    return np.maximum(x, 0.0)


@dataclass(frozen=True)
class ConvMeta:
    in_h: int
    in_w: int
    in_c: int
    kernel_h: int
    kernel_w: int
    out_c: int
    stride: int = 1

    @property
    def out_h(self) -> int:
        return (self.in_h - self.kernel_h) // self.stride + 1

    @property
    def out_w(self) -> int:
        return (self.in_w - self.kernel_w) // self.stride + 1

    @property
    def in_dim(self) -> int:
        return self.in_h * self.in_w * self.in_c

    @property
    def out_dim(self) -> int:
        return self.out_h * self.out_w * self.out_c

    def to_dict(self) -> dict:
        return {
            "in_h": self.in_h,
            "in_w": self.in_w,
            "in_c": self.in_c,
            "kernel_h": self.kernel_h,
            "kernel_w": self.kernel_w,
            "out_c": self.out_c,
            "stride": self.stride,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConvMeta":
        try:
            return cls(**{k: int(d[k]) for k in ("in_h", "in_w", "in_c", "kernel_h", "kernel_w", "out_c")},
                       stride=int(d.get("stride", 1)))
        except KeyError as exc:
            raise NetworkFormatError(f"conv_meta missing field {exc}") from None


@dataclass(frozen=True, eq=False)
class LayerSpec:
    """One layer.  Dense: codes are (n_out, n_in).  Conv: codes are (out_c, in_c, kh, kw)
    and the bias has one entry per output channel; inputs and outputs are
    flattened channel-major (c, row, col)."""

    kind: str
    weight_codes: np.ndarray
    bias: np.ndarray
    conv_meta: ConvMeta | None = None

    def __post_init__(self):
        codes = np.asarray(self.weight_codes, dtype=np.int64)
        bias = np.asarray(self.bias, dtype=float).reshape(-1)
        object.__setattr__(self, "weight_codes", codes)
        object.__setattr__(self, "bias", bias)
        if self.kind not in ("dense", "conv"):
            raise NetworkFormatError(f"unknown layer kind {self.kind!r}")
        if codes.size and (codes.min() < NO_CONNECTION or codes.max() >= NUM_CODES):
            raise NetworkFormatError("weight codes must lie in [0, 63]")
        if self.kind == "dense":
            if codes.ndim != 2 or bias.shape[0] != codes.shape[0]:
                raise NetworkFormatError("dense layer needs (n_out, n_in) codes and n_out biases")
        else:
            m = self.conv_meta
            if m is None:
                raise NetworkFormatError("conv layer requires conv_meta")
            if m.stride < 1 or m.kernel_h > m.in_h or m.kernel_w > m.in_w or min(m.kernel_h, m.kernel_w) < 1:
                raise NetworkFormatError("inconsistent conv_meta")
            if codes.shape != (m.out_c, m.in_c, m.kernel_h, m.kernel_w):
                raise NetworkFormatError(
                    f"conv codes have shape {codes.shape}, expected "
                    f"{(m.out_c, m.in_c, m.kernel_h, m.kernel_w)}"
                )
            if bias.shape[0] != m.out_c:
                raise NetworkFormatError("conv bias needs one entry per output channel")

    @property
    def in_dim(self) -> int:
        return self.weight_codes.shape[1] if self.kind == "dense" else self.conv_meta.in_dim

    @property
    def out_dim(self) -> int:
        return self.weight_codes.shape[0] if self.kind == "dense" else self.conv_meta.out_dim

    def lowered(self) -> "LayerSpec":
        if self.kind == "dense":
            return self
        codes, bias = lower_conv(self)
        return LayerSpec("dense", codes, bias)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "weight_codes": self.weight_codes.tolist(), "bias": self.bias.tolist()}
        if self.conv_meta is not None:
            d["conv_meta"] = self.conv_meta.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LayerSpec":
        try:
            meta = ConvMeta.from_dict(d["conv_meta"]) if d.get("conv_meta") else None
            return cls(d["kind"], np.asarray(d["weight_codes"]), np.asarray(d["bias"]), meta)
        except KeyError as exc:
            raise NetworkFormatError(f"layer missing field {exc}") from None


def lower_conv(layer: LayerSpec) -> tuple[np.ndarray, np.ndarray]:
    """Dense code matrix and bias realizing a valid (unpadded) convolution.

    Positions outside a filter window hold NO_CONNECTION.
    """
    m = layer.conv_meta
    if layer.kind != "conv" or m is None:
        raise NetworkFormatError("lower_conv needs a conv layer")
    codes = np.full((m.out_dim, m.in_dim), NO_CONNECTION, dtype=np.int64)
    in_idx = np.arange(m.in_dim).reshape(m.in_c, m.in_h, m.in_w)
    row = 0
    for oc in range(m.out_c):
        for i in range(m.out_h):
            for j in range(m.out_w):
                r0, c0 = i * m.stride, j * m.stride
                window = in_idx[:, r0 : r0 + m.kernel_h, c0 : c0 + m.kernel_w]
                codes[row, window.reshape(-1)] = layer.weight_codes[oc].reshape(-1)
                row += 1
    bias = np.repeat(layer.bias, m.out_h * m.out_w)
    return codes, bias


@dataclass(frozen=True, eq=False)
class NetworkSpec:
    input_dim: int
    layers: tuple[LayerSpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise NetworkFormatError("network needs at least one layer")
        dim = self.input_dim
        for k, layer in enumerate(self.layers):
            if layer.in_dim != dim:
                raise NetworkFormatError(f"layer {k} expects {layer.in_dim} inputs, got {dim}")
            dim = layer.out_dim

    @property
    def output_dim(self) -> int:
        return self.layers[-1].out_dim

    @property
    def shape(self) -> list[int]:
        return [self.input_dim] + [layer.out_dim for layer in self.layers]

    @cached_property
    def dense_layers(self) -> tuple[LayerSpec, ...]:
        return tuple(layer.lowered() for layer in self.layers)

    @cached_property
    def nominal_weights(self) -> tuple[np.ndarray, ...]:
        return tuple(dequantize(layer.weight_codes) for layer in self.dense_layers)

    def to_dict(self) -> dict:
        return {"input_dim": self.input_dim, "layers": [layer.to_dict() for layer in self.layers]}

    @classmethod
    def from_dict(cls, d: dict) -> "NetworkSpec":
        try:
            return cls(int(d["input_dim"]), tuple(LayerSpec.from_dict(x) for x in d["layers"]))
        except KeyError as exc:
            raise NetworkFormatError(f"network missing field {exc}") from None

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()))

    @classmethod
    def load(cls, path: str | Path) -> "NetworkSpec":
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except json.JSONDecodeError as exc:
            raise NetworkFormatError(f"{path}: {exc}") from None


def nominal_forward(net: NetworkSpec, x: Sequence[float], return_hidden: bool = False):
    """Forward pass with nominal dequantized weights (no variation, no leakage)."""
    h = np.asarray(x, dtype=float).reshape(-1)
    if h.shape[0] != net.input_dim:
        raise ValueError(f"input has length {h.shape[0]}, network expects {net.input_dim}")
    hidden = []
    for k, (layer, W) in enumerate(zip(net.dense_layers, net.nominal_weights)):
        inp = h if k == 0 else relu(h)
        h = W @ inp + layer.bias
        hidden.append(h)
    y = relu(h)
    return (y, hidden) if return_hidden else y


def predict(y: np.ndarray) -> int:
    """Class decision: argmax with lowest-index tie-break, or thresholding for one output."""
    y = np.asarray(y).reshape(-1)
    if y.shape[0] == 1:
        return int(y[0] > BINARY_THRESHOLD)
    return int(np.argmax(y))

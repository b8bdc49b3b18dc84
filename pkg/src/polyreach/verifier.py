"""Set propagation through the variation-aware network and classification checks."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import polyzono as pz
from .network import BINARY_THRESHOLD, NetworkSpec, nominal_forward, predict
from .polyzono import PolyZonotope
from .relu import enclose_relu
from .variation import FACTOR_IDS, VariationModel, build_weight_matrix_set, classify_inputs, leakage_sets

# product terms allowed in one multiplication before giving up
HARD_GEN_CAP = 500_000


class ResourceLimitError(RuntimeError):
    pass


def input_factor_ids(n: int) -> list[str]:
    width = max(4, len(str(n - 1)))
    return [f"in{k:0{width}d}" for k in range(n)]


def build_input_set(x, epsilon: float = 0.0) -> PolyZonotope:
    """Box of radius ``epsilon`` around ``x`` with one dependent factor per input."""
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    x = np.asarray(x, dtype=float).reshape(-1)
    n = x.shape[0]
    if epsilon == 0:
        return PolyZonotope(x)
    return PolyZonotope(x, epsilon * np.eye(n), None, np.eye(n, dtype=np.int64), input_factor_ids(n))


@dataclass
class VerificationTask:
    net: NetworkSpec
    model: VariationModel
    x: np.ndarray
    label: int
    epsilon: float = 0.0
    k_sigma: float | None = None

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float).reshape(-1)
        n_classes = max(self.net.output_dim, 2)
        if not 0 <= self.label < n_classes:
            raise ValueError(f"label {self.label} out of range for {n_classes} classes")
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")
        if self.x.shape[0] != self.net.input_dim:
            raise ValueError(f"pattern has {self.x.shape[0]} entries, network expects {self.net.input_dim}")

    @property
    def effective_model(self) -> VariationModel:
        return self.model if self.k_sigma is None else self.model.with_k_sigma(self.k_sigma)


@dataclass
class Propagation:
    output: PolyZonotope
    layer_hulls: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)


@dataclass
class VerificationReport:
    output_lo: np.ndarray
    output_hi: np.ndarray
    verified: bool
    label: int
    nominal_prediction: int
    wall_time: float
    margins: np.ndarray | None = None
    layer_hulls: list | None = None

    def to_dict(self) -> dict:
        d = {
            "output_hull": {"lo": self.output_lo.tolist(), "hi": self.output_hi.tolist()},
            "verified": bool(self.verified),
            "label": int(self.label),
            "nominal_prediction": int(self.nominal_prediction),
            "wall_time": self.wall_time,
            "margins": None if self.margins is None else self.margins.tolist(),
        }
        if self.layer_hulls is not None:
            d["per_layer_hulls"] = [{"lo": lo.tolist(), "hi": hi.tolist()} for lo, hi in self.layer_hulls]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        hulls = d.get("per_layer_hulls")
        return cls(
            np.asarray(d["output_hull"]["lo"], dtype=float),
            np.asarray(d["output_hull"]["hi"], dtype=float),
            bool(d["verified"]),
            int(d["label"]),
            int(d["nominal_prediction"]),
            float(d["wall_time"]),
            None if d.get("margins") is None else np.asarray(d["margins"], dtype=float),
            None if hulls is None else [(np.asarray(h["lo"]), np.asarray(h["hi"])) for h in hulls],
        )


def propagate(net: NetworkSpec, model: VariationModel, input_set: PolyZonotope,
              max_gens: int = pz.DEFAULT_MAX_GENS, linear: bool = False) -> Propagation:
    """Enclose the outputs of the variation-aware network for all inputs in ``input_set``.

    Every weight set shares the factors alpha1..alpha3, so the dependency on
    the process parameters is carried across layers.  With ``linear`` set,
    monomials of degree above one are demoted after each product (zonotope
    baseline; combine with a degree-1 model).
    """
    if input_set.dim != net.input_dim:
        raise pz.DimensionError(f"input set has dimension {input_set.dim}, network expects {net.input_dim}")
    if set(input_set.factor_ids) & set(FACTOR_IDS):
        raise ValueError("input factors must be disjoint from the process factors")
    P = input_set
    hulls = []
    prev_codes = None
    for k, layer in enumerate(net.dense_layers):
        if k == 0:
            lo, hi = pz.interval_hull(P)
            W = build_weight_matrix_set(layer.weight_codes, True, model, classify_inputs(lo, hi))
        else:
            P = enclose_relu(P, leakage_sets(prev_codes, model))
            W = build_weight_matrix_set(layer.weight_codes, False, model)
        if W.num_dep * max(P.num_dep, 1) > HARD_GEN_CAP:
            raise ResourceLimitError(
                f"layer {k}: {W.num_dep} x {P.num_dep} generator products exceed cap {HARD_GEN_CAP}"
            )
        P = pz.multiply(W, P)
        P = pz.translate(P, layer.bias)
        if linear:
            P = pz.demote_nonlinear(P, 1)
        P = pz.reduce_order(pz.compact(P), max_gens)
        hulls.append(pz.interval_hull(P))
        prev_codes = layer.weight_codes
    P = enclose_relu(P)
    hulls.append(pz.interval_hull(P))
    return Propagation(P, hulls)


def classification_margins(Y: PolyZonotope, label: int) -> np.ndarray:
    """Lower bounds of y_label - y_j for every j != label (dependencies kept).

    A single-output network is a binary classifier with threshold 0.5; the
    margin is then the distance of the output hull from the threshold on the
    side of the label.
    """
    if Y.dim == 1:
        lo, hi = pz.interval_hull(Y)
        return np.array([lo[0] - BINARY_THRESHOLD if label == 1 else BINARY_THRESHOLD - hi[0]])
    if not 0 <= label < Y.dim:
        raise ValueError("label out of range")
    others = [j for j in range(Y.dim) if j != label]
    D = -np.eye(Y.dim)[others]
    D[:, label] = 1.0
    lo, _ = pz.interval_hull(pz.affine_map(D, Y))
    return lo


def check_classification(Y: PolyZonotope, label: int) -> bool:
    return bool(np.all(classification_margins(Y, label) > 0))


def verify(task: VerificationTask, max_gens: int = pz.DEFAULT_MAX_GENS, linear: bool = False,
           keep_layers: bool = False) -> VerificationReport:
    model = task.effective_model
    t0 = time.perf_counter()
    prop = propagate(task.net, model, build_input_set(task.x, task.epsilon), max_gens, linear)
    margins = classification_margins(prop.output, task.label)
    wall = time.perf_counter() - t0
    lo, hi = pz.interval_hull(prop.output)
    # outputs pass a final ReLU, so negative lower bounds of the relaxation are vacuous
    lo = np.maximum(lo, 0.0)
    return VerificationReport(
        lo, hi, bool(np.all(margins > 0)), task.label,
        predict(nominal_forward(task.net, task.x)), wall, margins,
        prop.layer_hulls if keep_layers else None,
    )


def _verify_star(args):
    return verify(*args)


def verify_many(tasks: list[VerificationTask], jobs: int | None = None, **kwargs) -> list[VerificationReport]:
    """Verify patterns independently; ``jobs`` > 1 uses worker processes."""
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(tasks) <= 1:
        return [verify(t, **kwargs) for t in tasks]
    opts = (kwargs.get("max_gens", pz.DEFAULT_MAX_GENS), kwargs.get("linear", False),
            kwargs.get("keep_layers", False))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_star, [(t, *opts) for t in tasks]))


def verified_accuracy(tasks: list[VerificationTask], jobs: int | None = 1,
                      **kwargs) -> tuple[float, float, list[VerificationReport]]:
    """(verified accuracy, nominal accuracy, per-task reports)."""
    if not tasks:
        raise ValueError("no tasks")
    reports = verify_many(tasks, jobs, **kwargs)
    verified = np.mean([r.verified for r in reports])
    nominal = np.mean([r.nominal_prediction == r.label for r in reports])
    return float(verified), float(nominal), reports

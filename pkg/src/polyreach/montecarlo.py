"""Monte-Carlo oracle: concrete forward passes of the parametric network."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.stats import truncnorm

from .network import NO_CONNECTION, NetworkSpec
from .variation import FIRST_NEG, FIRST_POS, HIDDEN, VARIANTS, VariationModel, monomial_values


@dataclass
class Draws:
    d1: np.ndarray
    d2: np.ndarray
    alpha3: np.ndarray  # residual factor in [-1, 1]; entry residual = alpha3 * half_width
    inputs: np.ndarray


def _normal(rng: np.random.Generator, sigma: float, bound: float, size: int, truncated: bool) -> np.ndarray:
    if sigma == 0:
        return np.zeros(size)
    if not truncated:
        return sigma * rng.standard_normal(size)
    if bound == 0:
        return np.zeros(size)
    k = bound / sigma
    return truncnorm.rvs(-k, k, scale=sigma, size=size, random_state=rng)


def draw_parameters(model: VariationModel, x, size: int, rng: np.random.Generator,
                    truncated: bool = False, epsilon: float = 0.0) -> Draws:
    """Process parameters, residual factor and perturbed inputs for ``size`` samples."""
    s1, s2 = model.scales
    d1 = _normal(rng, model.sigma1, s1, size, truncated)
    d2 = _normal(rng, model.sigma2, s2, size, truncated)
    a3 = rng.uniform(-1, 1, size)
    x = np.asarray(x, dtype=float).reshape(1, -1)
    inputs = np.repeat(x, size, axis=0)
    if epsilon > 0:
        inputs = inputs + rng.uniform(-epsilon, epsilon, inputs.shape)
    return Draws(d1, d2, a3, inputs)


def _tables(codes: np.ndarray, variant: str, model: VariationModel):
    v = VARIANTS.index(variant)
    mask = codes != NO_CONNECTION
    idx = np.where(mask, codes, 0)
    return model.coeffs[v, idx] * mask[..., None], model.d3_half_width[v, idx] * mask


def _layer(T: np.ndarray, d3: np.ndarray, inp: np.ndarray, mono: np.ndarray, a3: np.ndarray) -> np.ndarray:
    # sum_c sum_m T[r, c, m] mono[s, m] inp[s, c] + a3[s] sum_c d3[r, c] inp[s, c]
    A = np.einsum("rcm,sc->srm", T, inp, optimize=True)
    return np.einsum("srm,sm->sr", A, mono) + a3[:, None] * (inp @ d3.T)


def forward_batch(net: NetworkSpec, model: VariationModel, draws: Draws, return_hidden: bool = False):
    """Concrete outputs (S, n_out) of the parametric model for each drawn sample."""
    mono = monomial_values(1 + draws.d1, 1 + draws.d2)
    a3 = draws.alpha3
    h = draws.inputs
    hidden = []
    prev_codes = None
    for k, layer in enumerate(net.dense_layers):
        codes = layer.weight_codes
        if k == 0:
            Tp, dp = _tables(codes, FIRST_POS, model)
            Tn, dn = _tables(codes, FIRST_NEG, model)
            pos, neg = np.where(h >= 0, h, 0.0), np.where(h < 0, h, 0.0)
            h = _layer(Tp, dp, pos, mono, a3) + _layer(Tn, dn, neg, mono, a3)
        else:
            mask = prev_codes != NO_CONNECTION
            L = model.leak_coeffs[np.where(mask, prev_codes, 0)] * mask[..., None]
            L = L.sum(axis=1) / np.maximum(mask.sum(axis=1), 1)[:, None]
            leak = mono @ L.T
            inp = np.where(h >= 0, h, leak)
            T, d3 = _tables(codes, HIDDEN, model)
            h = _layer(T, d3, inp, mono, a3)
        h = h + layer.bias
        hidden.append(h)
        prev_codes = codes
    y = np.maximum(h, 0.0)
    return (y, hidden) if return_hidden else y


def sample_forward(net: NetworkSpec, model: VariationModel, x, rng: np.random.Generator,
                   truncated: bool = False, epsilon: float = 0.0) -> np.ndarray:
    """One concrete output with freshly drawn process parameters."""
    return forward_batch(net, model, draw_parameters(model, x, 1, rng, truncated, epsilon))[0]


def sample_outputs(net: NetworkSpec, model: VariationModel, x, samples: int, rng: np.random.Generator,
                   truncated: bool = False, epsilon: float = 0.0, chunk: int = 250):
    """Outputs and draws for ``samples`` Monte-Carlo runs (chunked to bound memory)."""
    draws = draw_parameters(model, x, samples, rng, truncated, epsilon)
    outs = []
    for start in range(0, samples, chunk):
        sl = slice(start, start + chunk)
        part = Draws(draws.d1[sl], draws.d2[sl], draws.alpha3[sl], draws.inputs[sl])
        outs.append(forward_batch(net, model, part))
    return np.vstack(outs), draws


def enclosure_percentage(outputs, lo, hi) -> float:
    """Fraction of samples inside the closed box [lo, hi] in every coordinate."""
    outputs = np.atleast_2d(np.asarray(outputs, dtype=float))
    if outputs.shape[0] == 0:
        raise ValueError("no samples")
    inside = np.all((outputs >= lo) & (outputs <= hi), axis=1)
    return float(np.mean(inside))


def write_samples_csv(path: str | Path, seed: int, draws: Draws, outputs: np.ndarray,
                      pattern: int | None = None, append: bool = False) -> None:
    path = Path(path)
    new = not (append and path.exists())
    with path.open("a" if append else "w", newline="") as fh:
        w = csv.writer(fh)
        if new:
            head = (["pattern"] if pattern is not None else []) + ["seed", "d1", "d2", "d3"]
            w.writerow(head + [f"y{k}" for k in range(outputs.shape[1])])
        for i in range(outputs.shape[0]):
            row = ([pattern] if pattern is not None else []) + [seed, draws.d1[i], draws.d2[i], draws.alpha3[i]]
            w.writerow(row + [repr(float(v)) for v in outputs[i]])

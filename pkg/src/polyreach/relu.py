"""ReLU enclosure for polynomial zonotopes with optional analog leakage."""

from __future__ import annotations

from enum import IntEnum

import numpy as np

from .polyzono import PolyZonotope, diag_gens, affine_map, compact, exact_sum, interval_hull


class NeuronCase(IntEnum):
    INACTIVE = -1
    MIXED = 0
    ACTIVE = 1


def classify_neurons(lo, hi, leaky: bool = False) -> np.ndarray:
    """Active if lo >= 0, inactive if hi <= 0 (hi < 0 with leakage), else mixed.

    A leaky neuron at exactly zero still passes 0, so with leakage a set
    touching zero from below is treated as mixed.
    """
    lo, hi = np.asarray(lo), np.asarray(hi)
    inactive = hi < 0 if leaky else hi <= 0
    return np.where(lo >= 0, NeuronCase.ACTIVE, np.where(inactive, NeuronCase.INACTIVE, NeuronCase.MIXED))


def enclose_relu(P: PolyZonotope, leak: PolyZonotope | None = None) -> PolyZonotope:
    """Sound enclosure of {relu(x) | x in P}.

    Inactive neurons output the leakage set when ``leak`` is given (one
    coordinate per neuron), 0 otherwise.  Mixed neurons use the band
    ``u/(u-l) * x + mu +- eps`` widened by the leakage hull.
    """
    if leak is not None and leak.dim != P.dim:
        raise ValueError("leakage set must have one coordinate per neuron")
    lo, hi = interval_hull(P)
    case = classify_neurons(lo, hi, leaky=leak is not None)
    active = case == NeuronCase.ACTIVE
    inactive = case == NeuronCase.INACTIVE
    mixed = case == NeuronCase.MIXED

    slope = np.zeros(P.dim)
    slope[active] = 1.0
    offset = np.zeros(P.dim)
    radius = np.zeros(P.dim)
    if mixed.any():
        l, u = lo[mixed], hi[mixed]
        lam = u / (u - l)
        slope[mixed] = lam
        offset[mixed] = -lam * l / 2
        radius[mixed] = -lam * l / 2
        if leak is not None:
            llo, lhi = interval_hull(leak)
            down, up = np.minimum(llo[mixed], 0), np.maximum(lhi[mixed], 0)
            offset[mixed] += (down + up) / 2
            radius[mixed] += (up - down) / 2

    out = affine_map(np.diag(slope), P, offset)
    out = PolyZonotope(out.center, out.dep_gen, np.hstack([out.indep_gen, diag_gens(radius)]),
                       out.exp_mat, out.factor_ids)
    if leak is not None and inactive.any():
        out = exact_sum(out, affine_map(np.diag(inactive.astype(float)), leak))
    return compact(out)

"""Process-variation model of the analog weight cells.

Every quantized weight code behaves as a degree-3 polynomial in the two
dominant process parameters ``phi1``, ``phi2`` (one table per input-sign
variant), plus a residual term ``d3``.  Neurons of hidden layers whose
input is negative emit a small leakage current that is again a degree-3
polynomial in ``phi1``, ``phi2``.

Set construction substitutes ``phi_i = 1 + k_sigma * sigma_i * alpha_i`` and
``d3 = half_width * alpha3`` so that the three factors ``alpha1..3`` are shared
by every weight in the network.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from math import comb
from pathlib import Path
from typing import Iterable

import numpy as np

from .network import NO_CONNECTION, NUM_CODES, dequantize
from .polyzono import MatPolyZonotope, PolyZonotope, compact

VARIANTS = ("first_pos", "first_neg", "hidden")
FIRST_POS, FIRST_NEG, HIDDEN = VARIANTS
# graded lexicographic order of phi1^i phi2^j, i + j <= 3
MONOMIALS = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3))
NUM_COEFFS = len(MONOMIALS)
FACTOR_IDS = ("alpha1", "alpha2", "alpha3")


class FitError(ValueError):
    pass


class UnknownCodeError(KeyError):
    pass


def _variant_index(variant: str) -> int:
    try:
        return VARIANTS.index(variant)
    except ValueError:
        raise UnknownCodeError(f"unknown variant {variant!r}") from None


def _to_grid(coeffs: np.ndarray) -> np.ndarray:
    """(..., 10) coefficient vectors -> (..., 4, 4) tables indexed [i, j]."""
    coeffs = np.asarray(coeffs, dtype=float)
    grid = np.zeros(coeffs.shape[:-1] + (4, 4))
    for k, (i, j) in enumerate(MONOMIALS):
        grid[..., i, j] = coeffs[..., k]
    return grid


def _from_grid(grid: np.ndarray) -> np.ndarray:
    return np.stack([grid[..., i, j] for i, j in MONOMIALS], axis=-1)


def _shift_matrix(offset: float, scale: float) -> np.ndarray:
    """M[i, a] with (offset + scale * v)^i = sum_a M[i, a] v^a."""
    M = np.zeros((4, 4))
    for i in range(4):
        for a in range(i + 1):
            M[i, a] = comb(i, a) * offset ** (i - a) * scale**a
    return M


def substitute(coeffs, offset1: float, scale1: float, offset2: float, scale2: float) -> np.ndarray:
    """Re-express polynomials in u_i = offset_i + scale_i * v_i as polynomials in v."""
    M1, M2 = _shift_matrix(offset1, scale1), _shift_matrix(offset2, scale2)
    grid = _to_grid(coeffs)
    return _from_grid(np.einsum("ia,...ij,jb->...ab", M1, grid, M2))


def monomial_values(phi1, phi2) -> np.ndarray:
    """(..., 10) array of phi1^i phi2^j in MONOMIALS order."""
    phi1, phi2 = np.asarray(phi1, dtype=float), np.asarray(phi2, dtype=float)
    return np.stack([phi1**i * phi2**j for i, j in MONOMIALS], axis=-1)


def monomial_degrees() -> np.ndarray:
    return np.array([i + j for i, j in MONOMIALS])


@dataclass(frozen=True, eq=False)
class VariationModel:
    """Coefficient tables for all codes and sign variants.

    ``coeffs[v, c]`` are the 10 phi-coefficients of code ``c`` in variant ``v``,
    ``leak_coeffs[c]`` the leakage polynomial of code ``c`` and
    ``d3_half_width[v, c]`` the residual half-width.  ``available[v, c]`` is
    False for entries no data was fitted for.  ``max_degree`` restricts the
    alpha-polynomials built from the model (1 gives the zonotope baseline).
    """

    coeffs: np.ndarray
    leak_coeffs: np.ndarray
    d3_half_width: np.ndarray
    sigma1: float
    sigma2: float
    k_sigma: float = 3.0
    available: np.ndarray | None = None
    max_degree: int = 3
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        nv = len(VARIANTS)
        coeffs = np.asarray(self.coeffs, dtype=float).reshape(nv, NUM_CODES, NUM_COEFFS)
        leak = np.asarray(self.leak_coeffs, dtype=float).reshape(NUM_CODES, NUM_COEFFS)
        d3 = np.asarray(self.d3_half_width, dtype=float).reshape(nv, NUM_CODES)
        avail = (
            np.ones((nv, NUM_CODES), dtype=bool)
            if self.available is None
            else np.asarray(self.available, dtype=bool).reshape(nv, NUM_CODES)
        )
        if np.any(d3 < 0):
            raise ValueError("d3 half-widths must be non-negative")
        if self.sigma1 < 0 or self.sigma2 < 0 or self.k_sigma < 0:
            raise ValueError("standard deviations and multiplier must be non-negative")
        for name, val in (("coeffs", coeffs), ("leak_coeffs", leak), ("d3_half_width", d3), ("available", avail)):
            val.setflags(write=False)
            object.__setattr__(self, name, val)

    # -- construction -----------------------------------------------------

    @classmethod
    def nominal(cls, sigma1: float = 0.0, sigma2: float = 0.0, k_sigma: float = 3.0) -> "VariationModel":
        """Weights fixed at their dequantized values, no residual, no leakage."""
        coeffs = np.zeros((len(VARIANTS), NUM_CODES, NUM_COEFFS))
        coeffs[:, :, 0] = dequantize(np.arange(NUM_CODES))
        return cls(coeffs, np.zeros((NUM_CODES, NUM_COEFFS)), np.zeros((len(VARIANTS), NUM_CODES)),
                   sigma1, sigma2, k_sigma)

    def with_k_sigma(self, k_sigma: float) -> "VariationModel":
        return replace(self, k_sigma=float(k_sigma), _cache={})

    def with_sigma(self, sigma1: float, sigma2: float) -> "VariationModel":
        return replace(self, sigma1=float(sigma1), sigma2=float(sigma2), _cache={})

    @property
    def scales(self) -> tuple[float, float]:
        """Half-widths of the phi domains around 1."""
        return self.k_sigma * self.sigma1, self.k_sigma * self.sigma2

    # -- polynomial views -------------------------------------------------

    def check(self, code: int, variant: str) -> None:
        v = _variant_index(variant)
        if not 0 <= code < NUM_CODES or not self.available[v, code]:
            raise UnknownCodeError(f"no coefficients for code {code} ({variant})")

    def weight(self, code, variant: str, phi1, phi2, d3=0.0):
        """Direct evaluation of the weight polynomial plus residual ``d3 * half_width``."""
        v = _variant_index(variant)
        code = np.asarray(code)
        val = np.sum(self.coeffs[v, code] * monomial_values(phi1, phi2), axis=-1)
        return val + np.asarray(d3) * self.d3_half_width[v, code]

    def leak(self, code, phi1, phi2):
        return np.sum(self.leak_coeffs[np.asarray(code)] * monomial_values(phi1, phi2), axis=-1)

    def alpha_coeffs(self, variant: str) -> np.ndarray:
        """(64, 10) coefficients of each code's weight as a polynomial in alpha1, alpha2."""
        key = ("w", variant)
        if key not in self._cache:
            s1, s2 = self.scales
            self._cache[key] = substitute(self.coeffs[_variant_index(variant)], 1.0, s1, 1.0, s2)
        return self._cache[key]

    def leak_alpha_coeffs(self) -> np.ndarray:
        if "leak" not in self._cache:
            s1, s2 = self.scales
            self._cache["leak"] = substitute(self.leak_coeffs, 1.0, s1, 1.0, s2)
        return self._cache["leak"]

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        rows = []
        for c in range(NUM_CODES):
            for v, name in enumerate(VARIANTS):
                if not self.available[v, c]:
                    continue
                rows.append({
                    "code": c,
                    "variant": name,
                    "coeffs": self.coeffs[v, c].tolist(),
                    "leak_coeffs": self.leak_coeffs[c].tolist(),
                    "d3_half_width": float(self.d3_half_width[v, c]),
                })
        d = {"sigma1": self.sigma1, "sigma2": self.sigma2, "k_sigma": self.k_sigma, "codes": rows}
        if self.max_degree != 3:
            d["max_degree"] = self.max_degree
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VariationModel":
        nv = len(VARIANTS)
        coeffs = np.zeros((nv, NUM_CODES, NUM_COEFFS))
        leak = np.zeros((NUM_CODES, NUM_COEFFS))
        d3 = np.zeros((nv, NUM_CODES))
        avail = np.zeros((nv, NUM_CODES), dtype=bool)
        leak_seen = np.zeros(NUM_CODES, dtype=bool)
        for row in d["codes"]:
            c, v = int(row["code"]), _variant_index(row["variant"])
            if not 0 <= c < NUM_CODES:
                raise ValueError(f"code {c} out of range")
            vals = np.asarray(row["coeffs"], dtype=float)
            if vals.shape != (NUM_COEFFS,):
                raise ValueError(f"code {c} ({row['variant']}): expected {NUM_COEFFS} coefficients")
            coeffs[v, c] = vals
            d3[v, c] = float(row.get("d3_half_width", 0.0))
            avail[v, c] = True
            lk = row.get("leak_coeffs")
            # leakage is a hidden-layer effect; other variants only fill gaps
            if lk is not None and (VARIANTS[v] == HIDDEN or not leak_seen[c]):
                leak[c] = np.asarray(lk, dtype=float)
                leak_seen[c] |= VARIANTS[v] == HIDDEN
        return cls(coeffs, leak, d3, float(d["sigma1"]), float(d["sigma2"]),
                   float(d.get("k_sigma", 3.0)), avail, int(d.get("max_degree", 3)))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1))

    @classmethod
    def load(cls, path: str | Path) -> "VariationModel":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def equals(self, other: "VariationModel") -> bool:
        return (
            np.array_equal(self.coeffs[self.available], other.coeffs[other.available])
            and np.array_equal(self.available, other.available)
            and np.array_equal(self.d3_half_width, other.d3_half_width)
            and self.sigma1 == other.sigma1
            and self.sigma2 == other.sigma2
            and self.k_sigma == other.k_sigma
            and self.max_degree == other.max_degree
        )


# ---------------------------------------------------------------------------
# set construction


def _split_by_degree(max_degree: int) -> tuple[list[int], list[int]]:
    deg = monomial_degrees()
    kept = [k for k in range(1, NUM_COEFFS) if deg[k] <= max_degree]
    dropped = [k for k in range(1, NUM_COEFFS) if deg[k] > max_degree]
    return kept, dropped


def _exp_column(k: int) -> list[int]:
    i, j = MONOMIALS[k]
    return [i, j, 0]


def _matrix_set(T: np.ndarray, d3: np.ndarray, max_degree: int, extra_indep=None,
                factor_ids=FACTOR_IDS) -> MatPolyZonotope:
    """Matrix set from per-entry alpha coefficients T (n, m, 10) and residuals d3 (n, m)."""
    n, m = T.shape[:2]
    kept, dropped = _split_by_degree(max_degree)
    gens = [T[:, :, k] for k in kept] + [d3]
    exps = [_exp_column(k) for k in kept] + [[0, 0, 1]]
    # dropped monomials share their alpha value across entries, so one
    # independent generator per monomial is enough
    indep = [T[:, :, k] for k in dropped]
    if extra_indep is not None:
        indep.extend(extra_indep)
    G = np.stack(gens, axis=2) if gens else np.zeros((n, m, 0))
    GI = np.stack(indep, axis=2) if indep else np.zeros((n, m, 0))
    nz_dep = np.any(G != 0, axis=(0, 1))
    nz_ind = np.any(GI != 0, axis=(0, 1))
    E = np.array(exps, dtype=np.int64).T[:, nz_dep]
    return MatPolyZonotope(T[:, :, 0], G[:, :, nz_dep], GI[:, :, nz_ind], E, factor_ids)


def weight_set(code: int, variant: str, model: VariationModel, factor_ids=FACTOR_IDS) -> MatPolyZonotope:
    """1x1 matrix set of one weight cell under process variation."""
    model.check(code, variant)
    v = _variant_index(variant)
    T = model.alpha_coeffs(variant)[code].reshape(1, 1, NUM_COEFFS)
    d3 = np.array([[model.d3_half_width[v, code]]])
    return _matrix_set(T, d3, model.max_degree, factor_ids=factor_ids)


def classify_inputs(lo, hi) -> np.ndarray:
    """+1 for non-negative, -1 for non-positive (and not all zero), 0 for mixed sign."""
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    return np.where(lo >= 0, 1, np.where(hi <= 0, -1, 0))


def _entry_tables(codes: np.ndarray, variant: str, model: VariationModel):
    v = _variant_index(variant)
    mask = codes != NO_CONNECTION
    idx = np.where(mask, codes, 0)
    missing = mask & ~model.available[v, idx]
    if missing.any():
        bad = sorted(set(codes[missing].tolist()))
        raise UnknownCodeError(f"no coefficients for codes {bad} ({variant})")
    T = model.alpha_coeffs(variant)[idx] * mask[..., None]
    d3 = model.d3_half_width[v, idx] * mask
    return T, d3


def _select_columns(signs: np.ndarray, pos: np.ndarray, neg: np.ndarray) -> np.ndarray:
    shape = (1, -1) + (1,) * (pos.ndim - 2)
    s = signs.reshape(shape)
    return np.where(s > 0, pos, np.where(s < 0, neg, (pos + neg) / 2))


def build_weight_matrix_set(codes, is_first_layer: bool, model: VariationModel,
                            input_signs=None, factor_ids=FACTOR_IDS) -> MatPolyZonotope:
    """Matrix set of a (lowered, dense) layer's weights.

    In the first layer each column uses the variant matching the sign of its
    input; columns whose input straddles zero use the midpoint of both
    variants plus independent generators covering half their difference.
    """
    codes = np.asarray(codes, dtype=np.int64)
    if not is_first_layer:
        T, d3 = _entry_tables(codes, HIDDEN, model)
        return _matrix_set(T, d3, model.max_degree, factor_ids=factor_ids)
    if input_signs is None:
        raise ValueError("first layer needs the sign classification of its inputs")
    signs = np.asarray(input_signs).reshape(-1)
    if signs.shape[0] != codes.shape[1]:
        raise ValueError("one sign per input column required")
    Tp, dp = _entry_tables(codes, FIRST_POS, model)
    Tn, dn = _entry_tables(codes, FIRST_NEG, model)
    mixed = signs == 0
    T = _select_columns(signs, Tp, Tn)
    d3 = _select_columns(signs, dp, dn)
    extra = []
    if mixed.any():
        gapT = (Tp - Tn) / 2
        gapd = (dp - dn) / 2
        n, m = codes.shape
        for j in np.flatnonzero(mixed):
            cols = [gapT[:, j, k] for k in range(NUM_COEFFS)] + [gapd[:, j]]
            for col in cols:
                if np.any(col != 0):
                    g = np.zeros((n, m))
                    g[:, j] = col
                    extra.append(g)
    return _matrix_set(T, d3, model.max_degree, extra_indep=extra, factor_ids=factor_ids)


def leakage_sets(codes, model: VariationModel, factor_ids=FACTOR_IDS) -> PolyZonotope:
    """Leakage emitted by each neuron (one per row of ``codes``) when its input is negative.

    The row's leakage polynomial is the mean of the polynomials of the
    connected codes in that row.
    """
    codes = np.atleast_2d(np.asarray(codes, dtype=np.int64))
    mask = codes != NO_CONNECTION
    idx = np.where(mask, codes, 0)
    L = model.leak_alpha_coeffs()[idx] * mask[..., None]
    count = np.maximum(mask.sum(axis=1), 1)
    T = L.sum(axis=1) / count[:, None]
    kept, dropped = _split_by_degree(model.max_degree)
    G = T[:, kept]
    E = np.array([_exp_column(k)[:2] for k in kept], dtype=np.int64).T.reshape(2, len(kept))
    GI = T[:, dropped]
    return compact(PolyZonotope(T[:, 0], G, GI, E, factor_ids[:2]))


def leakage_set(codes_row, model: VariationModel, factor_ids=FACTOR_IDS) -> PolyZonotope:
    return leakage_sets(np.asarray(codes_row).reshape(1, -1), model, factor_ids)


# ---------------------------------------------------------------------------
# regression


def fit_coefficients(phi1, phi2, measured) -> tuple[np.ndarray, float]:
    """Least-squares degree-3 fit in (phi1, phi2) and the max absolute residual.

    Fitting happens in the shifted variables phi - 1 for conditioning; the
    returned coefficients are in the phi basis.
    """
    phi1, phi2, w = (np.asarray(a, dtype=float).reshape(-1) for a in (phi1, phi2, measured))
    if not phi1.shape == phi2.shape == w.shape:
        raise FitError("sample columns have different lengths")
    if phi1.shape[0] < NUM_COEFFS:
        raise FitError(f"need at least {NUM_COEFFS} samples, got {phi1.shape[0]}")
    D = monomial_values(phi1 - 1.0, phi2 - 1.0)
    scale = np.abs(D).max(axis=0)
    scale[scale == 0] = 1.0
    Dn = D / scale
    if np.linalg.matrix_rank(Dn) < NUM_COEFFS:
        raise FitError("design matrix is rank deficient")
    sol, *_ = np.linalg.lstsq(Dn, w, rcond=None)
    shifted = sol / scale
    residual = float(np.max(np.abs(D @ shifted - w)))
    return substitute(shifted, -1.0, 1.0, -1.0, 1.0), residual


def fit_model(samples: Iterable[tuple], sigma1: float | None = None, sigma2: float | None = None,
              k_sigma: float = 3.0) -> tuple[VariationModel, dict]:
    """Fit every (code, variant) present in ``samples``.

    ``samples`` rows are (phi1, phi2, code, variant, measured_weight[, measured_leak]).
    Standard deviations default to the empirical ones of the phi columns.
    Returns the model and a dict of residual half-widths keyed by (code, variant).
    Raises FitError listing every group that could not be fitted.
    """
    groups: dict[tuple[int, str], list] = {}
    for row in samples:
        groups.setdefault((int(row[2]), str(row[3])), []).append(row)
    if not groups:
        raise FitError("no samples")
    nv = len(VARIANTS)
    coeffs = np.zeros((nv, NUM_CODES, NUM_COEFFS))
    leak = np.zeros((NUM_CODES, NUM_COEFFS))
    d3 = np.zeros((nv, NUM_CODES))
    avail = np.zeros((nv, NUM_CODES), dtype=bool)
    residuals, errors = {}, []
    all_phi = []
    for (code, variant), rows in sorted(groups.items()):
        if not 0 <= code < NUM_CODES:
            errors.append(f"code {code} ({variant}): out of range")
            continue
        if variant not in VARIANTS:
            errors.append(f"code {code} ({variant}): unknown variant")
            continue
        v = VARIANTS.index(variant)
        arr = np.array([[float(r[0]), float(r[1]), float(r[4])] for r in rows])
        all_phi.append(arr[:, :2])
        try:
            a, res = fit_coefficients(arr[:, 0], arr[:, 1], arr[:, 2])
        except FitError as exc:
            errors.append(f"code {code} ({variant}): {exc}")
            continue
        coeffs[v, code], d3[v, code], avail[v, code] = a, res, True
        residuals[(code, variant)] = res
        leaks = [r[5] for r in rows if len(r) > 5 and r[5] is not None and r[5] != ""]
        if variant == HIDDEN and len(leaks) == len(rows):
            leak[code], _ = fit_coefficients(arr[:, 0], arr[:, 1], np.asarray(leaks, dtype=float))
    if errors:
        raise FitError("; ".join(errors))
    phis = np.vstack(all_phi)
    s1 = float(np.std(phis[:, 0])) if sigma1 is None else sigma1
    s2 = float(np.std(phis[:, 1])) if sigma2 is None else sigma2
    return VariationModel(coeffs, leak, d3, s1, s2, k_sigma, avail), residuals


# ---------------------------------------------------------------------------
# synthetic circuit


@dataclass(frozen=True)
class SynthCircuit:
    """Deterministic stand-in for circuit-level Monte-Carlo data of one weight cell.

    The response is ``w0 + s * p(phi1 - 1, phi2 - 1)`` with ``p`` a random
    degree-3 polynomial without constant term, so the nominal value at
    ``phi = (1, 1)`` is exactly the dequantized weight.
    """

    code: int
    variant: str
    shifted: np.ndarray  # 10 coefficients in phi - 1
    leak_shifted: np.ndarray
    sigma1: float
    sigma2: float
    noise: float
    seed: int

    def response(self, phi1, phi2):
        return np.sum(self.shifted * monomial_values(np.asarray(phi1) - 1, np.asarray(phi2) - 1), axis=-1)

    def leak(self, phi1, phi2):
        return np.sum(self.leak_shifted * monomial_values(np.asarray(phi1) - 1, np.asarray(phi2) - 1), axis=-1)

    def coefficients(self) -> np.ndarray:
        """Exact phi-basis coefficients of the noiseless response."""
        return substitute(self.shifted, -1.0, 1.0, -1.0, 1.0)

    def leak_coefficients(self) -> np.ndarray:
        return substitute(self.leak_shifted, -1.0, 1.0, -1.0, 1.0)

    def sample(self, count: int, rng: np.random.Generator | None = None):
        """(phi1, phi2, measured_weight, measured_leak) with normal phi and uniform noise."""
        if rng is None:
            rng = np.random.default_rng([self.seed, self.code, _variant_index(self.variant), 1])
        phi1 = 1 + self.sigma1 * rng.standard_normal(count)
        phi2 = 1 + self.sigma2 * rng.standard_normal(count)
        w = self.response(phi1, phi2) + rng.uniform(-self.noise, self.noise, count)
        return phi1, phi2, w, self.leak(phi1, phi2)


DEGREE_SCALE = {1: 1.5, 2: 8.0, 3: 20.0}


def synth_circuit(seed: int, code: int, variant: str, sigma1: float = 0.05, sigma2: float = 0.05,
                  noise: float = 1e-3) -> SynthCircuit:
    v = _variant_index(variant)
    if not 0 <= code < NUM_CODES:
        raise UnknownCodeError(f"code {code} out of range")
    w0 = dequantize(code)
    base = np.random.default_rng([seed, code])
    p = np.array([0.0] + [base.normal(0, DEGREE_SCALE[i + j]) for i, j in MONOMIALS[1:]])
    if v != 0:
        # the other circuit variants differ slightly from the first-layer positive one
        tweak = np.random.default_rng([seed, code, v])
        p = p * (1 + 0.1 * tweak.standard_normal(NUM_COEFFS))
    s = 0.3 * abs(w0) + 0.05
    shifted = p * s
    shifted[0] = w0
    lk = np.random.default_rng([seed, code, 99])
    leak0 = 1e-3 * (0.5 + abs(w0) / 4)
    leak_p = np.array([1.0] + [lk.normal(0, DEGREE_SCALE[i + j] / 2) for i, j in MONOMIALS[1:]])
    leak_shifted = leak0 * leak_p if variant == HIDDEN else np.zeros(NUM_COEFFS)
    return SynthCircuit(code, variant, shifted, leak_shifted, sigma1, sigma2, noise, seed)


def synth_samples(seed: int, per_group: int = 60, sigma1: float = 0.05, sigma2: float = 0.05,
                  noise: float = 1e-3, codes: Iterable[int] = range(NUM_CODES),
                  variants: Iterable[str] = VARIANTS) -> list[tuple]:
    """Rows (phi1, phi2, code, variant, measured_weight, measured_leak) for every code and variant."""
    rows = []
    for code in codes:
        for variant in variants:
            circ = synth_circuit(seed, code, variant, sigma1, sigma2, noise)
            for a, b, w, lk in zip(*circ.sample(per_group)):
                rows.append((float(a), float(b), code, variant, float(w), float(lk)))
    return rows


def synthetic_model(seed: int = 0, sigma1: float = 0.05, sigma2: float = 0.05, noise: float = 1e-3,
                    per_group: int = 60, k_sigma: float = 3.0) -> VariationModel:
    """Model fitted to synthetic samples of all 64 codes and 3 variants."""
    model, _ = fit_model(synth_samples(seed, per_group, sigma1, sigma2, noise), sigma1, sigma2, k_sigma)
    return model

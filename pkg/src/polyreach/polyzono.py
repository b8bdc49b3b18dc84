"""Polynomial zonotopes and matrix polynomial zonotopes.

A polynomial zonotope is the set

    { c + sum_i (prod_k a_k^E[k, i]) G[:, i] + sum_j b_j GI[:, j] | a_k, b_j in [-1, 1] }

where the dependent factors ``a_k`` carry global identifiers.  Two sets that
share an identifier share the value of that factor in joint operations
(sums, products), which is how correlations between layers are kept.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_MAX_GENS = 2000


class DimensionError(ValueError):
    """Operand shapes do not agree."""


def _as_exp(E, p: int, h: int) -> np.ndarray:
    E = np.asarray(E, dtype=np.int64)
    if E.size == 0:
        return np.zeros((p, h), dtype=np.int64)
    return E.reshape(p, h)


@dataclass(frozen=True, eq=False)
class PolyZonotope:
    center: np.ndarray  # (n,)
    dep_gen: np.ndarray  # (n, h)
    indep_gen: np.ndarray  # (n, q)
    exp_mat: np.ndarray  # (p, h)
    factor_ids: tuple[str, ...]

    def __init__(self, center, dep_gen=None, indep_gen=None, exp_mat=None, factor_ids=()):
        c = np.atleast_1d(np.asarray(center, dtype=float)).copy()
        n = c.shape[0]
        G = np.zeros((n, 0)) if dep_gen is None else np.asarray(dep_gen, dtype=float).reshape(n, -1)
        GI = np.zeros((n, 0)) if indep_gen is None else np.asarray(indep_gen, dtype=float).reshape(n, -1)
        ids = tuple(str(f) for f in factor_ids)
        E = _as_exp(np.zeros((len(ids), G.shape[1])) if exp_mat is None else exp_mat, len(ids), G.shape[1])
        _validate(ids, E)
        for name, arr in (("center", c), ("dep_gen", G), ("indep_gen", GI), ("exp_mat", E)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "factor_ids", ids)

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    @property
    def num_dep(self) -> int:
        return self.dep_gen.shape[1]

    @property
    def num_indep(self) -> int:
        return self.indep_gen.shape[1]

    @property
    def num_factors(self) -> int:
        return len(self.factor_ids)

    @classmethod
    def point(cls, x) -> "PolyZonotope":
        return cls(x)

    @classmethod
    def box(cls, lo, hi) -> "PolyZonotope":
        """Axis-aligned box with one independent generator per nonzero radius."""
        lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
        r = (hi - lo) / 2
        return cls((hi + lo) / 2, indep_gen=diag_gens(r))

    def __repr__(self) -> str:
        return (
            f"PolyZonotope(n={self.dim}, h={self.num_dep}, q={self.num_indep}, "
            f"factors={list(self.factor_ids)})"
        )

    def to_dict(self) -> dict:
        return {
            "center": self.center.tolist(),
            "dep_gen": self.dep_gen.tolist(),
            "indep_gen": self.indep_gen.tolist(),
            "exp_mat": self.exp_mat.tolist(),
            "factor_ids": list(self.factor_ids),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "PolyZonotope":
        ids = d.get("factor_ids", [])
        center = np.asarray(d["center"], dtype=float)
        n = center.shape[0]
        dep = np.asarray(d.get("dep_gen", []), dtype=float).reshape(n, -1)
        return cls(
            center,
            dep,
            np.asarray(d.get("indep_gen", []), dtype=float).reshape(n, -1),
            np.asarray(d.get("exp_mat", []), dtype=np.int64).reshape(len(ids), dep.shape[1]),
            ids,
        )

    def equals(self, other: "PolyZonotope") -> bool:
        """Structural equality (same arrays, same factor order)."""
        return (
            self.factor_ids == other.factor_ids
            and np.array_equal(self.center, other.center)
            and np.array_equal(self.dep_gen, other.dep_gen)
            and np.array_equal(self.indep_gen, other.indep_gen)
            and np.array_equal(self.exp_mat, other.exp_mat)
        )


@dataclass(frozen=True, eq=False)
class MatPolyZonotope:
    """Set of n x m matrices sharing the polynomial zonotope structure."""

    center: np.ndarray  # (n, m)
    dep_gen: np.ndarray  # (n, m, h)
    indep_gen: np.ndarray  # (n, m, q)
    exp_mat: np.ndarray  # (p, h)
    factor_ids: tuple[str, ...]

    def __init__(self, center, dep_gen=None, indep_gen=None, exp_mat=None, factor_ids=()):
        C = np.asarray(center, dtype=float)
        if C.ndim == 0:
            C = C.reshape(1, 1)
        if C.ndim != 2:
            raise DimensionError("matrix center must be two-dimensional")
        C = C.copy()
        n, m = C.shape
        G = np.zeros((n, m, 0)) if dep_gen is None else np.asarray(dep_gen, dtype=float).reshape(n, m, -1)
        GI = np.zeros((n, m, 0)) if indep_gen is None else np.asarray(indep_gen, dtype=float).reshape(n, m, -1)
        ids = tuple(str(f) for f in factor_ids)
        E = _as_exp(np.zeros((len(ids), G.shape[2])) if exp_mat is None else exp_mat, len(ids), G.shape[2])
        _validate(ids, E)
        for name, arr in (("center", C), ("dep_gen", G), ("indep_gen", GI), ("exp_mat", E)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "factor_ids", ids)

    @property
    def shape(self) -> tuple[int, int]:
        return self.center.shape

    @property
    def num_dep(self) -> int:
        return self.dep_gen.shape[2]

    @property
    def num_indep(self) -> int:
        return self.indep_gen.shape[2]

    def flatten(self) -> PolyZonotope:
        """Row-major vectorization; all vector operations then apply."""
        n, m = self.shape
        return PolyZonotope(
            self.center.reshape(-1),
            self.dep_gen.reshape(n * m, -1),
            self.indep_gen.reshape(n * m, -1),
            self.exp_mat,
            self.factor_ids,
        )

    @classmethod
    def unflatten(cls, P: PolyZonotope, shape: tuple[int, int]) -> "MatPolyZonotope":
        n, m = shape
        return cls(
            P.center.reshape(n, m),
            P.dep_gen.reshape(n, m, -1),
            P.indep_gen.reshape(n, m, -1),
            P.exp_mat,
            P.factor_ids,
        )

    def __repr__(self) -> str:
        n, m = self.shape
        return (
            f"MatPolyZonotope({n}x{m}, h={self.num_dep}, q={self.num_indep}, "
            f"factors={list(self.factor_ids)})"
        )

    def to_dict(self) -> dict:
        d = PolyZonotope.to_dict(self)  # type: ignore[arg-type]
        d["shape"] = list(self.shape)
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "MatPolyZonotope":
        n, m = d.get("shape") or np.asarray(d["center"]).shape
        ids = d.get("factor_ids", [])
        dep = np.asarray(d.get("dep_gen", []), dtype=float).reshape(n, m, -1)
        return cls(
            np.asarray(d["center"], dtype=float).reshape(n, m),
            dep,
            np.asarray(d.get("indep_gen", []), dtype=float).reshape(n, m, -1),
            np.asarray(d.get("exp_mat", []), dtype=np.int64).reshape(len(ids), dep.shape[2]),
            ids,
        )

    def equals(self, other: "MatPolyZonotope") -> bool:
        return self.shape == other.shape and self.flatten().equals(other.flatten())


def _validate(ids: tuple[str, ...], E: np.ndarray) -> None:
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate factor ids: {ids}")
    if E.size and E.min() < 0:
        raise ValueError("exponent matrix must be non-negative")


def diag_gens(r: np.ndarray) -> np.ndarray:
    """Diagonal generator matrix keeping only the nonzero radii."""
    r = np.abs(np.asarray(r, dtype=float))
    idx = np.flatnonzero(r)
    G = np.zeros((r.shape[0], idx.size))
    G[idx, np.arange(idx.size)] = r[idx]
    return G


def dumps(S: PolyZonotope | MatPolyZonotope) -> str:
    return json.dumps(S.to_dict())


def loads(text: str) -> PolyZonotope | MatPolyZonotope:
    d = json.loads(text)
    if "shape" in d:
        return MatPolyZonotope.from_dict(d)
    return PolyZonotope.from_dict(d)


# ---------------------------------------------------------------------------
# factor bookkeeping


def align_factors(
    ids_a: Sequence[str], E_a: np.ndarray, ids_b: Sequence[str], E_b: np.ndarray
) -> tuple[tuple[str, ...], np.ndarray, np.ndarray]:
    """Rewrite two exponent matrices over the sorted union of their factor ids."""
    ids = tuple(sorted(set(ids_a) | set(ids_b)))
    pos = {f: k for k, f in enumerate(ids)}
    out = []
    for src_ids, E in ((ids_a, E_a), (ids_b, E_b)):
        F = np.zeros((len(ids), E.shape[1]), dtype=np.int64)
        if len(src_ids):
            F[[pos[f] for f in src_ids], :] = E
        out.append(F)
    return ids, out[0], out[1]


# ---------------------------------------------------------------------------
# set operations


def affine_map(A, P: PolyZonotope, b=None) -> PolyZonotope:
    """Exact image {A x + b | x in P}."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[1] != P.dim:
        raise DimensionError(f"matrix has {A.shape[1]} columns, set has dimension {P.dim}")
    c = A @ P.center
    if b is not None:
        b = np.asarray(b, dtype=float).reshape(-1)
        if b.shape[0] != A.shape[0]:
            raise DimensionError("offset length does not match matrix rows")
        c = c + b
    return PolyZonotope(c, A @ P.dep_gen, A @ P.indep_gen, P.exp_mat, P.factor_ids)


def translate(P: PolyZonotope, b) -> PolyZonotope:
    b = np.asarray(b, dtype=float).reshape(-1)
    if b.shape[0] != P.dim:
        raise DimensionError("offset length does not match set dimension")
    return PolyZonotope(P.center + b, P.dep_gen, P.indep_gen, P.exp_mat, P.factor_ids)


def exact_sum(P1: PolyZonotope, P2: PolyZonotope) -> PolyZonotope:
    """Sum {x1 + x2}; factors with equal ids take equal values."""
    if P1.dim != P2.dim:
        raise DimensionError(f"cannot add sets of dimension {P1.dim} and {P2.dim}")
    ids, E1, E2 = align_factors(P1.factor_ids, P1.exp_mat, P2.factor_ids, P2.exp_mat)
    return compact(
        PolyZonotope(
            P1.center + P2.center,
            np.hstack([P1.dep_gen, P2.dep_gen]),
            np.hstack([P1.indep_gen, P2.indep_gen]),
            np.hstack([E1, E2]),
            ids,
        )
    )


def multiply(W: MatPolyZonotope, P: PolyZonotope) -> PolyZonotope:
    """Enclosure of {X x | X in W, x in P} with shared factors identified.

    Products of dependent parts are kept exactly (exponent columns add).
    Terms touching an independent generator keep their center parts
    exactly and bound the rest by interval arithmetic.
    """
    n, m = W.shape
    if m != P.dim:
        raise DimensionError(f"matrix set is {n}x{m}, vector set has dimension {P.dim}")
    ids, Ew, Ep = align_factors(W.factor_ids, W.exp_mat, P.factor_ids, P.exp_mat)
    Cw, Gw, GwI = W.center, W.dep_gen, W.indep_gen
    cp, Gp, GpI = P.center, P.dep_gen, P.indep_gen
    hw, hp = Gw.shape[2], Gp.shape[1]

    dep = [Cw @ Gp, np.einsum("nmh,m->nh", Gw, cp)]
    exps = [Ep, Ew]
    if hw and hp:
        dep.append(np.einsum("nmh,mk->nhk", Gw, Gp).reshape(n, hw * hp))
        exps.append((Ew[:, :, None] + Ep[:, None, :]).reshape(len(ids), hw * hp))

    indep = [Cw @ GpI, np.einsum("nmj,m->nj", GwI, cp)]
    radius = np.zeros(n)
    if hw and GpI.shape[1]:
        radius += np.abs(Gw).sum(axis=2) @ np.abs(GpI).sum(axis=1)
    if GwI.shape[2]:
        lo, hi = interval_hull(P)
        dev = np.maximum(np.abs(lo - cp), np.abs(hi - cp))
        radius += np.abs(GwI).sum(axis=2) @ dev
    indep.append(diag_gens(radius))

    return compact(
        PolyZonotope(Cw @ cp, np.hstack(dep), np.hstack(indep), np.hstack(exps), ids)
    )


def monomial_ranges(E: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Range [lo, hi] of each monomial prod a_k^E[k, i] over the unit box."""
    E = np.asarray(E)
    const = ~E.any(axis=0)
    even = (E % 2 == 0).all(axis=0) & ~const
    lo = np.where(const, 1.0, np.where(even, 0.0, -1.0))
    return lo, np.ones(E.shape[1])


def _univariate_range(coef: np.ndarray) -> tuple[float, float]:
    """Exact range over [-1, 1] of sum_d coef[d] t^d (coef[0] is zero)."""
    deriv = np.polynomial.polynomial.polyder(coef)
    nz = np.flatnonzero(deriv)
    pts = [-1.0, 1.0]
    if nz.size and nz[-1] > 0:
        roots = np.polynomial.polynomial.polyroots(deriv[: nz[-1] + 1])
        real = roots.real[np.abs(roots.imag) <= 1e-12 * (1 + np.abs(roots.real))]
        pts.extend(np.clip(real, -1.0, 1.0))
    vals = np.polynomial.polynomial.polyval(np.array(pts), coef)
    return float(vals.min()), float(vals.max())


def interval_hull(P: PolyZonotope) -> tuple[np.ndarray, np.ndarray]:
    """Per-dimension bounds of P.

    Monomials are bounded one at a time, except that all terms in a single
    factor are bounded together by the exact range of that univariate
    polynomial (never looser than the monomial bounds).
    """
    E, G = P.exp_mat, P.dep_gen
    mlo, mhi = monomial_ranges(E)
    lo = P.center.copy()
    hi = P.center.copy()
    joint = np.zeros(G.shape[1], dtype=bool)
    if G.shape[1]:
        nnz = np.count_nonzero(E, axis=0)
        uni = nnz == 1
        owner = np.argmax(E != 0, axis=0)
        for f in np.unique(owner[uni]):
            cols = np.flatnonzero(uni & (owner == f))
            if cols.size < 2 or E[f, cols].max() < 2:
                continue
            joint[cols] = True
            degs = E[f, cols]
            C = np.zeros((G.shape[0], degs.max() + 1))
            np.add.at(C.T, degs, G[:, cols].T)
            for r in np.flatnonzero(np.count_nonzero(C, axis=1) > 0):
                a, b = _univariate_range(C[r])
                lo[r] += a
                hi[r] += b
    Gs, ls, hs = G[:, ~joint], mlo[~joint], mhi[~joint]
    lo += np.minimum(Gs * ls, Gs * hs).sum(axis=1)
    hi += np.maximum(Gs * ls, Gs * hs).sum(axis=1)
    r = np.abs(P.indep_gen).sum(axis=1)
    return lo - r, hi + r


def compact(P: PolyZonotope) -> PolyZonotope:
    """Merge equal exponent columns, fold constants, drop zero generators and unused factors."""
    c = P.center.copy()
    G, E = P.dep_gen, P.exp_mat
    if G.shape[1]:
        const = ~E.any(axis=0)
        if const.any():
            c += G[:, const].sum(axis=1)
            G, E = G[:, ~const], E[:, ~const]
    if G.shape[1]:
        _, first, inv = np.unique(E, axis=1, return_index=True, return_inverse=True)
        inv = inv.reshape(-1)
        # keep first-occurrence order so compact inputs come back unchanged
        order = np.argsort(first)
        rank = np.empty_like(order)
        rank[order] = np.arange(order.size)
        slot = rank[inv]
        merged = np.zeros((G.shape[0], order.size))
        np.add.at(merged.T, slot, G.T)
        E = E[:, first[order]]
        keep = np.any(merged != 0, axis=0)
        G, E = merged[:, keep], E[:, keep]
    used = E.any(axis=1) if E.shape[1] else np.zeros(E.shape[0], dtype=bool)
    ids = [f for f, u in zip(P.factor_ids, used) if u]
    GI = P.indep_gen[:, np.any(P.indep_gen != 0, axis=0)]
    return PolyZonotope(c, G, GI, E[used], ids)


def reduce_order(P: PolyZonotope, max_gens: int = DEFAULT_MAX_GENS) -> PolyZonotope:
    """Box the smallest generators so that at most max(max_gens, n) remain.

    Boxed dependent generators lose their factor dependency; the result is a
    superset of P with the same interval hull.
    """
    if max_gens < 1:
        raise ValueError("max_gens must be positive")
    h, q, n = P.num_dep, P.num_indep, P.dim
    if h + q <= max_gens:
        return P
    keep_count = max(max_gens - n, 0)
    norms = np.concatenate(
        [np.linalg.norm(P.dep_gen, axis=0), np.linalg.norm(P.indep_gen, axis=0)]
    )
    order = np.argsort(-norms, kind="stable")
    kept = np.zeros(h + q, dtype=bool)
    kept[order[:keep_count]] = True
    keep_dep, keep_ind = kept[:h], kept[h:]

    drop = PolyZonotope(
        np.zeros(n),
        P.dep_gen[:, ~keep_dep],
        P.indep_gen[:, ~keep_ind],
        P.exp_mat[:, ~keep_dep],
        P.factor_ids,
    )
    lo, hi = interval_hull(drop)
    reduced = PolyZonotope(
        P.center + (lo + hi) / 2,
        P.dep_gen[:, keep_dep],
        np.hstack([P.indep_gen[:, keep_ind], diag_gens((hi - lo) / 2)]),
        P.exp_mat[:, keep_dep],
        P.factor_ids,
    )
    return compact(reduced)


def demote_nonlinear(P: PolyZonotope, max_degree: int = 1) -> PolyZonotope:
    """Move dependent monomials of total degree > max_degree to independent generators."""
    deg = P.exp_mat.sum(axis=0)
    high = deg > max_degree
    if not high.any():
        return P
    lo, hi = monomial_ranges(P.exp_mat[:, high])
    G = P.dep_gen[:, high]
    mid = G * (lo + hi) / 2
    rad = G * (hi - lo) / 2
    return compact(
        PolyZonotope(
            P.center + mid.sum(axis=1),
            P.dep_gen[:, ~high],
            np.hstack([P.indep_gen, rad]),
            P.exp_mat[:, ~high],
            P.factor_ids,
        )
    )


# ---------------------------------------------------------------------------
# evaluation


def _check_box(v: np.ndarray, what: str) -> None:
    if v.size and np.max(np.abs(v)) > 1 + 1e-12:
        raise ValueError(f"{what} values must lie in [-1, 1]")


def sample_point(P: PolyZonotope, alpha=None, beta=None) -> np.ndarray:
    """Evaluate the defining expression for given factor values.

    ``alpha`` follows ``P.factor_ids``, ``beta`` the independent generators.
    """
    alpha = np.zeros(P.num_factors) if alpha is None else np.asarray(alpha, dtype=float).reshape(-1)
    beta = np.zeros(P.num_indep) if beta is None else np.asarray(beta, dtype=float).reshape(-1)
    if alpha.shape[0] != P.num_factors or beta.shape[0] != P.num_indep:
        raise DimensionError("factor vector lengths do not match the set")
    _check_box(alpha, "alpha")
    _check_box(beta, "beta")
    mono = np.prod(alpha[:, None] ** P.exp_mat, axis=0)
    return P.center + P.dep_gen @ mono + P.indep_gen @ beta


def sample_points(P: PolyZonotope, alphas, betas=None) -> np.ndarray:
    """Vectorized ``sample_point`` over rows of ``alphas`` (S, p) and ``betas`` (S, q)."""
    alphas = np.asarray(alphas, dtype=float)
    alphas = alphas.reshape(alphas.shape[0] if alphas.ndim == 2 else -1, P.num_factors)
    S = alphas.shape[0]
    betas = np.zeros((S, P.num_indep)) if betas is None else np.asarray(betas, dtype=float).reshape(S, P.num_indep)
    _check_box(alphas, "alpha")
    _check_box(betas, "beta")
    mono = np.prod(alphas[:, :, None] ** P.exp_mat[None, :, :], axis=1)
    return P.center + mono @ P.dep_gen.T + betas @ P.indep_gen.T


def evaluate(P: PolyZonotope, values: Mapping[str, float], beta=None) -> np.ndarray:
    """Evaluate with factor values given by id; missing ids are an error."""
    alpha = [values[f] for f in P.factor_ids]
    return sample_point(P, alpha, beta)


def evaluate_many(P: PolyZonotope, ids: Sequence[str], alphas, betas=None) -> np.ndarray:
    """Vectorized evaluation where columns of ``alphas`` follow ``ids``."""
    pos = {f: k for k, f in enumerate(ids)}
    alphas = np.asarray(alphas, dtype=float)
    cols = [pos[f] for f in P.factor_ids]
    return sample_points(P, alphas[:, cols], betas)


def random_factors(P: PolyZonotope, rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform draws of (alpha, beta) from the unit boxes."""
    return (
        rng.uniform(-1, 1, size=(size, P.num_factors)),
        rng.uniform(-1, 1, size=(size, P.num_indep)),
    )


def stack(parts: Iterable[PolyZonotope]) -> PolyZonotope:
    """Cartesian product keeping shared factors shared."""
    parts = list(parts)
    ids = tuple(sorted(set().union(*(p.factor_ids for p in parts))))
    pos = {f: k for k, f in enumerate(ids)}
    n = sum(p.dim for p in parts)
    h = sum(p.num_dep for p in parts)
    q = sum(p.num_indep for p in parts)
    c, G, GI = np.zeros(n), np.zeros((n, h)), np.zeros((n, q))
    E = np.zeros((len(ids), h), dtype=np.int64)
    r = hc = qc = 0
    for p in parts:
        c[r : r + p.dim] = p.center
        G[r : r + p.dim, hc : hc + p.num_dep] = p.dep_gen
        GI[r : r + p.dim, qc : qc + p.num_indep] = p.indep_gen
        if p.num_factors:
            E[[pos[f] for f in p.factor_ids], hc : hc + p.num_dep] = p.exp_mat
        r, hc, qc = r + p.dim, hc + p.num_dep, qc + p.num_indep
    return compact(PolyZonotope(c, G, GI, E, ids))

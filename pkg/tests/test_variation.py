import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyreach import polyzono as pz
from polyreach.network import NUM_CODES, dequantize
from polyreach.variation import (FACTOR_IDS, MONOMIALS, NUM_COEFFS, VARIANTS, FitError, UnknownCodeError,
                                 VariationModel, build_weight_matrix_set, fit_coefficients, fit_model,
                                 leakage_set, leakage_sets, monomial_values, substitute, synth_circuit,
                                 synth_samples, weight_set)


def model_with(coef=None, leak=None, d3=0.0, sigma=0.1, k=3.0):
    """Every code/variant gets the same coefficients ``coef`` (dict monomial -> value)."""
    C = np.zeros((3, NUM_CODES, NUM_COEFFS))
    L = np.zeros((NUM_CODES, NUM_COEFFS))
    for mono, val in (coef or {}).items():
        C[:, :, MONOMIALS.index(mono)] = val
    for mono, val in (leak or {}).items():
        L[:, MONOMIALS.index(mono)] = val
    return VariationModel(C, L, np.full((3, NUM_CODES), d3), sigma, sigma, k)


def hull(S):
    P = S.flatten() if hasattr(S, "flatten") else S
    lo, hi = pz.interval_hull(P)
    return lo, hi


def test_weight_set_constant():
    m = model_with({(0, 0): 0.7})
    W = weight_set(5, "hidden", m)
    assert W.num_dep == 0 and W.num_indep == 0
    assert W.center[0, 0] == 0.7


def test_weight_set_linear():
    W = weight_set(5, "hidden", model_with({(1, 0): 1.0}))
    lo, hi = hull(W)
    np.testing.assert_allclose([lo[0], hi[0]], [0.7, 1.3], atol=1e-15)
    assert W.factor_ids == FACTOR_IDS


def test_weight_set_square_matches_scan():
    W = weight_set(5, "first_pos", model_with({(2, 0): 1.0}))
    lo, hi = hull(W)
    scan = (1 + 0.3 * np.linspace(-1, 1, 2001)) ** 2
    np.testing.assert_allclose([lo[0], hi[0]], [scan.min(), scan.max()], atol=1e-12)
    np.testing.assert_allclose([lo[0], hi[0]], [0.49, 1.69], atol=1e-12)


def test_weight_set_unknown_code():
    m = VariationModel(np.zeros((3, 64, 10)), np.zeros((64, 10)), np.zeros((3, 64)), 0.1, 0.1,
                       available=np.zeros((3, 64), bool))
    with pytest.raises(UnknownCodeError):
        weight_set(3, "hidden", m)
    with pytest.raises(UnknownCodeError):
        weight_set(3, "sideways", model_with())


@settings(max_examples=30, deadline=None)
@given(code=st.integers(0, 63), variant=st.sampled_from(VARIANTS),
       a=st.tuples(*[st.floats(-1, 1)] * 3))
def test_substitution_consistency(model, code, variant, a):
    W = weight_set(code, variant, model).flatten()
    got = pz.evaluate(W, dict(zip(FACTOR_IDS, a)))[0]
    s1, s2 = model.scales
    want = model.weight(code, variant, 1 + s1 * a[0], 1 + s2 * a[1], a[2])
    assert got == pytest.approx(want, abs=1e-12)


def test_substitute_identity_and_inverse(rng):
    c = rng.normal(size=(5, NUM_COEFFS))
    np.testing.assert_allclose(substitute(c, 0, 1, 0, 1), c)
    back = substitute(substitute(c, 1.0, 0.2, 1.0, 0.3), -5.0, 5.0, -10 / 3, 10 / 3)
    np.testing.assert_allclose(back, c, atol=1e-9)


def test_nominal_recovery(model):
    for code in (0, 17, 63):
        for v in VARIANTS:
            lo, hi = hull(weight_set(code, v, model))
            assert lo[0] <= dequantize(code) <= hi[0]
    nom = VariationModel.nominal()
    W = weight_set(17, "hidden", nom)
    assert W.num_dep == 0 and W.center[0, 0] == dequantize(17)


def test_matrix_set_nominal():
    codes = np.array([[0, 63], [31, 5]])
    W = build_weight_matrix_set(codes, False, VariationModel.nominal())
    np.testing.assert_array_equal(W.center, dequantize(codes))
    assert W.num_dep == 0


def test_matrix_set_linear_hidden():
    W = build_weight_matrix_set([[9]], False, model_with({(1, 0): 1.0}))
    lo, hi = hull(W)
    np.testing.assert_allclose([lo[0], hi[0]], [0.7, 1.3])


def test_matrix_set_pointwise(model):
    codes = np.array([[3, 40], [12, 63]])
    W = build_weight_matrix_set(codes, False, model)
    a = np.array([1.0, 0.0, 0.0])
    got = pz.evaluate(W.flatten(), dict(zip(FACTOR_IDS, a))).reshape(2, 2)
    s1, _ = model.scales
    want = model.weight(codes, "hidden", 1 + s1, 1.0)
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_matrix_set_first_layer_variants(model):
    codes = np.array([[3, 40, 7]])
    W = build_weight_matrix_set(codes, True, model, [1, -1, 0])
    c = W.center[0]
    assert c[0] == pytest.approx(model.alpha_coeffs("first_pos")[3, 0])
    assert c[1] == pytest.approx(model.alpha_coeffs("first_neg")[40, 0])
    mid = (model.alpha_coeffs("first_pos")[7, 0] + model.alpha_coeffs("first_neg")[7, 0]) / 2
    assert c[2] == pytest.approx(mid)
    # the mixed column contains both variants
    lo, hi = hull(W)
    rng = np.random.default_rng(0)
    a = rng.uniform(-1, 1, size=(500, 3))
    s1, s2 = model.scales
    for v in ("first_pos", "first_neg"):
        w = model.weight(7, v, 1 + s1 * a[:, 0], 1 + s2 * a[:, 1], a[:, 2])
        assert np.all(w >= lo[2] - 1e-12) and np.all(w <= hi[2] + 1e-12)
    with pytest.raises(ValueError):
        build_weight_matrix_set(codes, True, model)


def test_structural_zeros(model):
    W = build_weight_matrix_set([[-1, 5]], False, model)
    P = W.flatten()
    assert P.center[0] == 0 and np.all(P.dep_gen[0] == 0) and np.all(P.indep_gen[0] == 0)


def test_leakage_examples():
    assert leakage_set([1, 2], model_with()).num_dep == 0
    L = leakage_set([1, 2], model_with(leak={(0, 0): 1e-3}))
    assert L.center[0] == pytest.approx(1e-3) and L.num_dep == 0
    L = leakage_set([1, 2], model_with(leak={(1, 0): 1e-3}))
    lo, hi = pz.interval_hull(L)
    np.testing.assert_allclose([lo[0], hi[0]], [7e-4, 1.3e-3], rtol=1e-12)
    assert set(L.factor_ids) <= set(FACTOR_IDS)


def test_leakage_row_mean(model):
    L = leakage_sets(np.array([[3, 9, -1], [4, 4, 4]]), model)
    a = {"alpha1": 0.4, "alpha2": -0.7}
    s1, s2 = model.scales
    got = pz.evaluate(L, a)
    want0 = np.mean(model.leak([3, 9], 1 + 0.4 * s1, 1 - 0.7 * s2))
    want1 = model.leak(4, 1 + 0.4 * s1, 1 - 0.7 * s2)
    np.testing.assert_allclose(got, [want0, want1], atol=1e-15)


# -- fitting ------------------------------------------------------------------


def random_surface(rng):
    return rng.normal(size=NUM_COEFFS)


def test_fit_exact_recovery(rng):
    c = random_surface(rng)
    phi1, phi2 = 1 + 0.1 * rng.standard_normal(200), 1 + 0.1 * rng.standard_normal(200)
    w = monomial_values(phi1, phi2) @ c
    got, res = fit_coefficients(phi1, phi2, w)
    np.testing.assert_allclose(got, c, atol=1e-6)
    assert res <= 1e-9


def test_fit_constant():
    rng = np.random.default_rng(3)
    got, res = fit_coefficients(rng.normal(1, 0.1, 50), rng.normal(1, 0.1, 50), np.full(50, 0.42))
    assert got[0] == pytest.approx(0.42, abs=1e-9)
    np.testing.assert_allclose(got[1:], 0, atol=1e-7)


@pytest.mark.parametrize("seed", range(20))
def test_fit_noisy_residual(seed):
    rng = np.random.default_rng(seed)
    c = random_surface(rng)
    eps, n = 1e-3, 200
    phi1, phi2 = 1 + 0.05 * rng.standard_normal(n), 1 + 0.05 * rng.standard_normal(n)
    D = monomial_values(phi1, phi2)
    w = D @ c + rng.uniform(-eps, eps, n)
    got, res = fit_coefficients(phi1, phi2, w)
    # least-squares residual (I - H) e is bounded by eps * (1 + max row norm of H)
    H = D @ np.linalg.pinv(D)
    assert 0.5 * eps <= res <= eps * (1 + np.abs(H).sum(axis=1).max())
    assert np.all(np.abs(D @ got - w) <= res * (1 + 1e-9))


def test_fit_rank_deficient():
    phi = np.linspace(0.9, 1.1, 30)
    with pytest.raises(FitError):
        fit_coefficients(phi, np.ones(30), phi)
    with pytest.raises(FitError):
        fit_coefficients(np.ones(5), np.ones(5), np.ones(5))


def test_fit_model_conformance():
    """Every fitting sample inside the hull of its weight set."""
    rows = synth_samples(2, per_group=40, codes=[0, 20, 45])
    model, residuals = fit_model(rows, 0.05, 0.05, k_sigma=5.0)
    assert set(residuals) == {(c, v) for c in (0, 20, 45) for v in VARIANTS}
    for phi1, phi2, code, variant, w, _ in rows:
        if abs(phi1 - 1) > 0.25 or abs(phi2 - 1) > 0.25:
            continue
        lo, hi = hull(weight_set(code, variant, model))
        assert lo[0] - 1e-12 <= w <= hi[0] + 1e-12
    with pytest.raises(UnknownCodeError):
        weight_set(1, "hidden", model)


def test_fit_model_errors():
    rows = synth_samples(0, per_group=20, codes=[1], variants=["hidden"])
    bad = [(r[0], r[1], 1, "sideways", r[4]) for r in rows]
    with pytest.raises(FitError, match="unknown variant"):
        fit_model(rows + bad)
    with pytest.raises(FitError):
        fit_model([])


def test_fit_model_sigma_default():
    rows = synth_samples(0, per_group=200, codes=[1], variants=["hidden"], sigma1=0.05, sigma2=0.02)
    model, _ = fit_model(rows)
    assert model.sigma1 == pytest.approx(0.05, rel=0.15)
    assert model.sigma2 == pytest.approx(0.02, rel=0.15)


# -- synthetic circuit --------------------------------------------------------


@pytest.mark.parametrize("code", [0, 31, 63])
def test_synth_nominal(code):
    for v in VARIANTS:
        circ = synth_circuit(5, code, v, noise=0.0)
        assert circ.response(1.0, 1.0) == dequantize(code)


def test_synth_deterministic():
    a = synth_samples(11, per_group=5, codes=[2, 3])
    b = synth_samples(11, per_group=5, codes=[2, 3])
    assert a == b
    assert a != synth_samples(12, per_group=5, codes=[2, 3])


def test_synth_spread():
    phi1, phi2, w, _ = synth_circuit(0, 40, "hidden").sample(1000)
    assert np.ptp(w) > 0


def test_synth_noise_free_round_trip():
    circ = synth_circuit(4, 50, "first_neg", noise=0.0)
    phi1, phi2, w, _ = circ.sample(100)
    got, res = fit_coefficients(phi1, phi2, w)
    np.testing.assert_allclose(got, circ.coefficients(), atol=1e-6)
    assert res <= 1e-9


def test_model_json_round_trip(tmp_path, model):
    model.save(tmp_path / "m.json")
    back = VariationModel.load(tmp_path / "m.json")
    assert back.equals(model)
    assert back.with_k_sigma(2.0).scales == pytest.approx((0.1, 0.1))

import numpy as np
import pytest

from polyreach import fixtures
from polyreach import polyzono as pz
from polyreach.montecarlo import sample_outputs
from polyreach.network import NUM_CODES, LayerSpec, NetworkSpec, dequantize, nominal_forward, predict
from polyreach.polyzono import PolyZonotope
from polyreach.variation import MONOMIALS, NUM_COEFFS, VariationModel
from polyreach.verifier import (ResourceLimitError, VerificationReport, VerificationTask,
                                build_input_set, check_classification, classification_margins, propagate,
                                verified_accuracy, verify, verify_many)


def phi1_scaled_model(sigma=0.1, k=3.0):
    C = np.zeros((3, NUM_CODES, NUM_COEFFS))
    C[:, :, MONOMIALS.index((1, 0))] = dequantize(np.arange(NUM_CODES))
    return VariationModel(C, np.zeros((NUM_CODES, NUM_COEFFS)), np.zeros((3, NUM_CODES)), sigma, sigma, k)


def toy_net():
    return NetworkSpec(1, (LayerSpec("dense", [[50], [10]], [0.1, 0.3]), LayerSpec("dense", [[60, 5]], [0.2])))


def test_build_input_set():
    P = build_input_set([0.0, 0.0], 1.0)
    lo, hi = pz.interval_hull(P)
    np.testing.assert_array_equal(lo, [-1, -1])
    np.testing.assert_array_equal(hi, [1, 1])
    Q = build_input_set([0.5, 2.0])
    assert Q.num_dep == 0 and list(Q.center) == [0.5, 2.0]
    with pytest.raises(ValueError):
        build_input_set([0.0], -1)


@pytest.mark.parametrize("name", fixtures.FIXTURE_NAMES)
def test_degeneracy(nets, name):
    net = nets[name]
    X, _ = fixtures.build_patterns(name, 5, seed=3, net=net)
    for x in X:
        Y = propagate(net, VariationModel.nominal(), build_input_set(x)).output
        lo, hi = pz.interval_hull(Y)
        y = nominal_forward(net, x)
        np.testing.assert_allclose(lo, y, atol=1e-9)
        np.testing.assert_allclose(hi, y, atol=1e-9)


@pytest.mark.parametrize("x", [-0.8, 0.4, 1.5])
def test_toy_net_mc(x):
    net, model = toy_net(), phi1_scaled_model()
    r = verify(VerificationTask(net, model, [x], 0))
    outs, _ = sample_outputs(net, model, [x], 1000, np.random.default_rng(0), truncated=True)
    assert np.all(outs >= r.output_lo) and np.all(outs <= r.output_hi)


def test_toy_net_monotone_in_k():
    net, model = toy_net(), phi1_scaled_model()
    widths = []
    for k in (0.0, 1.0, 2.0, 3.0):
        r = verify(VerificationTask(net, model, [0.4], 0, k_sigma=k))
        widths.append(float(np.sum(r.output_hi - r.output_lo)))
    assert all(a <= b + 1e-12 for a, b in zip(widths, widths[1:]))
    assert widths[0] == pytest.approx(0.0, abs=1e-12)


def test_check_classification_examples():
    assert check_classification(PolyZonotope([3.0, 1.0, 0.0]), 0)
    assert not check_classification(PolyZonotope([1.0, 1.0]), 0)
    assert check_classification(PolyZonotope([0.7]), 1)
    assert check_classification(PolyZonotope([0.2]), 0)
    assert not check_classification(PolyZonotope([0.5]), 1)


def test_dependency_aware_difference():
    # y0 = 2 + a, y1 = 1 + a: hulls overlap, the difference is always 1
    Y = PolyZonotope([2.0, 1.0], [[1.0], [1.0]], None, [[1]], ["alpha1"])
    lo, hi = pz.interval_hull(Y)
    assert lo[0] < hi[1]
    assert check_classification(Y, 0)
    a = np.random.default_rng(0).uniform(-1, 1, size=(1000, 1))
    vals = pz.sample_points(Y, a)
    assert np.all(vals[:, 0] - vals[:, 1] >= classification_margins(Y, 0)[0] - 1e-12)


def test_scaling_invariance(rng):
    Y = PolyZonotope(rng.normal(size=3) + [2, 0, 0], rng.normal(size=(3, 2)) * 0.1, None, [[1, 0], [1, 2]],
                     ["a", "b"])
    assert check_classification(Y, 0) == check_classification(pz.affine_map(3.0 * np.eye(3), Y), 0)


@pytest.mark.parametrize("seed", range(5))
def test_no_counterexample_when_verified(model, nets, seed):
    """Randomized search: a verified pattern never has a sample classified otherwise."""
    name = fixtures.FIXTURE_NAMES[seed % 4]
    net = nets[name]
    X, labels = fixtures.build_patterns(name, 6, seed=seed, net=net)
    m = model.with_k_sigma(1.0)
    for i, (x, lab) in enumerate(zip(X, labels)):
        r = verify(VerificationTask(net, m, x, int(lab)))
        if not r.verified:
            continue
        outs, _ = sample_outputs(net, m, x, 300, np.random.default_rng([seed, i]), truncated=True)
        assert all(predict(y) == lab for y in outs)


def test_report_round_trip(model, nets):
    net = nets["iris"]
    r = verify(VerificationTask(net, model, np.zeros(4) + 0.1, 0), keep_layers=True)
    back = VerificationReport.from_dict(r.to_dict())
    np.testing.assert_array_equal(back.output_lo, r.output_lo)
    assert back.verified == r.verified and len(back.layer_hulls) == len(net.layers) + 1


def test_task_validation(model, nets):
    with pytest.raises(ValueError):
        VerificationTask(nets["iris"], model, np.zeros(3), 0)
    with pytest.raises(ValueError):
        VerificationTask(nets["iris"], model, np.zeros(4), 5)


def test_resource_limit(model, nets, monkeypatch):
    from polyreach import verifier

    monkeypatch.setattr(verifier, "HARD_GEN_CAP", 1000)
    net = nets["mnist_dense"]
    task = VerificationTask(net, model, np.full(196, 0.05), 0, epsilon=0.01)
    with pytest.raises(ResourceLimitError):
        verify(task)


def test_verify_many_parallel_matches_serial(model, nets):
    net = nets["iris"]
    X, labels = fixtures.build_patterns("iris", 4, net=net)
    tasks = [VerificationTask(net, model, x, int(l)) for x, l in zip(X, labels)]
    a = verify_many(tasks, jobs=1)
    b = verify_many(tasks, jobs=2)
    for ra, rb in zip(a, b):
        np.testing.assert_array_equal(ra.output_lo, rb.output_lo)
    acc, nom, _ = verified_accuracy(tasks)
    assert 0 <= acc <= nom <= 1

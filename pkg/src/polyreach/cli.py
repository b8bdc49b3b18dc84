"""Command-line front end.

Exit codes: 0 success, 2 usage or format error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import fixtures, formats
from .montecarlo import enclosure_percentage, sample_outputs, write_samples_csv
from .network import NetworkFormatError, NetworkSpec
from .polyzono import DEFAULT_MAX_GENS, DimensionError
from .variation import FitError, UnknownCodeError, VariationModel, fit_model, synth_samples, synthetic_model
from .verifier import ResourceLimitError, VerificationTask, verify, verify_many
from .zonotope import propagate_zonotope

log = logging.getLogger("polyreach")

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE = 0, 2, 3


class UsageError(Exception):
    pass


def _default_seed() -> int:
    env = os.environ.get("POLYREACH_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"POLYREACH_SEED must be an integer, got {env!r}") from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonneg_float(text: str) -> float:
    v = float(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _load_inputs(args) -> tuple[NetworkSpec, VariationModel, np.ndarray, np.ndarray]:
    net = NetworkSpec.load(args.net)
    model = VariationModel.load(args.coeffs)
    if args.sigma_mult is not None:
        model = model.with_k_sigma(args.sigma_mult)
    X, labels = formats.read_patterns(args.patterns)
    if X.shape[1] != net.input_dim:
        raise DimensionError(f"patterns have {X.shape[1]} features, network expects {net.input_dim}")
    n_classes = max(net.output_dim, 2)
    if labels.max() >= n_classes:
        raise DimensionError(f"label {labels.max()} out of range for {n_classes} classes")
    return net, model, X, labels


def _tasks(net, model, X, labels, epsilon):
    return [VerificationTask(net, model, x, int(lab), epsilon) for x, lab in zip(X, labels)]


# ---------------------------------------------------------------------------
# commands


def cmd_synth(args) -> int:
    rows = synth_samples(args.seed, args.per_group, args.sigma1, args.sigma2, args.noise)
    formats.write_samples(args.out, rows)
    print(f"wrote {len(rows)} samples to {args.out}")
    return EXIT_OK


def cmd_fit(args) -> int:
    rows = formats.read_samples(args.samples)
    model, residuals = fit_model(rows, args.sigma1, args.sigma2, args.sigma_mult or 3.0)
    for (code, variant), res in sorted(residuals.items()):
        print(f"code {code:2d} {variant:9s} residual {res:.3e}")
    model.save(args.out)
    print(f"sigma1={model.sigma1:.6g} sigma2={model.sigma2:.6g}; wrote {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    net, model, X, labels = _load_inputs(args)
    reports = verify_many(_tasks(net, model, X, labels, args.epsilon), args.jobs,
                          max_gens=args.max_gens, keep_layers=args.layers)
    for i, r in enumerate(reports):
        status = "verified" if r.verified else "unverified"
        print(f"pattern {i}: {status} label={r.label} nominal={r.nominal_prediction} time={r.wall_time:.3f}s")
    acc = float(np.mean([r.verified for r in reports]))
    nom = float(np.mean([r.nominal_prediction == r.label for r in reports]))
    print(f"verified accuracy: {acc:.4f} (nominal {nom:.4f}, k_sigma={model.k_sigma:g}, patterns={len(reports)})")
    if args.report:
        doc = {
            "seed": args.seed,
            "sigma_mult": model.k_sigma,
            "epsilon": args.epsilon,
            "verified_accuracy": acc,
            "nominal_accuracy": nom,
            "patterns": [r.to_dict() for r in reports],
        }
        Path(args.report).write_text(json.dumps(doc, indent=1))
    return EXIT_OK


def cmd_mc(args) -> int:
    net, model, X, labels = _load_inputs(args)
    reports = verify_many(_tasks(net, model, X, labels, args.epsilon), args.jobs, max_gens=args.max_gens)
    fractions = []
    for i, (x, r) in enumerate(zip(X, reports)):
        rng = np.random.default_rng([args.seed, i])
        outs, draws = sample_outputs(net, model, x, args.samples, rng, args.truncated, args.epsilon)
        frac = enclosure_percentage(outs, r.output_lo, r.output_hi)
        fractions.append(frac)
        print(f"pattern {i}: enclosure {100 * frac:.2f}%")
        if args.dump:
            write_samples_csv(args.dump, args.seed, draws, outs, pattern=i, append=i > 0)
    print(f"average enclosure: {100 * float(np.mean(fractions)):.2f}% "
          f"({'truncated' if args.truncated else 'untruncated'}, {args.samples} samples, seed {args.seed})")
    return EXIT_OK


COMPARE_HEADER = ["pattern", "dim", "poly_lo", "poly_hi", "poly_width", "zono_lo", "zono_hi", "zono_width",
                  "poly_verified", "zono_verified"]


def cmd_compare(args) -> int:
    net, model, X, labels = _load_inputs(args)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(COMPARE_HEADER)
        for i, task in enumerate(_tasks(net, model, X, labels, args.epsilon)):
            rp = verify(task, max_gens=args.max_gens)
            rz = propagate_zonotope(task, max_gens=args.max_gens)
            for d in range(net.output_dim):
                w.writerow([i, d, rp.output_lo[d], rp.output_hi[d], rp.output_hi[d] - rp.output_lo[d],
                            rz.output_lo[d], rz.output_hi[d], rz.output_hi[d] - rz.output_lo[d],
                            int(rp.verified), int(rz.verified)])
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_fixtures(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in fixtures.FIXTURE_NAMES:
        net = fixtures.build_network(name, args.seed)
        net.save(out / f"{name}.json")
        X, labels = fixtures.build_patterns(name, args.patterns, args.seed, net)
        formats.write_patterns(out / f"{name}_patterns.csv", X, labels)
    synthetic_model(args.seed).save(out / "coeffs.json")
    print(f"wrote fixtures to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyreach", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        if seed:
            p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $POLYREACH_SEED or 0)")

    def set_inputs(p):
        p.add_argument("net", help="network JSON")
        p.add_argument("coeffs", help="coefficient-table JSON")
        p.add_argument("patterns", help="patterns CSV (label in last column)")
        p.add_argument("--sigma-mult", type=_nonneg_float, default=None, help="domain multiplier k_sigma")
        p.add_argument("--epsilon", type=_nonneg_float, default=0.0, help="input perturbation radius")
        p.add_argument("--max-gens", type=_positive_int, default=DEFAULT_MAX_GENS)
        p.add_argument("--jobs", type=_positive_int, default=None, help="worker processes (default: all cores)")

    p = sub.add_parser("synth", help="write synthetic weight-cell samples")
    common(p)
    p.add_argument("--out", required=True)
    p.add_argument("--per-group", type=_positive_int, default=60)
    p.add_argument("--sigma1", type=_nonneg_float, default=0.05)
    p.add_argument("--sigma2", type=_nonneg_float, default=0.05)
    p.add_argument("--noise", type=_nonneg_float, default=1e-3)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("fit", help="fit coefficient tables from samples")
    common(p)
    p.add_argument("samples")
    p.add_argument("--out", required=True)
    p.add_argument("--sigma1", type=_nonneg_float, default=None, help="default: empirical std of phi1")
    p.add_argument("--sigma2", type=_nonneg_float, default=None, help="default: empirical std of phi2")
    p.add_argument("--sigma-mult", type=_nonneg_float, default=None)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("verify", help="verify patterns under process variation")
    common(p)
    set_inputs(p)
    p.add_argument("--report", default=None, help="write JSON report here")
    p.add_argument("--layers", action="store_true", help="include per-layer hulls in the report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mc", help="Monte-Carlo enclosure check")
    common(p)
    set_inputs(p)
    p.add_argument("--samples", type=_positive_int, default=1000)
    p.add_argument("--truncated", action="store_true", help="draw parameters inside the domains only")
    p.add_argument("--dump", default=None, help="CSV sample dump")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("compare", help="polynomial vs zonotope hulls (CSV)")
    common(p)
    set_inputs(p)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("fixtures", help="write fixture networks, patterns and a synthetic model")
    common(p)
    p.add_argument("--out", required=True)
    p.add_argument("--patterns", type=_positive_int, default=50)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, formats.FormatError, FitError, UnknownCodeError, NetworkFormatError,
            DimensionError, FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

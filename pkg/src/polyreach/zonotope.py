"""Degree-1 (zonotope) baseline for comparison with the polynomial pipeline."""

from __future__ import annotations

from dataclasses import replace

from . import polyzono as pz
from .verifier import VerificationReport, VerificationTask, verify
from .variation import VariationModel


def linearize_model(model: VariationModel) -> VariationModel:
    """Same coefficients; set construction keeps only alpha-monomials of degree <= 1.

    Dropped monomials become independent generators of their coefficient's
    magnitude, so every linearized weight set contains the original one.
    """
    return replace(model, max_degree=1, _cache={})


def propagate_zonotope(task: VerificationTask, max_gens: int = pz.DEFAULT_MAX_GENS,
                       keep_layers: bool = False) -> VerificationReport:
    """Verify with the linearized model, demoting every product of factors."""
    lin = replace(task, model=linearize_model(task.model))
    return verify(lin, max_gens=max_gens, linear=True, keep_layers=keep_layers)

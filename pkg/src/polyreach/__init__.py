"""Reachability-based verification of analog neural networks under process variations."""

from .network import LayerSpec, NetworkSpec, dequantize, nominal_forward, quantize
from .polyzono import (
    MatPolyZonotope,
    PolyZonotope,
    affine_map,
    compact,
    exact_sum,
    interval_hull,
    multiply,
    reduce_order,
    sample_point,
)
from .relu import enclose_relu
from .variation import VariationModel, fit_coefficients, synth_circuit
from .verifier import VerificationReport, VerificationTask, build_input_set, check_classification, propagate, verify

__version__ = "0.1.0"

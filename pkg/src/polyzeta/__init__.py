"""Polymer-quantized xp models and the Riemann zero counting function."""

from . import bk_model, errors, findings, phase_space, riemann, sierra_model, specfun, verify_numeric

__version__ = "0.1.0"

__all__ = [
    "bk_model",
    "errors",
    "findings",
    "phase_space",
    "riemann",
    "sierra_model",
    "specfun",
    "verify_numeric",
]

"""Learning sparse Pauli-Lindblad noise models for layers of Hermitian Clifford gates."""

from .clifford import CliffordTableau, GateClassification, classify_two_qubit, standard_gate
from .layer import Gate, Layer
from .model import ModelSpec, NoiseModel, generate_terms
from .pauli import PauliString, PhasedPauli, parse

__version__ = "0.1.0"

__all__ = [
    "CliffordTableau",
    "Gate",
    "GateClassification",
    "Layer",
    "ModelSpec",
    "NoiseModel",
    "PauliString",
    "PhasedPauli",
    "classify_two_qubit",
    "generate_terms",
    "parse",
    "standard_gate",
    "__version__",
]

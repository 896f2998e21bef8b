"""Exact Fock representations of parafermions and parabosons in a Gelfand-Zetlin basis."""

from .exactnum import RadicalSum, sqrt_normalize
from .gzbasis import GZPattern, Signature, basis
from .fockmodule import GeneratorLabel, matrix, verify_relations

__version__ = "0.1.0"

__all__ = [
    "RadicalSum",
    "sqrt_normalize",
    "GZPattern",
    "Signature",
    "basis",
    "GeneratorLabel",
    "matrix",
    "verify_relations",
]

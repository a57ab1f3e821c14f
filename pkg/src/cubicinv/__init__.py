"""Exact inversion of cubic-linear polynomial maps ``F = Id + (L_1^3, ..., L_d^3)``."""
from ._backend import BACKEND
from .druzkowski import DruzkowskiMap, GeneratorConfig, from_matrix, generate_leveled, paper_example
from .inversion import InversionResult, Status, invert, p_sequence, taylor_components, verify_inverse
from .poly import NEG_INFINITY, Polynomial
from .polymap import NOT_NILPOTENT, PolyMap, PolyMatrix, jacobian, nilpotency_index

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DruzkowskiMap",
    "GeneratorConfig",
    "InversionResult",
    "NEG_INFINITY",
    "NOT_NILPOTENT",
    "PolyMap",
    "PolyMatrix",
    "Polynomial",
    "Status",
    "from_matrix",
    "generate_leveled",
    "invert",
    "jacobian",
    "nilpotency_index",
    "p_sequence",
    "paper_example",
    "taylor_components",
    "verify_inverse",
]

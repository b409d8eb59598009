"""Exact orbit-method quantization, Virasoro Verma modules and oscillator Fock spaces."""

from .exact import RationalMatrix, determinant, kernel_basis, rref
from .lie import Functional, LieAlgebra, Subalgebra, catalog, check_jacobi
from .weyl import Polynomial, WeylOperator, apply, commutator, multiply

__all__ = [
    "Functional",
    "LieAlgebra",
    "Polynomial",
    "RationalMatrix",
    "Subalgebra",
    "WeylOperator",
    "apply",
    "catalog",
    "check_jacobi",
    "commutator",
    "determinant",
    "kernel_basis",
    "multiply",
    "rref",
]

__version__ = "0.1.0"

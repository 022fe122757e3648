"""Exact differential geometry on the reduced quantum group C_q[SL_2] at odd roots of unity."""

from .cyclotomic import CyclotomicField, CycScalar, field
from .algebra import AlgElem, ReducedQuantumSL2, algebra
from .exterior import ExteriorAlgebra, InvForm, LeftAction, exterior
from .linalg import LinOp, Subspace, image, kernel, rank, rref, solve
from .derham import DeRhamComplex, Form, complex_for

__version__ = "0.1.0"

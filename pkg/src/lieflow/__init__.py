"""Lie-series integration of analytic vector fields on C^p.

The package realizes vector fields as banded left-invariant operators on
an approximated coalgebra, extends them to derivations on the tensor
algebra, and integrates flows through a certifiably convergent
exponential pairing. A finite-dimensional harness verifies the duality
identity that makes the construction tick.
"""

from .multiindex import MultiIndex, mi
from .coalgebra import BasisSymbol, FaVector, RegularOperator
from .tensor_algebra import TensorElement
from .vector_field import VectorField
from .lie_analysis import (
    CapError,
    ChainSpec,
    DomainError,
    FlowRequest,
    FlowResult,
    OrderCapError,
    eps_chain_direct,
    eps_chain_pathsum,
    chain_bound,
    exp_pairing,
    exp_pairing_composed,
    flow,
)

__version__ = "0.1.0"

__all__ = [
    "MultiIndex", "mi", "BasisSymbol", "FaVector", "RegularOperator",
    "TensorElement", "VectorField", "ChainSpec", "FlowRequest", "FlowResult",
    "DomainError", "CapError", "OrderCapError",
    "eps_chain_direct", "eps_chain_pathsum", "chain_bound",
    "exp_pairing", "exp_pairing_composed", "flow",
    "__version__",
]

"""Geometric measure of entanglement for multipartite pure and mixed states."""
from . import closed_forms, convexify, errors, ghz_w_family, hartree, mixed_bipartite, states, witnesses
from .hartree import EntanglementResult, SolverOptions, entanglement_eigenvalue
from .states import DensityMatrix, Ensemble, ProductState, PureState

__all__ = [
    "closed_forms",
    "convexify",
    "errors",
    "ghz_w_family",
    "hartree",
    "mixed_bipartite",
    "states",
    "witnesses",
    "EntanglementResult",
    "SolverOptions",
    "entanglement_eigenvalue",
    "DensityMatrix",
    "Ensemble",
    "ProductState",
    "PureState",
]

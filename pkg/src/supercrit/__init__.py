"""Spectral data of the self-adjoint radial Dirac-Coulomb Hamiltonian for any coupling."""

__version__ = "0.1.0"

from .radial import ChannelParams, Doublet, SolutionKind, eval_solution
from .extensions import (ExtensionParam, Region, classify, count_extension_parameters,
                         default_extension, omega_ext, solutions)
from .spectral import (BoundState, continuum_density, eigenfunction, find_discrete_spectrum,
                       greens_function)

__all__ = [
    "ChannelParams", "Doublet", "SolutionKind", "eval_solution",
    "ExtensionParam", "Region", "classify", "count_extension_parameters",
    "default_extension", "omega_ext", "solutions",
    "BoundState", "continuum_density", "eigenfunction", "find_discrete_spectrum",
    "greens_function",
]

"""Numerical toolkit for a twisted trigonometric spin chain.

Fundamental and fused R-matrices, boundary K-matrices, open and
periodic transfer matrices, the local Hamiltonian, joint spectra with
conserved charges, T-Q eigenvalue expressions, and a Bethe-equation
solver, all verified against each other by residual checks.
"""

from . import bethe, boundary, fusion, rmatrix, spectrum, transfer
from .bethe import (BetheState, SolveConfig, bae_residuals, energy,
                    lambda_bar_open, lambda_bar_periodic, lambda_open,
                    lambda_periodic, q_functions, solve_bae)
from .operators import LabeledOperator, embed, partial_trace
from .params import ModelParams
from .reporting import VerificationReport
from .spectrum import JointSpectrum, asymptotic_charges, joint_diagonalize
from .transfer import hamiltonian, transfer_open, transfer_periodic

__version__ = "0.1.0"

__all__ = [
    "BetheState", "JointSpectrum", "LabeledOperator", "ModelParams",
    "SolveConfig", "VerificationReport", "asymptotic_charges",
    "bae_residuals", "bethe", "boundary", "embed", "energy", "fusion",
    "hamiltonian", "joint_diagonalize", "lambda_bar_open",
    "lambda_bar_periodic", "lambda_open", "lambda_periodic",
    "partial_trace", "q_functions", "rmatrix", "solve_bae", "spectrum",
    "transfer", "transfer_open", "transfer_periodic",
]

"""Spectral solver for free Euler-Bernoulli beam vibrations under nine support cases."""
from .evolution import (
    InitialState,
    MaterialParams,
    ModalCoefficients,
    ModalSolution,
    SampledProfile,
    coefficients_at,
    evaluate_solution,
    modal_energy,
    preset,
    project,
    unitary_phase_check,
)
from .fdoracle import StaggeredGrid, assemble_operator, leapfrog_evolve, lowest_eigenvalues
from .modes import EigenMode, build_mode, build_modes, bv_residual, gram_matrix
from .quadrature import BeamGeometry, QuadratureSettings
from .spectrum import EigenvalueRecord, analytic_spectrum, characteristic_function, eigenvalues, find_kappas
from .supports import CASES, SupportCase, get_case, kernel_dimension, mirror, parse_case

__version__ = "0.1.0"

__all__ = [
    "BeamGeometry",
    "CASES",
    "EigenMode",
    "EigenvalueRecord",
    "InitialState",
    "MaterialParams",
    "ModalCoefficients",
    "ModalSolution",
    "QuadratureSettings",
    "SampledProfile",
    "StaggeredGrid",
    "SupportCase",
    "analytic_spectrum",
    "assemble_operator",
    "build_mode",
    "build_modes",
    "bv_residual",
    "characteristic_function",
    "coefficients_at",
    "eigenvalues",
    "evaluate_solution",
    "find_kappas",
    "get_case",
    "gram_matrix",
    "kernel_dimension",
    "leapfrog_evolve",
    "lowest_eigenvalues",
    "mirror",
    "modal_energy",
    "parse_case",
    "preset",
    "project",
    "unitary_phase_check",
]

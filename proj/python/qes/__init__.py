"""Spectra of the singular oscillator with Coulomb and linear terms."""

from ._core import (
    QesError,
    RitzSolver,
    closed_form_solution,
    curves,
    fd_spectrum,
    frequency_scan,
    scenario1_energy,
    scenario2_energy,
    truncation_energy,
    truncation_polynomial,
    truncation_roots,
)

__all__ = [
    "QesError",
    "RitzSolver",
    "closed_form_solution",
    "curves",
    "fd_spectrum",
    "frequency_scan",
    "scenario1_energy",
    "scenario2_energy",
    "truncation_energy",
    "truncation_polynomial",
    "truncation_roots",
]

"""Quantum-optical toolkit for a symmetric two-mirror cavity.

Submodules:
  fp_core      frequency-dependent transmission/reflection coefficients
  antibunching two-photon coincidence amplitudes, zero curves, sweeps
  wavepacket   spectral packets, filtered envelopes, time-resolved g2
  oracle       independent slow-path checks (bounce series, Fock algebra)
  cli          command-line front end
"""

from .fp_core import (
    CavityGeometry,
    DomainError,
    FpCoefficients,
    MirrorSpec,
    cavity_coefficients,
    finesse,
    fp_reflection,
    fp_transmission,
    mirror_coefficients,
    reflection_probability,
    transmission_probability,
)
from .antibunching import (
    HomResult,
    SpdcSolution,
    SweepGrid,
    coefficients_at_zero,
    epsilon_threshold,
    hom_amplitude_degenerate,
    hom_amplitude_two_color,
    solve_degenerate_zero,
    solve_spdc,
    spdc_residual,
    sweep_degenerate,
    sweep_two_color,
)

__version__ = "0.1.0"

__all__ = [
    "CavityGeometry",
    "DomainError",
    "FpCoefficients",
    "HomResult",
    "MirrorSpec",
    "SpdcSolution",
    "SweepGrid",
    "cavity_coefficients",
    "coefficients_at_zero",
    "epsilon_threshold",
    "finesse",
    "fp_reflection",
    "fp_transmission",
    "hom_amplitude_degenerate",
    "hom_amplitude_two_color",
    "mirror_coefficients",
    "reflection_probability",
    "solve_degenerate_zero",
    "solve_spdc",
    "spdc_residual",
    "sweep_degenerate",
    "sweep_two_color",
    "transmission_probability",
]

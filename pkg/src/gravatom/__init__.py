"""gravatom: hydrogen-like atoms under a weak gravitational-wave strain.

Semiclassical toolkit: hydrogenic basis + quadrature, spectral decomposition
of the strain-distorted wavefunction (numeric oracle, series, closed form),
strain-shifted energies and transition detuning with quantum defects, and
Rabi-cycle deviation curves.  All internal math is in Hartree atomic units;
unit conversions live at the edges (constants, config, CLI).
"""

from .constants import (
    BOHR_RADIUS_M,
    HARTREE_EV,
    HARTREE_HZ,
    HARTREE_J,
    HARTREE_RAD_S,
    SPEED_OF_LIGHT_M_S,
    hartree_to_ev,
    hartree_to_hz,
    hartree_to_joule,
    hartree_to_rad_per_s,
)
from .hydrogenics import (
    AtomicState,
    QuadratureConvergenceError,
    QuadratureSpec,
    RadialScheme,
    gauss_laguerre_scaled,
    gauss_legendre_nodes,
    laguerre,
    legendre,
    radial_nodes,
    radial_wavefunction,
    spherical_harmonic_m0,
)
from .distortion import (
    ClosedFormCoefficients,
    DecompositionMethod,
    LinearResponseCoefficient,
    SpectralDecomposition,
    Strain,
    closed_form_coefficients,
    closed_form_decomposition,
    distorted_norm_numeric,
    distorted_wavefunction,
    laguerre_shift_identity_check,
    numeric_decomposition,
    overlap_numeric,
    series_decomposition,
    strain_factor,
    theta_component,
)
from .transitions import (
    DefectTable,
    DetuningResult,
    ShiftedEnergy,
    TransitionSpec,
    level_energy,
    make_transition,
    shifted_energy,
    transition_detuning,
    wavelength_shift,
)
from .rabi import (
    DETUNING_RATIO_SERIES_THRESHOLD,
    DeviationSeries,
    RabiConfig,
    Regime,
    deviation_at_cycles,
    deviation_exact,
    deviation_exact_at_cycles,
    deviation_short_time,
    deviation_small_detuning,
    excited_probability,
    figure2_series,
)
from .config import (
    available_species,
    load_defect_table,
    parse_energy,
    parse_frequency,
    parse_state_token,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicState",
    "QuadratureSpec",
    "QuadratureConvergenceError",
    "RadialScheme",
    "Strain",
    "DecompositionMethod",
    "SpectralDecomposition",
    "LinearResponseCoefficient",
    "ClosedFormCoefficients",
    "DefectTable",
    "TransitionSpec",
    "DetuningResult",
    "ShiftedEnergy",
    "RabiConfig",
    "DeviationSeries",
    "Regime",
    "DETUNING_RATIO_SERIES_THRESHOLD",
    "laguerre",
    "legendre",
    "radial_wavefunction",
    "spherical_harmonic_m0",
    "gauss_laguerre_scaled",
    "gauss_legendre_nodes",
    "radial_nodes",
    "strain_factor",
    "distorted_wavefunction",
    "overlap_numeric",
    "distorted_norm_numeric",
    "numeric_decomposition",
    "series_decomposition",
    "closed_form_coefficients",
    "closed_form_decomposition",
    "theta_component",
    "laguerre_shift_identity_check",
    "level_energy",
    "shifted_energy",
    "make_transition",
    "transition_detuning",
    "wavelength_shift",
    "excited_probability",
    "deviation_exact",
    "deviation_exact_at_cycles",
    "deviation_small_detuning",
    "deviation_short_time",
    "deviation_at_cycles",
    "figure2_series",
    "available_species",
    "load_defect_table",
    "parse_state_token",
    "parse_frequency",
    "parse_energy",
    "hartree_to_ev",
    "hartree_to_hz",
    "hartree_to_joule",
    "hartree_to_rad_per_s",
    "HARTREE_EV",
    "HARTREE_J",
    "HARTREE_HZ",
    "HARTREE_RAD_S",
    "BOHR_RADIUS_M",
    "SPEED_OF_LIGHT_M_S",
    "__version__",
]

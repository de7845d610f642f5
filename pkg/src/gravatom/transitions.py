"""Energy levels, strain-shifted energies and transition detuning.

Energies use the Rydberg formula with configurable quantum defects,
E = -1/(2 (n - delta_l)^2) Hartree.  Defects are data, not theory: an empty
table is pure hydrogen.  All first-order responses are carried as slopes
(Hartree per unit strain) so that physical strains (~1e-20) stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import constants
from .distortion import Strain, closed_form_coefficients
from .hydrogenics import AtomicState

__all__ = [
    "DefectTable",
    "TransitionSpec",
    "DetuningResult",
    "ShiftedEnergy",
    "level_energy",
    "shifted_energy",
    "make_transition",
    "transition_detuning",
    "wavelength_shift",
]


@dataclass(frozen=True)
class DefectTable:
    """Quantum defects delta_l keyed by azimuthal quantum number."""

    species: str = "hydrogen"
    defects: dict[int, float] = field(default_factory=dict)

    def defect(self, l: int) -> float:
        return self.defects.get(l, 0.0)


HYDROGEN = DefectTable()


@dataclass(frozen=True)
class TransitionSpec:
    lower: AtomicState
    upper: AtomicState
    lower_energy: float  # Hartree
    upper_energy: float
    delta_e: float  # upper - lower, Hartree

    def __post_init__(self) -> None:
        if not self.upper_energy > self.lower_energy:
            raise ValueError("upper level must lie above the lower level")


@dataclass(frozen=True)
class DetuningResult:
    """Detuning slope d(delta)/d(s_p) and optional evaluation at a strain."""

    slope: float  # Hartree per unit strain
    at_strain: float | None = None
    per_level_shift_slopes: tuple[float, float] = (0.0, 0.0)  # (lower, upper)


@dataclass(frozen=True)
class ShiftedEnergy:
    """Full quadratic-coefficient energy shift plus its leading-order slope."""

    unshifted: float  # Hartree
    shifted: float  # full coefficient-weighted combination at the given strain
    slope: float  # leading-order d E' / d s_p, Hartree per unit strain
    kappa: float  # shifted - (unshifted + slope * s_p); the quadratic remainder


def level_energy(state: AtomicState, defects: DefectTable = HYDROGEN) -> float:
    """E = -1/(2 (n - delta_l)^2) Hartree."""
    d = defects.defect(state.l)
    n_eff = state.n - d
    if n_eff <= 0:
        raise ValueError(
            f"quantum defect {d} for l={state.l} is too large for n={state.n}"
        )
    return -0.5 / n_eff**2


def _leading_shift_slope(state: AtomicState, energy: float) -> float:
    # leading-order per-level slope; at l=0 the denominator is (-1)(3) = -3,
    # flipping the naive sign -- kept exactly as printed
    return -2.0 * energy * (state.n + state.l + 1) ** 3 / ((2 * state.l - 1) * (2 * state.l + 3))


def shifted_energy(
    state: AtomicState, strain: Strain, defects: DefectTable = HYDROGEN
) -> ShiftedEnergy:
    """Strain-shifted level energy.

    ``shifted`` is the full coefficient-squared combination
    E' = C0^2 E_{n,l} + C+2^2 E_{n,l+2} + C-2^2 E_{n,l-2}, with out-of-range
    levels contributing nothing (their coefficients are exactly zero).
    ``slope`` is the leading-order linear response; ``kappa`` is the entire
    remainder and is reported, never silently dropped.
    """
    e0 = level_energy(state, defects)
    coeffs = closed_form_coefficients(state, strain)
    sp = strain.s_p
    total = coeffs.c0.at(sp) ** 2 * e0
    if state.l + 2 <= state.n - 1:
        total += coeffs.c_plus2.at(sp) ** 2 * level_energy(
            AtomicState(state.n, state.l + 2), defects
        )
    if state.l >= 2:
        total += coeffs.c_minus2.at(sp) ** 2 * level_energy(
            AtomicState(state.n, state.l - 2), defects
        )
    slope = _leading_shift_slope(state, e0)
    return ShiftedEnergy(
        unshifted=e0, shifted=total, slope=slope, kappa=total - (e0 + slope * sp)
    )


def make_transition(
    lower: AtomicState, upper: AtomicState, defects: DefectTable = HYDROGEN
) -> TransitionSpec:
    e1 = level_energy(lower, defects)
    e2 = level_energy(upper, defects)
    return TransitionSpec(lower=lower, upper=upper, lower_energy=e1, upper_energy=e2, delta_e=e2 - e1)


def transition_detuning(t: TransitionSpec, strain: Strain) -> DetuningResult:
    """Detuning delta of the transition energy, linear in the strain.

    slope = -2 [ E2 (n2+l2+1)^3 / ((2l2-1)(2l2+3))
               - E1 (n1+l1+1)^3 / ((2l1-1)(2l1+3)) ]
    """
    s_lower = _leading_shift_slope(t.lower, t.lower_energy)
    s_upper = _leading_shift_slope(t.upper, t.upper_energy)
    slope = s_upper - s_lower
    return DetuningResult(
        slope=slope,
        at_strain=slope * strain.s_p,
        per_level_shift_slopes=(s_lower, s_upper),
    )


def wavelength_shift(
    transition_frequency: float, detuning: DetuningResult, strain: Strain
) -> float:
    """Wavelength change in meters for a transition at `transition_frequency` Hz.

    delta_lambda = (c / nu^2) * (delta / h), pure unit plumbing around the
    detuning (delta in Hartree).
    """
    if transition_frequency <= 0:
        raise ValueError("transition frequency must be positive")
    delta = detuning.slope * strain.s_p
    delta_nu = constants.hartree_to_hz(delta)
    return constants.SPEED_OF_LIGHT_M_S / transition_frequency**2 * delta_nu

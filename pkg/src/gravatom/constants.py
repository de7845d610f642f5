"""Physical constants and unit conversions.

The math core works in atomic units (a0 = hbar = m_e = e = 1, energies in
Hartree).  Everything SI lives here and is only used at the CLI boundary and
in the report generators.  Values are CODATA 2018.
"""

from __future__ import annotations

# CODATA 2018
HARTREE_J = 4.3597447222071e-18
HARTREE_EV = 27.211386245988
PLANCK_J_S = 6.62607015e-34
HBAR_J_S = 1.054571817e-34
SPEED_OF_LIGHT_M_S = 299792458.0
BOHR_RADIUS_M = 5.29177210903e-11

HARTREE_HZ = HARTREE_J / PLANCK_J_S
HARTREE_RAD_S = HARTREE_J / HBAR_J_S


def hartree_to_ev(e: float) -> float:
    return e * HARTREE_EV


def hartree_to_joule(e: float) -> float:
    return e * HARTREE_J


def hartree_to_hz(e: float) -> float:
    """Energy in Hartree -> cyclic frequency in Hz (E = h nu)."""
    return e * HARTREE_HZ


def hartree_to_rad_per_s(e: float) -> float:
    """Energy in Hartree -> angular frequency in rad/s (E = hbar omega)."""
    return e * HARTREE_RAD_S

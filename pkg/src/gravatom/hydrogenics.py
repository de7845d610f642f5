"""Hydrogenic basis functions and quadrature engines.

Everything is in atomic units (a0 = 1).  Radial functions follow the modern
generalized-Laguerre convention (L_0^a = 1, L_1^a = 1 + a - x) with the
normalization fixed by int R_{n,l}^2 r^2 dr = 1.

All quadrature reductions go through math.fsum, so results are bit-identical
regardless of how callers parallelize.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "AtomicState",
    "QuadratureSpec",
    "RadialScheme",
    "QuadratureConvergenceError",
    "laguerre",
    "legendre",
    "radial_wavefunction",
    "radial_norm_constant",
    "spherical_harmonic_m0",
    "gauss_nodes",
    "gauss_legendre_nodes",
    "gauss_laguerre_scaled",
    "radial_nodes",
    "integrate_halfline_adaptive",
    "fsum_dot",
]


class QuadratureConvergenceError(RuntimeError):
    """A quadrature did not reach its target tolerance within budget."""


@dataclass(frozen=True)
class AtomicState:
    """Hydrogenic eigenstate labelled by quantum numbers (n, l, m)."""

    n: int
    l: int
    m: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"principal quantum number must be >= 1, got n={self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise ValueError(f"require 0 <= l <= n-1, got n={self.n}, l={self.l}")
        if abs(self.m) > self.l:
            raise ValueError(f"require |m| <= l, got l={self.l}, m={self.m}")

    def __str__(self) -> str:
        return f"({self.n},{self.l},{self.m})"


class RadialScheme(enum.Enum):
    GAUSS_LAGUERRE_TRANSFORMED = "gauss_laguerre_transformed"
    ADAPTIVE_PANEL = "adaptive_panel"


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and tolerance for the radial/angular quadratures."""

    radial_node_count: int = 200
    angular_node_count: int = 200
    radial_scheme: RadialScheme = RadialScheme.GAUSS_LAGUERRE_TRANSFORMED
    target_abs_tolerance: float = 1e-10

    def __post_init__(self) -> None:
        if self.radial_node_count < 2 or self.angular_node_count < 2:
            raise ValueError("node counts must be >= 2")
        if self.target_abs_tolerance <= 0:
            raise ValueError("target_abs_tolerance must be > 0")


def fsum_dot(weights: np.ndarray, values: np.ndarray) -> float:
    """Compensated (exactly rounded) dot product; deterministic reduction."""
    return math.fsum((weights * values).tolist())


def laguerre(order: int, alpha: int, x):
    """Generalized Laguerre polynomial L_order^alpha(x), three-term recurrence.

    Accepts scalar or ndarray x; returns the matching type.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if order == 0:
        return float(prev) if scalar else prev
    cur = 1.0 + alpha - x
    for k in range(1, order):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return float(cur) if scalar else cur


def legendre(l: int, x):
    """Legendre polynomial P_l(x) by the stable three-term recurrence."""
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if l == 0:
        return float(prev) if scalar else prev
    cur = x.copy()
    for k in range(1, l):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
    return float(cur) if scalar else cur


def radial_norm_constant(n: int, l: int) -> float:
    """Prefactor making int R_{n,l}^2 r^2 dr = 1."""
    return math.sqrt(
        (2.0 / n) ** 3 * math.factorial(n - l - 1) / (2 * n * math.factorial(n + l))
    )


def radial_wavefunction(state: AtomicState, r):
    """R_{n,l}(r) in atomic units; r >= 0 in Bohr radii, result in a0^(-3/2)."""
    n, l = state.n, state.l
    x = np.asarray(r, dtype=float) * (2.0 / n)
    body = np.exp(-x / 2.0) * x**l * laguerre(n - l - 1, 2 * l + 1, x)
    out = radial_norm_constant(n, l) * body
    return float(out) if np.isscalar(r) else out


def spherical_harmonic_m0(l: int, theta):
    """Y_l^0(theta) = sqrt((2l+1)/4pi) P_l(cos theta); real convention."""
    ct = np.cos(theta)
    out = math.sqrt((2 * l + 1) / (4 * math.pi)) * legendre(l, ct)
    return float(out) if np.isscalar(theta) else out


@lru_cache(maxsize=32)
def _gauss_laguerre_scaled_cached(m: int) -> tuple[np.ndarray, np.ndarray]:
    # Golub-Welsch nodes for weight e^{-x}; Jacobi matrix a_k = 2k+1, b_k = k.
    k = np.arange(m)
    x = eigh_tridiagonal(2.0 * k + 1.0, np.arange(1, m, dtype=float), eigvals_only=True)
    # Scaled Christoffel weights w_i * e^{x_i} = 1 / sum_k (L_k(x_i) e^{-x_i/2})^2.
    # The standard Laguerre polynomials are orthonormal for weight e^{-x}; the
    # e^{-x/2} scaling keeps the recurrence in range, with an extra log-space
    # renormalization so node counts of several hundred stay finite.
    logs = -x / 2.0
    q_prev = np.ones_like(x)
    q_cur = 1.0 - x
    tot = q_prev**2 + q_cur**2
    for kk in range(1, m - 1):
        q_next = ((2 * kk + 1 - x) * q_cur - kk * q_prev) / (kk + 1)
        tot = tot + q_next**2
        q_prev, q_cur = q_cur, q_next
        big = tot > 1e200
        if big.any():
            q_prev = np.where(big, q_prev * 1e-100, q_prev)
            q_cur = np.where(big, q_cur * 1e-100, q_cur)
            tot = np.where(big, tot * 1e-200, tot)
            logs = np.where(big, logs + 100.0 * math.log(10.0), logs)
    w = np.exp(-2.0 * logs - np.log(tot))
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_laguerre_scaled(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes x_i and scaled weights W_i with int_0^inf f(x) dx ~ sum W_i f(x_i).

    Exact for f = (polynomial of degree <= 2m-1) * e^{-x}; the weights already
    absorb e^{+x_i}, so the integrand is passed as-is (including its decay).
    """
    if m < 2:
        raise ValueError(f"unsupported node count {m}")
    return _gauss_laguerre_scaled_cached(m)


@lru_cache(maxsize=64)
def _leggauss_cached(m: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(m)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre_nodes(m: int, a: float = -1.0, b: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights mapped to [a, b]."""
    if m < 2:
        raise ValueError(f"unsupported node count {m}")
    x, w = _leggauss_cached(m)
    if a == -1.0 and b == 1.0:
        return x, w
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def radial_nodes(m: int, scale: float) -> tuple[np.ndarray, np.ndarray]:
    """Half-line nodes for integrands decaying like e^{-r/scale}.

    Substitution u = r/scale maps onto the e^{-u}-weighted scheme; returns
    (r_i, W_i) with int_0^inf g(r) dr ~ sum W_i g(r_i).
    """
    x, w = gauss_laguerre_scaled(m)
    return scale * x, scale * w


def gauss_nodes(spec: QuadratureSpec, interval) -> list[tuple[float, float]]:
    """Nodes/weights for a finite interval (a, b) or the half line.

    `interval` is either a (a, b) pair or the string "halfline"; the half-line
    scheme uses the substitution u = 2r/(n a0) via `scale` = n/2, here exposed
    with unit scale.
    """
    if interval == "halfline":
        if spec.radial_scheme is RadialScheme.ADAPTIVE_PANEL:
            raise ValueError("adaptive_panel has no fixed node set; use integrate_halfline_adaptive")
        r, w = radial_nodes(spec.radial_node_count, 1.0)
        return list(zip(r.tolist(), w.tolist()))
    a, b = interval
    x, w = gauss_legendre_nodes(spec.radial_node_count, a, b)
    return list(zip(x.tolist(), w.tolist()))


def integrate_halfline_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    decay_scale: float,
    tol: float,
    max_panels: int = 2000,
) -> float:
    """Adaptive-panel Gauss quadrature of f on [0, inf).

    Panels are bisected until the 10- vs 21-point Gauss estimates agree within
    the panel's share of `tol`.  The integrand must decay at least like
    e^{-r/decay_scale}; the domain is truncated where that envelope reaches
    1e-40 relative to the origin.
    """
    r_max = decay_scale * 100.0  # e^{-100} ~ 4e-44 tail cutoff
    stack = [(0.0, r_max)]
    total: list[float] = []
    panels = 0
    while stack:
        a, b = stack.pop()
        panels += 1
        if panels > max_panels:
            raise QuadratureConvergenceError(
                f"adaptive quadrature exceeded panel budget ({max_panels}) before reaching tol={tol}"
            )
        x10, w10 = gauss_legendre_nodes(10, a, b)
        x21, w21 = gauss_legendre_nodes(21, a, b)
        coarse = fsum_dot(w10, f(x10))
        fine = fsum_dot(w21, f(x21))
        if abs(fine - coarse) <= tol * max((b - a) / r_max, 1e-3):
            total.append(fine)
        else:
            mid = 0.5 * (a + b)
            stack.append((a, mid))
            stack.append((mid, b))
    return math.fsum(total)

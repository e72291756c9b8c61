"""Bessel-family special functions and the static cylinder kernel.

Thin wrappers around scipy.special keep a single import point and fix the
branch/normalization conventions used by the scattering kernels.  The
cylinder kernel is the transverse part of the field of an infinite line
source with longitudinal wavenumber b and frequency ω:

    evanescent  (b² > ω²):  −K₀(ρ√(b²−ω²)) / 2π
    propagating (b² < ω²):   H₀⁽¹⁾(ρ√(ω²−b²)) / 4i

The two branches join through K₀(−ix) = (iπ/2)·H₀⁽¹⁾(x); exactly on the
light cone b² = ω² the kernel diverges logarithmically, which is reported
as :class:`SingularKernelError` rather than a large finite number.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

EULER_GAMMA = 0.5772156649015329


def bessel_j0(x):
    """J₀(x) (vectorized)."""
    return _sp.j0(x)


def bessel_k0(x):
    """K₀(x) for x > 0 (vectorized)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("bessel_k0 requires x > 0")
    return _sp.k0(x)


def bessel_k1(x):
    """K₁(x) for x > 0 (vectorized)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("bessel_k1 requires x > 0")
    return _sp.k1(x)


def hankel1_0(x):
    """H₀⁽¹⁾(x) = J₀(x) + iY₀(x) for x > 0 (vectorized, complex)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("hankel1_0 requires x > 0")
    return _sp.hankel1(0, x)


def k0_asymptotic(x, terms: int = 3):
    """Large-argument asymptotic √(π/2x)·e^{−x}·(1 − 1/8x + 9/128x² − …)."""
    x = np.asarray(x, dtype=float)
    series = np.ones_like(x)
    if terms >= 2:
        series = series - 1.0 / (8.0 * x)
    if terms >= 3:
        series = series + 9.0 / (128.0 * x**2)
    return np.sqrt(np.pi / (2.0 * x)) * np.exp(-x) * series


def k0_small(x):
    """Small-argument limit ln(2 e^{−γ}/x)."""
    return np.log(2.0 * np.exp(-EULER_GAMMA) / np.asarray(x, dtype=float))


def hankel1_0_asymptotic(x):
    """Large-argument asymptotic √(2/πx)·e^{i(x−π/4)}."""
    x = np.asarray(x, dtype=float)
    return np.sqrt(2.0 / (np.pi * x)) * np.exp(1j * (x - np.pi / 4.0))


class SingularKernelError(ValueError):
    """Raised when the cylinder kernel is evaluated on the light cone b² ≈ ω²."""

    def __init__(self, b: float, omega: float):
        self.b = b
        self.omega = omega
        super().__init__(
            f"cylinder kernel singular at b²≈ω² (b={b!r}, ω={omega!r}); "
            "the kernel diverges logarithmically on the light cone"
        )


def cylinder_kernel(rho: float, b: float, omega: float, singular_threshold: float = 1e-12) -> complex:
    """Static cylinder kernel at transverse radius ρ > 0.

    Parameters
    ----------
    rho : float
        Transverse distance from the line source, ρ = √(y²+z²) > 0.
    b : float
        Longitudinal wavenumber.  The kernel is even in b.
    omega : float
        Frequency.
    singular_threshold : float
        Relative width of the guard band around the light cone; inside it
        a :class:`SingularKernelError` is raised.

    Returns
    -------
    complex
        −K₀(ρ√(b²−ω²))/2π for b² > ω², H₀⁽¹⁾(ρ√(ω²−b²))/4i otherwise.
    """
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    disc = b * b - omega * omega
    scale = max(b * b, omega * omega)
    if abs(disc) < singular_threshold * scale or scale == 0.0:
        raise SingularKernelError(b, omega)
    if disc > 0:
        return complex(-_sp.k0(rho * np.sqrt(disc)) / (2.0 * np.pi))
    return complex(_sp.hankel1(0, rho * np.sqrt(-disc)) / 4j)

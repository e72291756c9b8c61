"""Localized profile families with closed-form Fourier transforms.

Conventions
-----------
1D analysis:  f[κ] = ∫ dx/(2π) · e^{iκx} f(x)
3D analysis:  χ[q] = ∫ d³r/(2π)³ · e^{−iq·r} χ(r)

Note the sign flip between the two: the 3D transform of a separable profile
is the product of 1D transforms evaluated at −q_i.  Both appear throughout
the scattering kernels, so the convention is fixed here once.

Two families are supported:

``gaussian``
    a · exp(−(x−c)²/(2ℓ²)), transform (aℓ/√(2π)) e^{−κ²ℓ²/2} e^{iκc}.

``smoothed_tophat``
    Raised-cosine (Tukey) window with taper fraction 1/2: flat for
    |x−c| ≤ ℓ/2, cosine taper down to zero at |x−c| = 3ℓ/2.  Transform
    (a/2π) e^{iκc} · 2ℓ · sinc(κℓ) · cos(κℓ/2)/(1−(κℓ/π)²) with removable
    singularities at κℓ = 0 and κℓ = ±π.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_FAMILIES = ("gaussian", "smoothed_tophat")


@dataclass(frozen=True)
class Profile1D:
    """One-dimensional localized profile.

    Parameters
    ----------
    kind : {"gaussian", "smoothed_tophat"}
    amplitude : float
        Peak height a.
    center : float
        Center c.
    width : float
        Width scale ℓ (> 0).  For the smoothed tophat the flat core has
        half-width ℓ/2 and the support half-width is 3ℓ/2.
    """

    kind: str
    amplitude: float = 1.0
    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if self.kind not in _FAMILIES:
            raise ValueError(f"unknown profile kind {self.kind!r}; expected one of {_FAMILIES}")
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width}")

    def value(self, x):
        """Evaluate the profile at x (vectorized)."""
        x = np.asarray(x, dtype=float)
        u = x - self.center
        if self.kind == "gaussian":
            return self.amplitude * np.exp(-0.5 * (u / self.width) ** 2)
        # smoothed tophat: flat core, raised-cosine taper
        au = np.abs(u)
        half, edge = 0.5 * self.width, 1.5 * self.width
        taper = 0.5 * (1.0 + np.cos(np.pi * (au - half) / self.width))
        out = np.where(au <= half, 1.0, np.where(au < edge, taper, 0.0))
        return self.amplitude * out

    def integral(self) -> float:
        """∫ f(x) dx in closed form."""
        if self.kind == "gaussian":
            return self.amplitude * np.sqrt(2.0 * np.pi) * self.width
        return 2.0 * self.amplitude * self.width

    def extent(self) -> float:
        """Half-width beyond which the profile is negligible (≲ 1e−16 of peak)."""
        if self.kind == "gaussian":
            return abs(self.center) + 8.5 * self.width
        return abs(self.center) + 1.5 * self.width

    def transform(self, kappa):
        """Closed-form transform f[κ] = ∫ dx/(2π) e^{iκx} f(x) (vectorized, complex)."""
        kappa = np.asarray(kappa, dtype=float)
        phase = np.exp(1j * kappa * self.center)
        if self.kind == "gaussian":
            mag = self.amplitude * self.width / np.sqrt(2.0 * np.pi)
            return mag * np.exp(-0.5 * (kappa * self.width) ** 2) * phase
        u = kappa * self.width
        return (self.amplitude * self.width / np.pi) * _tukey_shape(u) * phase

    def transform_bound(self, kappa):
        """Monotone-decreasing upper bound on |f[κ]| for large |κ| (cutoff solves)."""
        kappa = np.abs(np.asarray(kappa, dtype=float))
        if self.kind == "gaussian":
            mag = abs(self.amplitude) * self.width / np.sqrt(2.0 * np.pi)
            return mag * np.exp(-0.5 * (kappa * self.width) ** 2)
        # |sinc·cos/(1−(u/π)²)| ≤ min(1, 4π²/|u|³) once |u| ≥ √2·π
        u = kappa * self.width
        cap = abs(self.amplitude) * self.width / np.pi
        with np.errstate(divide="ignore"):
            tail = np.where(u > np.sqrt(2.0) * np.pi, 4.0 * np.pi**2 / np.maximum(u, 1e-300) ** 3, 1.0)
        return cap * np.minimum(1.0, tail)


def _tukey_shape(u):
    """sin(u)·cos(u/2)/(u·(1−(u/π)²)), even, stable at u=0 and u=±π.

    Near |u|=π both numerator and denominator vanish; there the exact
    rewriting with δ=|u|−π,

        −(sin δ/δ)·sin(δ/2)·π²/((π+δ)(2π+δ)),

    is used instead (no series truncation).
    """
    u = np.abs(np.asarray(u, dtype=float))
    delta = u - np.pi
    near = np.abs(delta) < 1e-3
    safe = np.where(near, 1.0, u)  # placeholder to silence 0/0 in the generic branch
    generic = np.sinc(safe / np.pi) * np.cos(safe / 2.0) / (1.0 - (safe / np.pi) ** 2)
    safe_delta = np.where(near, delta, 0.0)  # keep the unused branch finite at u=0
    special = (
        -np.sinc(safe_delta / np.pi)
        * np.sin(safe_delta / 2.0)
        * np.pi**2
        / ((np.pi + safe_delta) * (2.0 * np.pi + safe_delta))
    )
    return np.where(near, special, generic)


def fourier1d(profile: Profile1D, kappa):
    """Transform of a 1D profile, f[κ] = ∫ dx/(2π) e^{iκx} f(x)."""
    return profile.transform(kappa)


@dataclass(frozen=True)
class Profile3D:
    """Separable 3D profile χ(r) = Π_i f_i(r_i) built from three 1D factors."""

    factors: tuple[Profile1D, Profile1D, Profile1D]

    def __post_init__(self):
        if len(self.factors) != 3:
            raise ValueError("Profile3D needs exactly three 1D factors")

    def value(self, x, y, z):
        return self.factors[0].value(x) * self.factors[1].value(y) * self.factors[2].value(z)

    def transform(self, qx, qy, qz):
        """χ[q] = ∫ d³r/(2π)³ e^{−iq·r} χ(r) = Π_i f_i[−q_i]."""
        return (
            self.factors[0].transform(-np.asarray(qx, dtype=float))
            * self.factors[1].transform(-np.asarray(qy, dtype=float))
            * self.factors[2].transform(-np.asarray(qz, dtype=float))
        )

    def transform_bound(self, qx, qy, qz):
        """Product of per-axis decay bounds on |χ[q]|."""
        return (
            self.factors[0].transform_bound(qx)
            * self.factors[1].transform_bound(qy)
            * self.factors[2].transform_bound(qz)
        )

    def extent(self) -> float:
        """Radius of the ball outside which χ is negligible."""
        return float(np.linalg.norm([f.extent() for f in self.factors]))


def isotropic_gaussian(amplitude: float = 1.0, width: float = 1.0, center=(0.0, 0.0, 0.0)) -> Profile3D:
    """Convenience constructor for a Gaussian blob χ(r) = a·e^{−|r−c|²/(2ℓ²)}."""
    if amplitude <= 0:
        raise ValueError("amplitude must be positive")
    a = amplitude ** (1.0 / 3.0)  # product of the three 1D amplitudes equals `amplitude`
    return Profile3D(
        tuple(Profile1D("gaussian", amplitude=a, center=c, width=width) for c in center)  # type: ignore[arg-type]
    )

"""Scenario models: space-time-modulated dielectric and uniformly moving thin rod.

Modulated dielectric
    ε̄(r,t) = χ(r)·[1 + η(x − wt)] with modulation speed w (units of c, may
    exceed 1 — no energy or information is transported by the profile).
    Temporal transform:
        ε̄[ω,r] = χ(r)·( δ(ω) + (1/w)·η[−ω/w]·e^{iωx/w} ),
    where the static δ(ω) term is never represented numerically: detection
    pipelines require ω away from 0 (and away from the incident |k|), which
    this module enforces with a guard band.

Moving thin rod
    ε̄(r,t) concentrated on the x axis and translating at speed v ∈ (0,1):
        ε̄[ω,r] = (e^{iωx/v}/γv)·ε̄[κ]·δ(ρ),   ρ = √(y²+z²),
    with ε̄[κ] the rest-frame 1D transform and γ = (1−v²)^{−1/2}.  The δ(ρ)
    transverse factor is consumed analytically by the downstream cylinder
    kernels; this module only supplies the 1D spectral factor.

Spectral-argument signs: real profiles satisfy f[−κ] = f[κ]*, so every
modulus-squared observable is insensitive to the sign of the probed
argument.  Callers use the positive-argument forms throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .profiles import Profile1D, Profile3D, fourier1d


class StaticTermError(ValueError):
    """Evaluation requested inside the guard band of the symbolic δ(ω) static term."""


@dataclass(frozen=True)
class ModulatedDielectric:
    """Localized dielectric χ(r) carrying a traveling modulation η(x−wt)."""

    chi: Profile3D
    eta: Profile1D
    w: float

    def __post_init__(self):
        if not self.w > 0:
            raise ValueError(f"modulation speed w must be positive, got {self.w}")


def modulated_spectrum(d: ModulatedDielectric, omega: float, r, guard: float = 1e-9) -> complex:
    """Dynamic part of ε̄[ω,r] = χ(r)·(1/w)·η[−ω/w]·e^{iωx/w} for ω ≠ 0.

    The static χ(r)δ(ω) term is symbolic; |ω| ≤ guard·max(w,1) raises
    :class:`StaticTermError` instead of returning a meaningless finite value.
    """
    if abs(omega) <= guard * max(d.w, 1.0):
        raise StaticTermError(f"ω={omega!r} lies in the static-term guard band; the δ(ω) part is symbolic")
    r = np.asarray(r, dtype=float)
    chi_val = float(d.chi.value(r[0], r[1], r[2]))
    drive = complex(fourier1d(d.eta, -omega / d.w))
    return chi_val * drive * np.exp(1j * omega * r[0] / d.w) / d.w


@dataclass(frozen=True)
class MovingRod:
    """Thin rod on the x axis moving at speed v ∈ (0,1); γ derived.

    ``pointlike`` rods have a constant spectral amplitude ε̄[κ] ≡ 1/(2π)
    (unit point scatterer); otherwise ``profile`` is the rest-frame shape.
    """

    profile: Profile1D | None = None
    v: float = 0.5
    pointlike: bool = False
    gamma: float = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.v < 1.0:
            raise ValueError(f"rod speed must satisfy 0 < v < 1, got {self.v}")
        if not self.pointlike and self.profile is None:
            raise ValueError("a finite rod needs a rest-frame profile (or set pointlike=True)")
        object.__setattr__(self, "gamma", 1.0 / np.sqrt((1.0 - self.v) * (1.0 + self.v)))


def rod_rest_transform(m: MovingRod, kappa):
    """Rest-frame spectral amplitude ε̄[κ]: profile transform, or 1/(2π) if pointlike."""
    if m.pointlike:
        kappa = np.asarray(kappa, dtype=float)
        return np.full(kappa.shape, 1.0 / (2.0 * np.pi), dtype=complex) if kappa.ndim else complex(1.0 / (2.0 * np.pi))
    return m.profile.transform(kappa)


def rod_rest_transform_bound(m: MovingRod, kappa):
    """Decay bound on |ε̄[κ]| (constant for pointlike rods)."""
    if m.pointlike:
        kappa = np.asarray(kappa, dtype=float)
        return np.full(kappa.shape, 1.0 / (2.0 * np.pi)) if kappa.ndim else 1.0 / (2.0 * np.pi)
    return m.profile.transform_bound(kappa)


def rod_spectrum(m: MovingRod, kappa):
    """1D spectral factor (1/γv)·ε̄[κ] of the moving rod, κ as supplied by the caller.

    The e^{iωx/v} translation phase and the δ(ρ) transverse factor are handled
    by the downstream kernels, not here.
    """
    return rod_rest_transform(m, kappa) / (m.gamma * m.v)


def doppler_scattered_spectrum(m: MovingRod, omega: float, omega0: float):
    """Nonrelativistic Doppler spectral factor ε̂[(ω−ω₀)/v].

    ε̂ is the spatial transform ε̂[κ] = ∫dx/(2π)·e^{−iκx}ε̄(x) (synthesis
    without 1/2π), i.e. the 1D transform at the negated argument.  Intended
    for v ≪ 1 scans; no hard check is enforced.
    """
    return rod_rest_transform(m, -(np.asarray(omega, dtype=float) - omega0) / m.v)

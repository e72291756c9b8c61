"""Vacuum-state photodetection intensities.

With no incident photons, a time-dependent susceptibility still couples
positive and negative field frequencies, so an ideal photodetector at
frequency ω > 0 registers a nonzero signal.  Three operations cover the
two scenarios:

``vacuum_modulated``
    Far-field intensity of the modulated dielectric,

        I = (ω⁴ / 4w²r²) ∫d³q · q · |η[(ω+q)/w]|² · (1 + (n·q̂)²)
            · |χ[ωn − ((ω+q)/w)h_x + q]|²,

    which is the momentum integral of the drive spectrum against the
    transverse-projected shape transform (far-field Green normalization
    −1/4π folded in; see greens module notes).

``vacuum_rod_maintext``
    E-field intensity of the moving thin rod built from the static
    cylinder-kernel tensor ζ (analytic K₀/K₁ derivatives).

``vacuum_rod_covariant``
    A-field (vector-potential) intensity of the same rod from the
    covariant pipeline; a distinct observable with its own normalization —
    no cross-equality with the main-text form is asserted, but each obeys
    the same symmetries and limits.

Every op returns an IntensityResult whose value is the integral of a
pointwise-nonnegative integrand; the integrand builders are exposed so the
Monte Carlo oracle can integrate the identical function.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import special as _sp

from .dielectrics import ModulatedDielectric, MovingRod, rod_rest_transform, rod_rest_transform_bound
from .quadrature import IntegralEstimate, QuadratureSpec, integrate_q3, solve_decay_cutoff

FAR_FIELD_MIN_PHASE = 100.0  # required ω·|r|
FAR_FIELD_EXTENT_FACTOR = 50.0  # required |r| / source extent


class FarFieldError(ValueError):
    """Detector violates the far-field preconditions of the spherical-wave reduction."""


@dataclass(frozen=True)
class Detector:
    """Photodetector at frequency ω > 0, placed either at a Cartesian point r
    (far-field spherical geometry) or at cylindrical radius ρ from the x axis
    (rod geometry)."""

    omega: float
    r: tuple[float, float, float] | None = None
    rho: float | None = None

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"detection frequency must be positive, got {self.omega}")
        if (self.r is None) == (self.rho is None):
            raise ValueError("exactly one of Cartesian r or cylindrical rho must be given")
        if self.r is not None:
            object.__setattr__(self, "r", tuple(float(c) for c in self.r))
            if not np.linalg.norm(self.r) > 0:
                raise ValueError("detector position must be nonzero")
        if self.rho is not None and not self.rho > 0:
            raise ValueError(f"cylindrical radius must be positive, got {self.rho}")

    @classmethod
    def cartesian(cls, omega: float, r) -> "Detector":
        return cls(omega=omega, r=tuple(np.asarray(r, dtype=float)))

    @classmethod
    def cylindrical(cls, omega: float, rho: float) -> "Detector":
        return cls(omega=omega, rho=float(rho))

    @property
    def distance(self) -> float:
        if self.r is None:
            raise ValueError("cylindrical detector has no Cartesian distance")
        return float(np.linalg.norm(self.r))

    @property
    def n(self) -> np.ndarray:
        """Line-of-sight unit vector r/|r| (Cartesian detectors only)."""
        if self.r is None:
            raise ValueError("cylindrical detector has no line-of-sight vector")
        return np.asarray(self.r, dtype=float) / self.distance


@dataclass(frozen=True)
class IntensityResult:
    """Nonnegative intensity with quadrature bookkeeping and a parts breakdown."""

    value: float
    error_estimate: float
    evals: int
    parts: dict[str, float] = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    @classmethod
    def from_estimate(cls, est: IntegralEstimate, part: str = "vacuum") -> "IntensityResult":
        parts = {"vacuum": 0.0, "photon_plus": 0.0, "photon_minus": 0.0}
        parts[part] = float(np.real(est.value))
        return cls(float(np.real(est.value)), est.error_estimate, est.evals, parts, est.flags)


def _require_far_field(det: Detector, extent: float):
    rn = det.distance
    if det.omega * rn < FAR_FIELD_MIN_PHASE:
        raise FarFieldError(
            f"far field needs ω·r ≥ {FAR_FIELD_MIN_PHASE:g}; got {det.omega * rn:g}"
        )
    if rn < FAR_FIELD_EXTENT_FACTOR * extent:
        raise FarFieldError(
            f"far field needs r ≥ {FAR_FIELD_EXTENT_FACTOR:g}× source extent ({extent:g}); got {rn:g}"
        )


# ---------------------------------------------------------------------------
# modulated dielectric


def modulated_vacuum_integrand(d: ModulatedDielectric, det: Detector):
    """Pointwise-nonnegative integrand f(qx,qy,qz) whose ∫d³q is the vacuum intensity."""
    omega = det.omega
    rn = det.distance
    n = det.n
    w = d.w
    pref = omega**4 / (4.0 * w * w * rn * rn)

    def f(qx, qy, qz):
        q = np.sqrt(qx * qx + qy * qy + qz * qz)
        kappa = (omega + q) / w
        drive2 = np.abs(d.eta.transform(kappa)) ** 2
        with np.errstate(invalid="ignore", divide="ignore"):
            ndq = np.where(q > 0, (n[0] * qx + n[1] * qy + n[2] * qz) / np.where(q > 0, q, 1.0), 0.0)
        proj = 1.0 + ndq * ndq
        shape2 = (
            np.abs(
                d.chi.transform(omega * n[0] - kappa + qx, omega * n[1] + qy, omega * n[2] + qz)
            )
            ** 2
        )
        return pref * q * drive2 * proj * shape2

    return f


def modulated_cutoff(d: ModulatedDielectric, det: Detector, spec: QuadratureSpec):
    """Analytic cutoff + tail bound: decay comes from the drive factor and, for
    sub-luminal w, also from the shape transform's growing argument."""
    omega, w, n = det.omega, d.w, det.n
    rn = det.distance
    pref = omega**4 / (4.0 * w * w * rn * rn)
    chi_peak = float(d.chi.transform_bound(0.0, 0.0, 0.0))

    def density_bound(q):
        q = np.asarray(q, dtype=float)
        kappa = (omega + q) / w
        drive = d.eta.transform_bound(kappa)
        # worst-case shape argument along x: |ωn_x − κ + q·cosθ| ≥ κ − q − ω
        mx = np.maximum(kappa - q - omega, 0.0)
        shape = np.minimum(chi_peak, d.chi.factors[0].transform_bound(mx) * float(
            d.chi.factors[1].transform_bound(0.0) * d.chi.factors[2].transform_bound(0.0)
        ))
        return pref * 8.0 * np.pi * q**3 * (drive * shape) ** 2

    scale = max(w, omega, 1.0)
    cut = solve_decay_cutoff(density_bound, spec.abs_tol, 1e-3 * scale, 1e7 * scale)
    cut = max(cut, 8.0 * scale)
    tail = float(density_bound(np.array([cut]))[0]) * cut
    return cut, tail


def vacuum_modulated(d: ModulatedDielectric, det: Detector, spec: QuadratureSpec) -> IntensityResult:
    """Far-field vacuum intensity of the modulated dielectric."""
    if det.r is None:
        raise ValueError("vacuum_modulated needs a Cartesian far-field detector")
    _require_far_field(det, d.chi.extent())
    if d.eta.amplitude == 0.0:
        # no modulation, no signal: short-circuit the exact zero
        return IntensityResult(0.0, 0.0, 0, {"vacuum": 0.0, "photon_plus": 0.0, "photon_minus": 0.0})
    cut, tail = modulated_cutoff(d, det, spec)
    est = integrate_q3(modulated_vacuum_integrand(d, det), spec, radial_cutoff=cut, tail_bound=tail)
    return IntensityResult.from_estimate(est)


# ---------------------------------------------------------------------------
# moving rod, main-text (E-field) form


def _k0_bound(x):
    """Upper bound on K₀ for x > 0: asymptotic envelope with small-x log cap."""
    x = np.asarray(x, dtype=float)
    return np.where(x < 1.0, np.log(2.0 / np.minimum(x, 1.0)) + 1.0, 1.3 * np.exp(-x) / np.sqrt(np.maximum(x, 1.0)))


def _k1_bound(x):
    """Upper bound on K₁ for x > 0 (2/x cap below 1, asymptotic envelope above)."""
    x = np.asarray(x, dtype=float)
    lo = 2.0 / np.maximum(x, 1e-300)
    hi = 1.3 * np.exp(-x) * (1.0 + 1.0 / np.maximum(x, 1.0)) / np.sqrt(np.maximum(x, 1.0))
    return np.where(x < 1.0, lo, hi)


def rod_kernel_diag(omega: float, rho: float, b):
    """Diagonal components (ζ_xx, ζ_yy, ζ_zz) of the rod kernel tensor at the
    detector point (y,z)=(ρ,0).

    ζ_αβ = −(1/2π)(δ_αβ − ∂_α∂_β/ω²) K₀(ρ̃s)|_{ρ̃=ρ}, s = √(b²−ω²) > 0.
    The kernel has no x dependence, so ζ_xx keeps only the δ term; at the
    chosen point the y direction is radial (full second derivative f″) and z
    is tangential (curvature term f′/ρ).  Off-diagonals vanish there.
    """
    b = np.asarray(b, dtype=float)
    s2 = b * b - omega * omega
    s = np.sqrt(s2)
    x = rho * s
    k0 = _sp.k0(x)
    k1 = _sp.k1(x)
    fpp = s2 * (k0 + k1 / x)  # (d/dρ)² K₀(ρs)
    fp_over_rho = -s * k1 / rho  # (1/ρ)(d/dρ) K₀(ρs)
    c = -1.0 / (2.0 * np.pi)
    return c * k0, c * (k0 - fpp / omega**2), c * (k0 - fp_over_rho / omega**2)


def rod_maintext_integrand(m: MovingRod, det: Detector):
    """Integrand of the main-text rod intensity (prefactor ω⁴/(v²γ²(2π)⁴) included)."""
    omega, rho = det.omega, det.rho
    v, g = m.v, m.gamma
    pref = omega**4 / (v * v * g * g * (2.0 * np.pi) ** 4)

    def f(qx, qy, qz):
        q = np.sqrt(qx * qx + qy * qy + qz * qz)
        b = (omega + q) / v - qx
        # v < 1 guarantees b > ω > 0: the evanescent (real-K₀) branch everywhere
        zxx, zyy, zzz = rod_kernel_diag(omega, rho, b)
        spec2 = np.abs(rod_rest_transform(m, (omega + q) / (v * g))) ** 2
        with np.errstate(invalid="ignore", divide="ignore"):
            qsafe = np.where(q > 0, q, 1.0)
            hx2 = (qx / qsafe) ** 2
            hy2 = (qy / qsafe) ** 2
            hz2 = (qz / qsafe) ** 2
        return pref * q * spec2 * (zxx**2 * (1.0 - hx2) + zyy**2 * (1.0 - hy2) + zzz**2 * (1.0 - hz2))

    return f


def _solve_rod_cutoff(density_bound, m: MovingRod, det: Detector, spec: QuadratureSpec):
    """Scan an explicit radial density bound for the cutoff + tail estimate."""
    scale = max(det.omega, det.omega / m.v, 1.0 / (det.rho * max(1.0 / m.v - 1.0, 1e-12)))
    cut = solve_decay_cutoff(density_bound, spec.abs_tol, 1e-3 * scale, 1e8 * scale)
    cut = max(cut, 8.0 * scale)
    tail = float(np.asarray(density_bound(np.array([cut])))[0]) * cut
    return cut, tail


def rod_maintext_cutoff(m: MovingRod, det: Detector, spec: QuadratureSpec):
    """Radial cutoff + tail bound for the main-text rod integrand."""
    omega, rho, v, g = det.omega, det.rho, m.v, m.gamma
    pref = omega**4 / (v * v * g * g * (2.0 * np.pi) ** 4)

    def density_bound(q):
        # |ζ|·2π ≤ B(x_min)·P(q) componentwise, B = max(K₀, K₁) envelope and
        # P collecting the s²/ω² and s/(ρω²) derivative growth at s_max
        q = np.asarray(q, dtype=float)
        bmin = (omega + q) / v - q
        bmax = (omega + q) / v + q
        smin = np.sqrt(np.maximum(bmin * bmin - omega * omega, 1e-300))
        smax = np.sqrt(bmax * bmax - omega * omega)
        xmin = rho * smin
        big = np.maximum(_k0_bound(xmin), _k1_bound(xmin))
        poly = 1.0 + (smax**2 / omega**2) * (1.0 + 1.0 / xmin) + smax / (rho * omega**2)
        spec_b = rod_rest_transform_bound(m, (omega + q) / (v * g))
        return 4.0 * np.pi * pref * q**3 * 3.0 * (spec_b * big * poly / (2.0 * np.pi)) ** 2

    return _solve_rod_cutoff(density_bound, m, det, spec)


def vacuum_rod_maintext(m: MovingRod, det: Detector, spec: QuadratureSpec) -> IntensityResult:
    """Main-text (E-field) vacuum intensity of the moving thin rod."""
    if det.rho is None:
        raise ValueError("vacuum_rod_maintext needs a cylindrical detector")
    cut, tail = rod_maintext_cutoff(m, det, spec)
    est = integrate_q3(rod_maintext_integrand(m, det), spec, radial_cutoff=cut, tail_bound=tail)
    return IntensityResult.from_estimate(est)


# ---------------------------------------------------------------------------
# moving rod, covariant (A-field) form


def rod_covariant_integrand_signed(m: MovingRod, det: Detector, v_signed: float):
    """Covariant integrand with an explicitly signed velocity (v → −v symmetry
    tests drive this directly; the public op uses the rod's own v > 0).

    Kinematic weight: (1−vm¹)²·[v²(m²)² + (1−vm¹)² − (m²)²], the exact
    polarization-summed contraction (nonnegative since
    (1−vm¹)² − (1−(m¹)²)(1−v²) = (m¹−v)² ≥ 0).
    """
    omega, rho = det.omega, det.rho
    v = v_signed
    av = abs(v)
    g = 1.0 / np.sqrt((1.0 - v) * (1.0 + v))
    pref = g**4 / (16.0 * np.pi**4) / (2.0 * np.pi * g * av) ** 2

    def f(qx, qy, qz):
        q = np.sqrt(qx * qx + qy * qy + qz * qz)
        with np.errstate(invalid="ignore", divide="ignore"):
            qsafe = np.where(q > 0, q, 1.0)
            m1 = qx / qsafe
            m2 = qy / qsafe
        b = (omega + q) / v - qx
        s2 = b * b - omega * omega  # positive for every |v| < 1
        kern2 = _sp.k0(rho * np.sqrt(np.maximum(s2, 1e-300))) ** 2
        spec2 = np.abs(rod_rest_transform(m, (omega + q) / (g * av))) ** 2
        one_minus = 1.0 - v * m1
        kin = one_minus**2 * (v * v * m2 * m2 + one_minus**2 - m2 * m2)
        return pref * q**3 * spec2 * kern2 * kin

    return f


def rod_covariant_integrand(m: MovingRod, det: Detector):
    """Integrand of the covariant (A-field) rod intensity, all prefactors included."""
    return rod_covariant_integrand_signed(m, det, m.v)


def vacuum_rod_covariant(m: MovingRod, det: Detector, spec: QuadratureSpec) -> IntensityResult:
    """Covariant (A-field) vacuum intensity of the moving thin rod.

    Even in v (the integrand maps onto itself under q → −q), independent of
    the axial detector coordinate, and vanishing as v → 0.
    """
    if det.rho is None:
        raise ValueError("vacuum_rod_covariant needs a cylindrical detector")
    cut, tail = rod_covariant_cutoff(m, det, spec)
    est = integrate_q3(rod_covariant_integrand(m, det), spec, radial_cutoff=cut, tail_bound=tail)
    return IntensityResult.from_estimate(est)


def rod_covariant_cutoff(m: MovingRod, det: Detector, spec: QuadratureSpec):
    """Radial cutoff + tail bound for the covariant rod integrand."""
    omega, rho, v, g = det.omega, det.rho, m.v, m.gamma
    pref = g**4 / (16.0 * np.pi**4) / (2.0 * np.pi * g * v) ** 2
    kin_max = (1.0 + v) ** 2 * ((1.0 + v) ** 2 + v**2)

    def density_bound(q):
        q = np.asarray(q, dtype=float)
        bmin = (omega + q) / v - q
        smin = np.sqrt(np.maximum(bmin * bmin - omega * omega, 1e-300))
        spec_b = rod_rest_transform_bound(m, (omega + q) / (v * g))
        return 4.0 * np.pi * pref * kin_max * q**5 * (spec_b * _k0_bound(rho * smin)) ** 2

    return _solve_rod_cutoff(density_bound, m, det, spec)

"""One-photon and coherent-state photodetection intensities.

An incident narrow-band photon (central wavevector k, polarization
coefficients c) scatters off a modulated dielectric or a moving rod.  For an
ideal detector at frequency ω ≠ |k| the intensity splits additively into the
vacuum contribution plus per-channel photon parts, one for each sideband
s = ±1:

    I[ω] = I_vac[ω] + Σ_{s=±} ‖amplitude_s‖².

Channel amplitudes are built from the first-order scattering tensor

    V_αβ(q) = ∫ dr′ G_αβ(ω; r−r′) · ε̄[ω−s|q|, r′] · e^{isq·r′},

either by explicit spatial quadrature (``scattering_amplitude_V``,
``brute_force_xi``) or in closed form after the far-field and narrow-band
reductions (``photon_modulated``, ``photon_rod``).  Coherent states add an
interference term between the two sidebands (``coherent_intensity``), and a
polarization choice c·χ²(q₀) = 0 removes the incident-only detector response
entirely (``polarization_filter``).

Normalization notes
-------------------
* Closed-form photon parts use the bare far-field kernel (no −1/4π), giving
  the modulated-channel prefactor (2π)⁶σ/(w²r²) with
  σ = (p·p* − |p·n|²)·envelope_norm; ``brute_force_xi`` uses the same bare
  normalization so its ξ integrals converge to the closed form as the
  envelope narrows.
* ``scattering_amplitude_V`` returns the physically normalized tensor (its
  exact route integrates the full Helmholtz Green tensor, −1/4π included);
  it is a diagnostic, not a term in the intensity assembly.
* The rod photon part is fixed through the sideband amplitudes Θ^(±)
  (``theta_amplitudes``), whose modulus squared integrates by construction
  to the covariant vacuum intensity.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dielectrics import ModulatedDielectric, MovingRod, rod_spectrum
from .profiles import fourier1d
from .quadrature import QuadratureSpec, integrate_box3
from .special import cylinder_kernel
from .vacuum import (
    Detector,
    IntensityResult,
    _require_far_field,
    vacuum_modulated,
    vacuum_rod_covariant,
)

DEFAULT_GUARD_BAND = 1e-6


class GuardBandError(ValueError):
    """Detection frequency collides with the incident frequency |k| (or the static term)."""


class DegenerateGeometryError(ValueError):
    """No polarization choice satisfies the filtering condition with nonzero coupling."""


# ---------------------------------------------------------------------------
# polarization geometry


@dataclass(frozen=True)
class PolarizationBasis:
    """Orthonormal transverse pair (e₁, e₂) with e₂ = q̂ × e₁."""

    e1: np.ndarray
    e2: np.ndarray


def polarization_basis(q) -> PolarizationBasis:
    """Deterministic transverse basis at q ≠ 0.

    Gram–Schmidt from the coordinate axis least aligned with q̂ (ties broken
    by lowest axis index), so repeated calls — and the q → −q node pairs of
    the angular grids — always see the same basis.
    """
    q = np.asarray(q, dtype=float)
    qn = np.linalg.norm(q)
    if not qn > 0:
        raise ValueError("polarization basis needs q ≠ 0")
    m = q / qn
    axis = int(np.argmin(np.abs(m)))
    e1 = -m[axis] * m
    e1[axis] += 1.0
    e1 /= np.linalg.norm(e1)
    return PolarizationBasis(e1=e1, e2=np.cross(m, e1))


def chi_components(q):
    """(χ¹_α, χ²_α): x and y components of the two basis vectors at q.

    These are the fixed-axis projections e_α·ĥ_i contracted against the rod
    amplitudes; α = 1, 2 labels the basis vectors.
    """
    basis = polarization_basis(q)
    chi1 = np.array([basis.e1[0], basis.e2[0]])
    chi2 = np.array([basis.e1[1], basis.e2[1]])
    return chi1, chi2


# ---------------------------------------------------------------------------
# incident states


@dataclass(frozen=True)
class IncidentPhoton:
    """Narrow-band single photon: central wavevector k, polarization
    coefficients c in the transverse basis at k, and the scenario scalar
    envelope_norm = |∫√q C(q) d³q|² (≈ |k| for a unit-integral envelope)."""

    k: tuple[float, float, float]
    c: tuple[complex, complex]
    envelope_norm: float = 1.0
    envelope: object = None  # optional C(qx,qy,qz) callable for brute-force ops

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        if not np.linalg.norm(k) > 0:
            raise ValueError("incident wavevector must be nonzero")
        c = np.asarray(self.c, dtype=complex)
        if c.shape != (2,) or abs(np.vdot(c, c).real - 1.0) > 1e-9:
            raise ValueError("polarization coefficients must be a 2-vector with |c|² = 1")
        if not self.envelope_norm > 0:
            raise ValueError("envelope_norm must be positive")
        object.__setattr__(self, "k", tuple(float(x) for x in k))
        object.__setattr__(self, "c", tuple(complex(x) for x in c))

    @property
    def knorm(self) -> float:
        return float(np.linalg.norm(self.k))

    @property
    def p(self) -> np.ndarray:
        """Polarization 3-vector p = Σ_λ c_λ e_λ(k̂)."""
        basis = polarization_basis(self.k)
        return self.c[0] * basis.e1 + self.c[1] * basis.e2


@dataclass(frozen=True)
class CoherentState:
    """Narrow-band coherent state with complex amplitude A.

    The envelope is f_α(q) = c_α f(q) with ∫f = 1 (so Σ_α|∫f_α|² = |c|² = 1);
    envelope_norm defaults to the narrow-band value |∫√q f|² = |k|.
    """

    amplitude: complex
    k: tuple[float, float, float]
    c: tuple[complex, complex]
    envelope_norm: float | None = None

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        if not np.linalg.norm(k) > 0:
            raise ValueError("central wavevector must be nonzero")
        c = np.asarray(self.c, dtype=complex)
        if c.shape != (2,) or abs(np.vdot(c, c).real - 1.0) > 1e-9:
            raise ValueError("polarization coefficients must be a 2-vector with |c|² = 1")
        object.__setattr__(self, "k", tuple(float(x) for x in k))
        object.__setattr__(self, "c", tuple(complex(x) for x in c))
        if self.envelope_norm is None:
            object.__setattr__(self, "envelope_norm", float(np.linalg.norm(k)))
        elif not self.envelope_norm > 0:
            raise ValueError("envelope_norm must be positive")

    @property
    def knorm(self) -> float:
        return float(np.linalg.norm(self.k))

    @property
    def p(self) -> np.ndarray:
        basis = polarization_basis(self.k)
        return self.c[0] * basis.e1 + self.c[1] * basis.e2


def _check_guard(omega: float, k: float, guard: float):
    if abs(omega - k) <= guard * max(omega, k):
        raise GuardBandError(
            f"detection frequency ω={omega:g} inside the guard band around the incident |k|={k:g}"
        )


# ---------------------------------------------------------------------------
# scattering tensor by spatial quadrature


def _chi_box(d: ModulatedDielectric):
    ext = np.array([f.extent() for f in d.chi.factors])
    return -ext, ext


def scattering_amplitude_V(
    d: ModulatedDielectric,
    r,
    q,
    delta_omega: float,
    omega: float,
    spec: QuadratureSpec | None = None,
    *,
    route: str = "far",
    order: int = 32,
):
    """First-order scattering tensor V_αβ = ∫dr′ G_αβ(ω; r−r′) ε̄[Δω, r′] e^{iq·r′}
    by 3D spatial quadrature over the support of χ.

    ``route="far"`` uses the normalized far-field kernel (transverse to n by
    construction); ``route="exact"`` integrates the full Helmholtz Green
    tensor.  ε̄ is the dynamic part of the modulated dielectric; a dielectric
    with zero modulation amplitude gives V ≡ 0 for every Δω ≠ 0 (the static
    δ-term scatters only elastically).
    """
    if route not in ("far", "exact"):
        raise ValueError(f"route must be 'far' or 'exact', got {route!r}")
    if not omega > 0:
        raise ValueError("detection frequency must be positive")
    r = np.asarray(r, dtype=float)
    q = np.asarray(q, dtype=float)
    rn = np.linalg.norm(r)
    n = r / rn
    w = d.w
    drive = complex(fourier1d(d.eta, -delta_omega / w)) / w
    lo, hi = _chi_box(d)

    out = np.zeros((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            def component(X, Y, Z, i=i, j=j):
                eps = (
                    d.chi.value(X, Y, Z)
                    * drive
                    * np.exp(1j * delta_omega * X / w)
                )
                phase = np.exp(1j * (q[0] * X + q[1] * Y + q[2] * Z))
                if route == "far":
                    gij = (
                        -((float(i == j) - n[i] * n[j]) / (4.0 * np.pi * rn))
                        * np.exp(1j * omega * (rn - (n[0] * X + n[1] * Y + n[2] * Z)))
                    )
                else:
                    dx, dy, dz = r[0] - X, r[1] - Y, r[2] - Z
                    dist = np.sqrt(dx * dx + dy * dy + dz * dz)
                    xph = omega * dist
                    pref = np.exp(1j * xph) / (4.0 * np.pi * dist**3 * omega**2)
                    nn = (dx, dy, dz)[i] * (dx, dy, dz)[j] / dist**2
                    gij = pref * (
                        (1.0 - 1j * xph - xph**2) * float(i == j)
                        - (3.0 - 3j * xph - xph**2) * nn
                    )
                return gij * eps * phase

            out[i, j] = complex(integrate_box3(component, lo, hi, order=order).value)
    return out


# ---------------------------------------------------------------------------
# modulated dielectric: closed-form channels, one-photon and brute-force


def _modulated_channel_vectors(d: ModulatedDielectric, det: Detector, p: np.ndarray, k: float, kvec: np.ndarray):
    """Per-sideband closed-form amplitude 3-vectors Y_s (bare normalization,
    common e^{iωr} phase dropped); the photon part of channel s is
    envelope_norm · ‖Y_s‖²."""
    omega, rn, n = det.omega, det.distance, det.n
    w = d.w
    p_t = p - np.dot(n, p) * n
    out = {}
    for s in (+1, -1):
        shift = (omega - s * k) / w
        eta_fac = fourier1d(d.eta, shift)
        chi_fac = d.chi.transform(
            s * kvec[0] - omega * n[0] + shift,
            s * kvec[1] - omega * n[1],
            s * kvec[2] - omega * n[2],
        )
        out[s] = ((2.0 * np.pi) ** 3 / (rn * w)) * eta_fac * chi_fac * p_t
    return out[+1], out[-1]


def photon_modulated(
    d: ModulatedDielectric,
    det: Detector,
    photon: IncidentPhoton,
    spec: QuadratureSpec,
    *,
    guard: float = DEFAULT_GUARD_BAND,
) -> IntensityResult:
    """One-photon far-field intensity of the modulated dielectric:
    vacuum part plus the two closed-form sideband channels

        part_s = (2π)⁶ σ / (w²r²) · |η[(ω−sk)/w] · χ[sk − ωn + ĥ_x(ω−sk)/w]|²,

    σ = (p·p* − |p·n|²) · envelope_norm.
    """
    if det.r is None:
        raise ValueError("photon_modulated needs a Cartesian far-field detector")
    k = photon.knorm
    _check_guard(det.omega, k, guard)
    _require_far_field(det, d.chi.extent())
    vac = vacuum_modulated(d, det, spec)
    y_plus, y_minus = _modulated_channel_vectors(
        d, det, photon.p, k, np.asarray(photon.k, dtype=float)
    )
    part_plus = photon.envelope_norm * float(np.vdot(y_plus, y_plus).real)
    part_minus = photon.envelope_norm * float(np.vdot(y_minus, y_minus).real)
    parts = {"vacuum": vac.value, "photon_plus": part_plus, "photon_minus": part_minus}
    return IntensityResult(sum(parts.values()), vac.error_estimate, vac.evals, parts, vac.flags)


@dataclass(frozen=True)
class BruteForceXi:
    """Sideband amplitude 3-vectors from explicit momentum quadrature."""

    xi_plus: np.ndarray
    xi_minus: np.ndarray
    envelope_norm: float
    evals: int

    @property
    def parts(self) -> dict[str, float]:
        return {
            "photon_plus": float(np.vdot(self.xi_plus, self.xi_plus).real),
            "photon_minus": float(np.vdot(self.xi_minus, self.xi_minus).real),
        }


def gaussian_envelope(kvec, dq: float):
    """Normalized Gaussian momentum envelope C(q) centered at k: ∫|C|²d³q = 1."""
    kvec = np.asarray(kvec, dtype=float)
    amp = np.pi ** (-0.75) * dq ** (-1.5)

    def C(qx, qy, qz):
        d2 = (qx - kvec[0]) ** 2 + (qy - kvec[1]) ** 2 + (qz - kvec[2]) ** 2
        return amp * np.exp(-0.5 * d2 / dq**2)

    return C


def brute_force_xi(
    d: ModulatedDielectric,
    det: Detector,
    photon: IncidentPhoton,
    dq: float,
    *,
    order: int = 24,
    n_sigma: float = 6.0,
) -> BruteForceXi:
    """Sideband amplitudes ξ_α(s) = ∫d³q √q C(q) V^{far}_αβ(sq) p_β without the
    narrow-band reduction (bare far-field normalization, e^{iωr} dropped).

    C is the photon's sampled envelope if supplied, else a normalized Gaussian
    of width dq around k.  As dq → 0 the parts converge monotonically to the
    ``photon_modulated`` closed form evaluated with this routine's own
    envelope_norm = |∫√q C d³q|².
    """
    if det.r is None:
        raise ValueError("brute_force_xi needs a Cartesian far-field detector")
    kvec = np.asarray(photon.k, dtype=float)
    omega, rn, n = det.omega, det.distance, det.n
    w = d.w
    C = photon.envelope if photon.envelope is not None else gaussian_envelope(kvec, dq)
    p_t = photon.p - np.dot(n, photon.p) * n
    lo = kvec - n_sigma * dq
    hi = kvec + n_sigma * dq

    evals = 0

    def sqrtq_C(qx, qy, qz):
        qn = np.sqrt(qx * qx + qy * qy + qz * qz)
        return np.sqrt(qn) * C(qx, qy, qz)

    norm_est = integrate_box3(sqrtq_C, lo, hi, order=order)
    evals += norm_est.evals
    envelope_norm = float(abs(norm_est.value) ** 2)

    vectors = {}
    for s in (+1, -1):
        def scalar_kernel(qx, qy, qz, s=s):
            qn = np.sqrt(qx * qx + qy * qy + qz * qz)
            shift = (omega - s * qn) / w
            eta_fac = fourier1d(d.eta, shift)
            chi_fac = d.chi.transform(
                s * qx - omega * n[0] + shift,
                s * qy - omega * n[1],
                s * qz - omega * n[2],
            )
            return np.sqrt(qn) * C(qx, qy, qz) * eta_fac * chi_fac

        est = integrate_box3(scalar_kernel, lo, hi, order=order)
        evals += est.evals
        vectors[s] = ((2.0 * np.pi) ** 3 / (rn * w)) * complex(est.value) * p_t

    return BruteForceXi(vectors[+1], vectors[-1], envelope_norm, evals)


# ---------------------------------------------------------------------------
# moving rod: sideband amplitudes and one-photon intensity

THETA_PREFACTOR_DOC = """Θ^(s)_α(q) = −(iγ²/4π²) · ν_s · q^{3/2} · (1−vm¹)(vm²χ¹_α + (1−vm¹)χ²_α)"""


def theta_kinematic_factor(v: float, mhat) -> np.ndarray:
    """(1−vm¹)·(v m² χ¹_α + (1−vm¹) χ²_α) for a unit direction m (any v, v=0 allowed)."""
    mhat = np.asarray(mhat, dtype=float)
    chi1, chi2 = chi_components(mhat)
    one_minus = 1.0 - v * mhat[0]
    return one_minus * (v * mhat[1] * chi1 + one_minus * chi2)


def theta_amplitudes(
    m: MovingRod,
    q,
    omega: float,
    det: Detector,
    *,
    singular_threshold: float = 1e-12,
):
    """Sideband amplitudes (Θ⁺_α, Θ⁻_α) of the moving rod at momentum q.

    Within channel s the spectral factor and kernel share the argument set
    κ_s = (ω−s|q|)/(γv), b_s = (ω−s|q|)/v + s·q¹; the s=−1 kernel argument
    satisfies b₋ > ω for every v < 1 (always evanescent), while the s=+1
    kernel switches to the propagating H₀⁽¹⁾ branch when b₊² < ω².  The
    detector sits at cylindrical radius ρ and axial coordinate 0 (the phase
    e^{i y¹ b_s} is 1 there; intensities at other axial positions differ only
    in the coherent cross term).
    """
    if det.rho is None:
        raise ValueError("theta_amplitudes needs a cylindrical detector")
    q = np.asarray(q, dtype=float)
    qn = np.linalg.norm(q)
    if not qn > 0:
        raise ValueError("theta_amplitudes needs q ≠ 0")
    kin = theta_kinematic_factor(m.v, q / qn)
    pref = -1j * m.gamma**2 / (4.0 * np.pi**2) * qn**1.5
    out = {}
    for s in (+1, -1):
        b_s = (omega - s * qn) / m.v + s * q[0]
        kernel = cylinder_kernel(det.rho, b_s, omega, singular_threshold=singular_threshold)
        nu = rod_spectrum(m, (omega - s * qn) / (m.gamma * m.v)) * kernel
        out[s] = pref * nu * kin
    return out[+1], out[-1]


def photon_rod(
    m: MovingRod,
    det: Detector,
    photon: IncidentPhoton,
    spec: QuadratureSpec,
    *,
    guard: float = DEFAULT_GUARD_BAND,
) -> IntensityResult:
    """One-photon intensity at a cylindrical detector near the moving rod:
    covariant vacuum part plus the narrow-band sideband channels

        part_s = (envelope_norm/k) · |Σ_α c_α Θ^(s)_α(k)|².
    """
    if det.rho is None:
        raise ValueError("photon_rod needs a cylindrical detector")
    k = photon.knorm
    _check_guard(det.omega, k, guard)
    vac = vacuum_rod_covariant(m, det, spec)
    theta_plus, theta_minus = theta_amplitudes(m, photon.k, det.omega, det)
    c = np.asarray(photon.c, dtype=complex)
    scale = photon.envelope_norm / k
    part_plus = scale * float(abs(np.sum(c * theta_plus)) ** 2)
    part_minus = scale * float(abs(np.sum(c * theta_minus)) ** 2)
    parts = {"vacuum": vac.value, "photon_plus": part_plus, "photon_minus": part_minus}
    return IntensityResult(sum(parts.values()), vac.error_estimate, vac.evals, parts, vac.flags)


# ---------------------------------------------------------------------------
# coherent states


def coherent_intensity(
    scenario,
    det: Detector,
    cs: CoherentState,
    spec: QuadratureSpec,
    *,
    guard: float = DEFAULT_GUARD_BAND,
) -> IntensityResult:
    """Coherent-state intensity: vacuum + |A|²·(both sideband parts) minus the
    sideband interference 2Re[A²·amp₊·amp₋*].

    The interference term is bounded by the |A|² part (Cauchy–Schwarz), so the
    total never drops below the vacuum contribution.  A = 0 reduces exactly to
    the vacuum intensity.
    """
    k = cs.knorm
    _check_guard(det.omega, k, guard)
    a2 = abs(cs.amplitude) ** 2
    asq = cs.amplitude**2
    scale = cs.envelope_norm / k

    if isinstance(scenario, MovingRod):
        if det.rho is None:
            raise ValueError("rod scenarios need a cylindrical detector")
        vac = vacuum_rod_covariant(scenario, det, spec)
        theta_plus, theta_minus = theta_amplitudes(scenario, cs.k, det.omega, det)
        c = np.asarray(cs.c, dtype=complex)
        amp_plus = np.sqrt(scale) * np.sum(c * theta_plus)
        amp_minus = np.sqrt(scale) * np.sum(c * theta_minus)
        cross = -2.0 * float(np.real(asq * amp_plus * np.conj(amp_minus)))
        part_plus = a2 * float(abs(amp_plus) ** 2)
        part_minus = a2 * float(abs(amp_minus) ** 2)
    elif isinstance(scenario, ModulatedDielectric):
        if det.r is None:
            raise ValueError("modulated scenarios need a Cartesian far-field detector")
        vac = vacuum_modulated(scenario, det, spec)
        y_plus, y_minus = _modulated_channel_vectors(
            scenario, det, cs.p, k, np.asarray(cs.k, dtype=float)
        )
        amp_plus = np.sqrt(cs.envelope_norm) * y_plus
        amp_minus = np.sqrt(cs.envelope_norm) * y_minus
        cross = -2.0 * float(np.real(asq * np.sum(amp_plus * np.conj(amp_minus))))
        part_plus = a2 * float(np.vdot(amp_plus, amp_plus).real)
        part_minus = a2 * float(np.vdot(amp_minus, amp_minus).real)
    else:
        raise TypeError(f"unsupported scenario type {type(scenario).__name__}")

    parts = {
        "vacuum": vac.value,
        "photon_plus": part_plus,
        "photon_minus": part_minus,
        "cross": cross,
    }
    return IntensityResult(sum(parts.values()), vac.error_estimate, vac.evals, parts, vac.flags)


# ---------------------------------------------------------------------------
# polarization filtering


def polarization_filter(photon: IncidentPhoton, q0, *, tol: float = 1e-12) -> IncidentPhoton:
    """Adjust the photon's polarization so the incident-only detector response
    vanishes: c_α χ²_α(q₀) = 0 with |c| = 1.

    The unique (up to phase) solution is c ∝ (−χ²₂, χ²₁).  Raises
    :class:`DegenerateGeometryError` when the condition is void (q₀ ∥ ŷ makes
    χ² ≡ 0) or when the filtered photon would decouple from the sideband
    amplitudes (q₀ in the x–y or x–z plane kills the remaining v·m²·χ¹ route).
    """
    q0 = np.asarray(q0, dtype=float)
    qn = np.linalg.norm(q0)
    if not qn > 0:
        raise ValueError("polarization_filter needs q₀ ≠ 0")
    mhat = q0 / qn
    chi1, chi2 = chi_components(q0)
    norm = float(np.linalg.norm(chi2))
    if norm < tol:
        raise DegenerateGeometryError("q₀ parallel to ŷ: the filtering condition is empty")
    if abs(mhat[1]) < tol or abs(mhat[2]) < tol:
        raise DegenerateGeometryError(
            "filtered polarization would not couple to the sideband amplitudes at this q₀"
        )
    c = np.array([-chi2[1], chi2[0]]) / norm
    return replace(photon, c=(complex(c[0]), complex(c[1])))


def incident_correlator(photon: IncidentPhoton, omega: float, *, guard: float = DEFAULT_GUARD_BAND) -> float:
    """Incident-only (unscattered) detector response of the narrow-band photon.

    Zero away from ω = |k|; at the incident frequency it is
    (k³/16π⁴)·|c_α χ²_α(k̂)|², which the polarization_filter output nulls.
    """
    k = photon.knorm
    if abs(omega - k) > guard * max(omega, k):
        return 0.0
    _, chi2 = chi_components(photon.k)
    c = np.asarray(photon.c, dtype=complex)
    return float(k**3 / (16.0 * np.pi**4) * abs(np.sum(c * chi2)) ** 2)

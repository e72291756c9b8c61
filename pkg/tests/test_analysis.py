"""Tests for the derived diagnostics: resolution reports, scaling fits, Doppler scans."""

import numpy as np
import pytest

from bornscatter.analysis import (
    REGIME_EVANESCENT,
    REGIME_FAR_FIELD,
    REGIME_PROPAGATING,
    doppler_scan,
    fit_power_law,
    rayleigh_report,
)
from bornscatter.dielectrics import ModulatedDielectric, MovingRod
from bornscatter.profiles import Profile1D, isotropic_gaussian


def modulated(w):
    return ModulatedDielectric(
        chi=isotropic_gaussian(1.0, 1.0), eta=Profile1D("gaussian", amplitude=0.1), w=w
    )


# ---------------------------------------------------------------------------
# resolution reports
# ---------------------------------------------------------------------------


def test_modulated_report_enhancement():
    rep = rayleigh_report(modulated(0.1), omega=0.5, k=1.0)
    assert rep.probed_args == (5.0, 15.0)
    assert rep.classical_cutoff == 1.0
    assert rep.enhancement_factors == (5.0, 15.0)
    assert rep.regime_tags == (REGIME_FAR_FIELD, REGIME_FAR_FIELD)


def test_modulated_report_fast_modulation_probes_nothing():
    rep = rayleigh_report(modulated(1e9), omega=0.5, k=1.0)
    assert rep.probed_args == pytest.approx((5e-10, 1.5e-9))
    assert all(f < 1e-8 for f in rep.enhancement_factors)


def test_rod_report_regimes():
    m = MovingRod(pointlike=True, v=0.5)
    rep = rayleigh_report(m, omega=1.0, k=1.2)
    # b₊ = (ω−k)/v + k = 0.8 < ω: the up-converted channel propagates
    assert rep.regime_tags == (REGIME_PROPAGATING, REGIME_EVANESCENT)
    rep2 = rayleigh_report(m, omega=1.0, k=0.5)
    # b₊ = 1.5 > ω: everything is evanescent at this softer drive
    assert rep2.regime_tags == (REGIME_EVANESCENT, REGIME_EVANESCENT)
    # probed arguments carry the 1/γv rest-frame magnification
    g = m.gamma
    assert rep.probed_args == pytest.approx(
        (abs(1.0 - 1.2) / (g * 0.5), abs(1.0 + 1.2) / (g * 0.5))
    )


def test_rod_report_axial_component_controls_the_branch():
    m = MovingRod(pointlike=True, v=0.5)
    default = rayleigh_report(m, omega=1.0, k=1.2)
    tilted = rayleigh_report(m, omega=1.0, k=1.2, k1=5.0)
    assert default.regime_tags[0] == REGIME_PROPAGATING
    assert tilted.regime_tags[0] == REGIME_EVANESCENT


def test_report_validation():
    with pytest.raises(ValueError):
        rayleigh_report(modulated(1.0), omega=0.0, k=1.0)
    with pytest.raises(ValueError):
        rayleigh_report(modulated(1.0), omega=1.0, k=-2.0)
    with pytest.raises(TypeError):
        rayleigh_report(object(), omega=1.0, k=1.0)


# ---------------------------------------------------------------------------
# power-law fits
# ---------------------------------------------------------------------------


def test_fit_power_law_exact():
    rho = np.geomspace(1.0, 100.0, 12)
    fit = fit_power_law(zip(rho, 3.7 * rho ** -6.0))
    assert fit.exponent == pytest.approx(-6.0, abs=1e-10)
    assert fit.ci_halfwidth <= 1e-10
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.range == (1.0, 100.0)


def test_fit_power_law_with_gentle_ripple():
    rho = np.geomspace(2.0, 200.0, 24)
    intensity = rho ** -6.0 * (1.0 + 0.01 * np.sin(np.log(rho)))
    fit = fit_power_law(zip(rho, intensity))
    assert fit.exponent == pytest.approx(-6.0, abs=0.05)
    assert fit.ci_halfwidth > 0.0


def test_fit_power_law_scale_equivariance():
    rho = np.geomspace(1.0, 50.0, 10)
    intensity = 2.1 * rho ** -3.3
    base = fit_power_law(zip(rho, intensity))
    scaled = fit_power_law(zip(7.0 * rho, 0.01 * intensity))
    assert scaled.exponent == pytest.approx(base.exponent, abs=1e-12)


def test_fit_power_law_validation():
    rho = np.geomspace(1.0, 10.0, 7)
    with pytest.raises(ValueError):
        fit_power_law(zip(rho, rho))  # only 7 samples
    rho = np.geomspace(1.0, 10.0, 9)
    with pytest.raises(ValueError):
        fit_power_law(zip(rho, -np.ones_like(rho)))
    with pytest.raises(ValueError):
        fit_power_law(zip(-rho, np.ones_like(rho)))
    with pytest.raises(ValueError):
        fit_power_law([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0])  # not pairs


# ---------------------------------------------------------------------------
# Doppler scans
# ---------------------------------------------------------------------------


def test_doppler_scan_peak_and_width_scaling():
    profile = Profile1D("gaussian", amplitude=1.0, width=1.5)
    omega0 = 2.0
    u = np.linspace(-5.0, 5.0, 801)
    scans = {}
    for v in (0.01, 0.02):
        m = MovingRod(profile=profile, v=v)
        scans[v] = doppler_scan(m, omega0, omega0 + v * u)
    assert scans[0.01].peak_omega == omega0
    assert scans[0.02].peak_omega == omega0
    # identically-scaled grids sample identical line shapes: FWHM ∝ v exactly
    assert scans[0.02].fwhm / scans[0.01].fwhm == pytest.approx(2.0, abs=1e-6)
    # |ε̂|² = e^{−κ²ℓ²}, κ = (ω−ω₀)/v ⇒ FWHM = 2v√(ln2)/ℓ
    want = 2.0 * 0.01 * np.sqrt(np.log(2.0)) / 1.5
    assert scans[0.01].fwhm == pytest.approx(want, rel=1e-3)


def test_doppler_scan_width_grows_with_v():
    profile = Profile1D("gaussian", amplitude=1.0, width=1.0)
    omega0 = 1.0
    omegas = omega0 + np.linspace(-0.2, 0.2, 2001)
    widths = [doppler_scan(MovingRod(profile=profile, v=v), omega0, omegas).fwhm for v in (0.01, 0.02, 0.04)]
    assert widths[0] < widths[1] < widths[2]


def test_doppler_scan_validation():
    m = MovingRod(profile=Profile1D("gaussian"), v=0.01)
    with pytest.raises(ValueError):
        doppler_scan(m, 1.0, [1.0, 1.1])
    with pytest.raises(ValueError):
        doppler_scan(m, 1.0, np.ones((3, 3)))

"""bornscatter: first-order photodetection intensities for time-dependent dielectrics.

A localized dielectric whose susceptibility changes in time — a traveling
modulation through a fixed shape, or a thin rod in uniform motion — converts
quantum vacuum fluctuations and incident photons into detectable sidebands.
This package evaluates the resulting photodetector intensities to first order
in the susceptibility, along with the quadrature engines, special-function
kernels, and resolution/scaling diagnostics needed to characterize them.
"""

from .analysis import (
    DopplerScan,
    ResolutionReport,
    ScalingFit,
    doppler_scan,
    fit_power_law,
    rayleigh_report,
)
from .dielectrics import (
    ModulatedDielectric,
    MovingRod,
    StaticTermError,
    doppler_scattered_spectrum,
    modulated_spectrum,
    rod_rest_transform,
    rod_spectrum,
)
from .greens import greens_far, greens_far_normalized, greens_near, greens_scalar, greens_tensor
from .photon import (
    BruteForceXi,
    CoherentState,
    DegenerateGeometryError,
    GuardBandError,
    IncidentPhoton,
    PolarizationBasis,
    brute_force_xi,
    coherent_intensity,
    gaussian_envelope,
    incident_correlator,
    photon_modulated,
    photon_rod,
    polarization_basis,
    polarization_filter,
    scattering_amplitude_V,
    theta_amplitudes,
)
from .profiles import Profile1D, Profile3D, fourier1d, isotropic_gaussian
from .quadrature import (
    IntegralEstimate,
    QuadratureSpec,
    integrate_box3,
    integrate_line_oscillatory,
    integrate_q3,
    monte_carlo_q3,
    solve_decay_cutoff,
)
from .special import SingularKernelError, bessel_j0, bessel_k0, bessel_k1, cylinder_kernel, hankel1_0
from .vacuum import (
    Detector,
    FarFieldError,
    IntensityResult,
    modulated_cutoff,
    rod_covariant_cutoff,
    rod_maintext_cutoff,
    vacuum_modulated,
    vacuum_rod_covariant,
    vacuum_rod_maintext,
)

__version__ = "0.1.0"

__all__ = [
    "BruteForceXi",
    "CoherentState",
    "DegenerateGeometryError",
    "Detector",
    "DopplerScan",
    "FarFieldError",
    "GuardBandError",
    "IncidentPhoton",
    "IntegralEstimate",
    "IntensityResult",
    "ModulatedDielectric",
    "MovingRod",
    "PolarizationBasis",
    "Profile1D",
    "Profile3D",
    "QuadratureSpec",
    "ResolutionReport",
    "ScalingFit",
    "SingularKernelError",
    "StaticTermError",
    "__version__",
    "bessel_j0",
    "bessel_k0",
    "bessel_k1",
    "brute_force_xi",
    "coherent_intensity",
    "cylinder_kernel",
    "doppler_scan",
    "doppler_scattered_spectrum",
    "fit_power_law",
    "fourier1d",
    "gaussian_envelope",
    "greens_far",
    "greens_far_normalized",
    "greens_near",
    "greens_scalar",
    "greens_tensor",
    "hankel1_0",
    "incident_correlator",
    "integrate_box3",
    "integrate_line_oscillatory",
    "integrate_q3",
    "isotropic_gaussian",
    "modulated_cutoff",
    "modulated_spectrum",
    "monte_carlo_q3",
    "photon_modulated",
    "photon_rod",
    "polarization_basis",
    "polarization_filter",
    "rayleigh_report",
    "rod_covariant_cutoff",
    "rod_maintext_cutoff",
    "rod_rest_transform",
    "rod_spectrum",
    "scattering_amplitude_V",
    "solve_decay_cutoff",
    "theta_amplitudes",
    "vacuum_modulated",
    "vacuum_rod_covariant",
    "vacuum_rod_maintext",
]

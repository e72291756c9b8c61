"""Profile transforms against direct numerical-quadrature oracles.

The oracle is scipy.integrate.quad applied to the defining integral
f[kappa] = (1/2pi) * int dx e^{i kappa x} f(x), integrated over the profile's
support with the tophat's derivative breakpoints passed explicitly (quad
otherwise loses the compactly supported integrand at large kappa).
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from bornscatter import Profile1D, Profile3D, fourier1d, isotropic_gaussian

SEED = 20240811


def transform_oracle(profile, kappa):
    """Direct quadrature of the defining transform integral."""
    c, w = profile.center, profile.width
    if profile.kind == "gaussian":
        lo, hi = c - 12.0 * w, c + 12.0 * w
        points = None
    else:  # smoothed tophat: support [c - 3w/2, c + 3w/2], slope breaks at +-w/2
        lo, hi = c - 1.5 * w, c + 1.5 * w
        points = [c - 1.5 * w, c - 0.5 * w, c + 0.5 * w, c + 1.5 * w]

    def f(x):
        return profile.value(x)

    re, _ = quad(lambda x: f(x) * np.cos(kappa * x), lo, hi, points=points, limit=200)
    im, _ = quad(lambda x: f(x) * np.sin(kappa * x), lo, hi, points=points, limit=200)
    return (re + 1j * im) / (2.0 * np.pi)


ORACLE_CASES = [
    ("gaussian", 1.0, 1.0, 0.0, 0.0),
    ("gaussian", 1.0, 1.0, 0.0, 1.7),
    ("gaussian", 0.5, 2.0, 1.3, 0.8),
    ("gaussian", 2.0, 0.4, -0.6, 3.0),
    ("smoothed_tophat", 1.0, 1.0, 0.0, 0.0),
    ("smoothed_tophat", 1.0, 1.0, 0.0, 2.4),
    ("smoothed_tophat", 0.7, 1.5, -0.9, 1.1),
    ("smoothed_tophat", 1.0, 2.0, 0.5, 5.0),
    ("smoothed_tophat", 1.0, 1.0, 0.0, np.pi),  # near the removable point of the shape
]


@pytest.mark.parametrize("kind,a,w,c,kappa", ORACLE_CASES)
def test_fourier1d_matches_quadrature_oracle(kind, a, w, c, kappa):
    p = Profile1D(kind, amplitude=a, width=w, center=c)
    got = complex(fourier1d(p, kappa))
    want = transform_oracle(p, kappa)
    assert abs(got - want) <= 1e-10 * max(abs(want), abs(fourier1d(p, 0.0)))


def test_gaussian_zero_frequency_value():
    # a=1, l=1, c=0 at kappa=0 -> 1/sqrt(2 pi) ~ 0.39894
    p = Profile1D("gaussian", amplitude=1.0, width=1.0)
    assert complex(fourier1d(p, 0.0)) == pytest.approx(1.0 / np.sqrt(2.0 * np.pi), rel=1e-14)
    assert abs(complex(fourier1d(p, 40.0))) < 1e-200  # decay


def test_transform_at_zero_is_area_over_2pi():
    for p in (
        Profile1D("gaussian", amplitude=0.7, width=1.3, center=0.4),
        Profile1D("smoothed_tophat", amplitude=1.1, width=2.0, center=-0.2),
    ):
        area, _ = quad(p.value, p.center - 13 * p.width, p.center + 13 * p.width, limit=200)
        assert abs(complex(fourier1d(p, 0.0))) == pytest.approx(area / (2.0 * np.pi), rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(
    kind=st.sampled_from(["gaussian", "smoothed_tophat"]),
    a=st.floats(0.1, 5.0),
    w=st.floats(0.2, 4.0),
    x0=st.floats(-3.0, 3.0),
    kappa=st.floats(-8.0, 8.0),
)
def test_center_shift_multiplies_by_phase(kind, a, w, x0, kappa):
    base = Profile1D(kind, amplitude=a, width=w, center=0.0)
    shifted = Profile1D(kind, amplitude=a, width=w, center=x0)
    lhs = complex(fourier1d(shifted, kappa))
    rhs = complex(fourier1d(base, kappa)) * np.exp(1j * kappa * x0)
    assert abs(lhs - rhs) <= 1e-12 * max(abs(complex(fourier1d(base, 0.0))), 1e-30)


@settings(max_examples=60, deadline=None)
@given(
    kind=st.sampled_from(["gaussian", "smoothed_tophat"]),
    w=st.floats(0.2, 4.0),
    x0=st.floats(-3.0, 3.0),
    kappa=st.floats(0.0, 10.0),
)
def test_real_profile_conjugate_symmetry_and_peak_bound(kind, w, x0, kappa):
    p = Profile1D(kind, amplitude=1.0, width=w, center=x0)
    plus = complex(fourier1d(p, kappa))
    minus = complex(fourier1d(p, -kappa))
    assert abs(minus - np.conj(plus)) <= 1e-13 * max(abs(plus), 1e-30)
    # nonnegative profile: |f[kappa]| <= f[0]
    assert abs(plus) <= abs(complex(fourier1d(p, 0.0))) * (1.0 + 1e-12)


def test_tophat_transform_tail_bound():
    p = Profile1D("smoothed_tophat", amplitude=1.0, width=1.0)
    for u in np.linspace(3.0, 60.0, 40):
        assert abs(complex(fourier1d(p, u))) <= p.transform_bound(u) * (1.0 + 1e-12)


def test_profile3d_transform_is_product_of_negated_1d_transforms():
    rng = np.random.default_rng(SEED)
    factors = (
        Profile1D("gaussian", amplitude=0.8, width=1.2, center=0.3),
        Profile1D("smoothed_tophat", amplitude=1.0, width=0.9, center=-0.5),
        Profile1D("gaussian", amplitude=1.5, width=0.6),
    )
    p3 = Profile3D(factors)
    for _ in range(10):
        q = rng.normal(scale=2.0, size=3)
        got = complex(p3.transform(*q))
        want = np.prod([complex(fourier1d(f, -qi)) for f, qi in zip(factors, q)])
        assert abs(got - want) <= 1e-13 * max(abs(want), 1e-30)


def test_profile3d_value_is_product_and_extent_covers_support():
    p3 = isotropic_gaussian(amplitude=2.0, width=1.5)
    val = p3.value(0.5, -0.3, 1.0)
    want = 2.0 * np.exp(-(0.5**2 + 0.3**2 + 1.0**2) / (2 * 1.5**2))
    assert float(val) == pytest.approx(want, rel=1e-12)
    ext = p3.factors[0].extent()
    assert p3.factors[0].value(ext) < 1e-12 * 2.0


def test_validation_rejects_bad_width_and_kind():
    with pytest.raises(ValueError):
        Profile1D("gaussian", amplitude=1.0, width=0.0)
    with pytest.raises(ValueError):
        Profile1D("gaussian", amplitude=1.0, width=-1.0)
    with pytest.raises(ValueError):
        Profile1D("boxcar", amplitude=1.0, width=1.0)
    # amplitude 0 is legal: it encodes "no modulation"
    p = Profile1D("gaussian", amplitude=0.0, width=1.0)
    assert complex(fourier1d(p, 0.3)) == 0.0

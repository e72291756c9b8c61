"""Retarded Green functions of the vector Helmholtz operator in free space.

Scalar kernel
    G_ω(r) = e^{iω|r|} / (−4π|r|),       (∂²+ω²) G_ω = δ(r)

Tensor kernel (transverse-wave operator)
    G_αβ[ω,r] = (δ_αβ + ∂_α∂_β/ω²) G_ω(r)
              = e^{iωr}/(4π r³ ω²) · { [1−iωr−(ωr)²] δ_αβ − [3−3iωr−(ωr)²] n_αn_β }

for r ≠ 0 (n = r/r).  The δ(r)/3 contact term of the distributional second
derivative is excluded: detectors never sit inside the scatterer in any
scenario handled here.

Two far-field variants are provided.  ``greens_far`` is the bare spherical
wave (δ_αβ − n_αn_β) e^{iωr − iωn·r′}/r, which is the exact tensor kernel
times (−4π r e^{−iωr+iωn·r′}) in the limit ωr → ∞; ``greens_far_normalized``
carries the −1/4π so that it is the true ωr → ∞ limit of ``greens_tensor``.
All intensity pipelines use the normalized variant.
"""

from __future__ import annotations

import numpy as np


def _unit(r):
    r = np.asarray(r, dtype=float)
    rn = float(np.linalg.norm(r))
    if rn <= 0.0:
        raise ValueError("Green functions are singular at r = 0")
    return r / rn, rn


def greens_scalar(omega: float, r) -> complex:
    """Scalar retarded kernel e^{i|ω| r}/(−4π r)."""
    _, rn = _unit(r)
    return complex(np.exp(1j * abs(omega) * rn) / (-4.0 * np.pi * rn))


def greens_tensor(omega: float, r) -> np.ndarray:
    """Exact tensor kernel (δ + ∂∂/ω²) G_ω(r) for ω > 0, r ≠ 0 (3×3 complex)."""
    if not omega > 0:
        raise ValueError("greens_tensor requires ω > 0")
    n, rn = _unit(r)
    x = omega * rn
    nn = np.outer(n, n)
    c_delta = 1.0 - 1j * x - x * x
    c_nn = 3.0 - 3j * x - x * x
    pref = np.exp(1j * x) / (4.0 * np.pi * rn**3 * omega**2)
    return pref * (c_delta * np.eye(3) - c_nn * nn)


def greens_far(omega: float, r, rprime) -> np.ndarray:
    """Bare far-field spherical wave (δ−nn)·e^{iωr − iωn·r′}/r.

    The caller is responsible for |r| ≫ |r′|.  Note this form omits the
    −1/4π of the scalar kernel; see :func:`greens_far_normalized`.
    """
    n, rn = _unit(r)
    rp = np.asarray(rprime, dtype=float)
    phase = np.exp(1j * omega * (rn - float(n @ rp)))
    return (np.eye(3) - np.outer(n, n)) * (phase / rn)


def greens_far_normalized(omega: float, r, rprime) -> np.ndarray:
    """Far-field limit of greens_tensor: −(1/4π)·(δ−nn)·e^{iωr−iωn·r′}/r."""
    return greens_far(omega, r, rprime) / (-4.0 * np.pi)


def greens_near(omega: float, r) -> np.ndarray:
    """Quasi-static dipole tensor (δ−3nn)/(4π ω² r³), valid for ωr ≪ 1."""
    if not omega > 0:
        raise ValueError("greens_near requires ω > 0")
    n, rn = _unit(r)
    return (np.eye(3) - 3.0 * np.outer(n, n)) / (4.0 * np.pi * omega**2 * rn**3)

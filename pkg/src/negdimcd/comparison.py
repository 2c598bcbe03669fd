"""Comparison functions of constant-curvature ODEs and distortion coefficients.

The primitives ``s`` and ``c`` solve u'' + kappa*u = 0 with s(0)=0, s'(0)=1,
c(0)=1, c'(0)=0.  The ratios ``sigma`` and ``tau`` are the distortion
coefficients used throughout the convexity and transport checkers; both obey
extended-real conventions (``t=0``, ``theta=0``, out-of-domain +inf) so that
callers never hit 0/0 or domain errors.  All functions accept floats or numpy
arrays and are pure.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["s", "c", "sigma", "tau", "g_combiner", "SERIES_THRESHOLD"]

# Below this value of |kappa|*theta^2 the closed-form branches lose digits to
# cancellation; a truncated Taylor series in u = kappa*theta^2 is exact to
# ~1e-30 there.
SERIES_THRESHOLD = 1e-6


def _s_series(kappa, theta):
    u = kappa * theta * theta
    return theta * (1.0 - u / 6.0 * (1.0 - u / 20.0 * (1.0 - u / 42.0)))


def _c_series(kappa, theta):
    u = kappa * theta * theta
    return 1.0 - u / 2.0 * (1.0 - u / 12.0 * (1.0 - u / 30.0))


def s(kappa, theta):
    """sin-like solution: sin(sqrt(k)x)/sqrt(k), x, or sinh(sqrt(-k)x)/sqrt(-k).

    Continuous in ``kappa`` through 0 (series branch for |kappa|*theta^2 small).
    Requires theta >= 0.
    """
    kappa = np.asarray(kappa, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0):
        raise ValueError("theta must be nonnegative")
    kappa, theta = np.broadcast_arrays(kappa, theta)
    out = np.empty(kappa.shape, dtype=float)
    u = np.abs(kappa) * theta * theta
    small = u <= SERIES_THRESHOLD
    pos = (kappa > 0) & ~small
    neg = (kappa < 0) & ~small
    out[small] = _s_series(kappa[small], theta[small])
    rt = np.sqrt(kappa[pos])
    out[pos] = np.sin(rt * theta[pos]) / rt
    rt = np.sqrt(-kappa[neg])
    out[neg] = np.sinh(rt * theta[neg]) / rt
    return float(out) if out.ndim == 0 else out


def c(kappa, theta):
    """cos-like solution: cos(sqrt(k)x), 1, or cosh(sqrt(-k)x).  c(kappa,0)=1."""
    kappa = np.asarray(kappa, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0):
        raise ValueError("theta must be nonnegative")
    kappa, theta = np.broadcast_arrays(kappa, theta)
    out = np.empty(kappa.shape, dtype=float)
    u = np.abs(kappa) * theta * theta
    small = u <= SERIES_THRESHOLD
    pos = (kappa > 0) & ~small
    neg = (kappa < 0) & ~small
    out[small] = _c_series(kappa[small], theta[small])
    out[pos] = np.cos(np.sqrt(kappa[pos]) * theta[pos])
    out[neg] = np.cosh(np.sqrt(-kappa[neg]) * theta[neg])
    return float(out) if out.ndim == 0 else out


def sigma(kappa, t, theta):
    """Distortion coefficient s(kappa, t*theta) / s(kappa, theta).

    Conventions: sigma(kappa, t, 0) = t, and +inf once kappa > 0 and
    theta >= pi/sqrt(kappa) (out of the domain of the ratio).
    """
    kappa = np.asarray(kappa, dtype=float)
    t = np.asarray(t, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any((t < 0) | (t > 1)):
        raise ValueError("t must lie in [0, 1]")
    if np.any(theta < 0):
        raise ValueError("theta must be nonnegative")
    kappa, t, theta = np.broadcast_arrays(kappa, t, theta)
    out = np.empty(kappa.shape, dtype=float)
    zero = theta == 0
    oob = (kappa > 0) & (theta * np.sqrt(np.maximum(kappa, 0.0)) >= math.pi)
    rest = ~zero & ~oob
    out[zero] = t[zero]
    out[oob] = np.inf
    out[rest] = s(kappa[rest], t[rest] * theta[rest]) / s(kappa[rest], theta[rest])
    return float(out) if out.ndim == 0 else out


def _pow_inv(x, exponent):
    # x**exponent for x > 0 via exp(exponent*log x); avoids real-power
    # ambiguity for the fractional negative exponents used with N < 0.
    return np.exp(exponent * np.log(x))


def tau(K, N, t, theta):
    """Dimensional distortion coefficient t^(1/N) * sigma_{K/(N-1)}^(t)(theta)^((N-1)/N).

    Requires N < 0.  Conventions: tau = 0 at t = 0, and +inf once K < 0 and
    theta >= pi*sqrt((N-1)/K).
    """
    if not N < 0:
        raise ValueError("N must be negative")
    K = np.asarray(K, dtype=float)
    t = np.asarray(t, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any((t < 0) | (t > 1)):
        raise ValueError("t must lie in [0, 1]")
    if np.any(theta < 0):
        raise ValueError("theta must be nonnegative")
    K, t, theta = np.broadcast_arrays(K, t, theta)
    out = np.empty(K.shape, dtype=float)
    zero = t == 0
    sig = np.asarray(sigma(K / (N - 1.0), t, theta))
    oob = np.isinf(sig) & ~zero
    rest = ~zero & ~oob
    out[zero] = 0.0
    out[oob] = np.inf
    out[rest] = _pow_inv(t[rest], 1.0 / N) * _pow_inv(sig[rest], (N - 1.0) / N)
    return float(out) if out.ndim == 0 else out


def g_combiner(t, theta, eta, kappa):
    """log of the sigma-weighted combination of exp(theta) and exp(eta).

    Defined for kappa < pi^2 only; jointly convex in (theta, eta, kappa) for
    each fixed t, which is what the sum rule for convexity parameters rests on.
    """
    kappa = np.asarray(kappa, dtype=float)
    if np.any(kappa >= math.pi**2):
        raise ValueError("kappa must be below pi**2")
    t = np.asarray(t, dtype=float)
    if np.any((t < 0) | (t > 1)):
        raise ValueError("t must lie in [0, 1]")
    w0 = sigma(kappa, 1.0 - t, np.ones_like(kappa))
    w1 = sigma(kappa, t, np.ones_like(kappa))
    out = np.log(w0 * np.exp(theta) + w1 * np.exp(eta))
    return float(out) if out.ndim == 0 else out

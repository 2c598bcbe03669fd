"""Weighted Ricci curvature, weighted Laplacian and spectral bounds on model spaces.

Two model spaces are supported: weighted lines/intervals (intrinsic dimension
1) and the rotationally symmetric unit 2-sphere with a radial weight.  On both
every quantity reduces to one-dimensional calculus, so curvature infima,
Bochner margins and the radial spectral gap can be computed with controlled
error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .functions import ScalarFunction1D
from .report import CheckReport

__all__ = [
    "WeightedLine",
    "RotSphere",
    "WeightedSpace",
    "CurvatureCertificate",
    "EigenResult",
    "lebesgue_line",
    "gaussian_line",
    "power_weight_line",
    "ricci_n",
    "min_ricci_n",
    "laplacian_m",
    "bochner_margin",
    "lichnerowicz",
    "weighted_sum_certificate",
    "product_certificate",
    "product_direction_check",
]

_POLE_SIN = 1e-8


@dataclass(frozen=True)
class WeightedLine:
    """Interval with reference measure exp(-psi(x)) dx."""

    interval: Tuple[float, float]
    psi: ScalarFunction1D

    @property
    def n(self) -> int:
        return 1


@dataclass(frozen=True)
class RotSphere:
    """Unit 2-sphere with radial weight psi(theta), theta in (0, pi).

    Smoothness at the poles requires psi'(0+) = psi'(pi-) = 0.
    """

    psi: ScalarFunction1D

    @property
    def n(self) -> int:
        return 2

    @property
    def interval(self) -> Tuple[float, float]:
        return (0.0, math.pi)


WeightedSpace = Union[WeightedLine, RotSphere]


def lebesgue_line(lo: float, hi: float) -> WeightedLine:
    return WeightedLine((lo, hi), ScalarFunction1D.constant(0.0))


def gaussian_line(curv: float = 1.0, radius: float = 8.0) -> WeightedLine:
    """Line whose reference measure is the centered normal with variance 1/curv.

    psi(x) = curv*x^2/2 + log(sqrt(2*pi/curv)), truncated to |x| <= radius
    standard deviations; the lost tail mass is below 1e-14 at the default.
    """
    if not curv > 0:
        raise ValueError("curv must be positive")
    sd = 1.0 / math.sqrt(curv)
    c0 = 0.5 * math.log(2.0 * math.pi / curv)
    psi = ScalarFunction1D(
        fn=lambda x: curv * np.asarray(x, dtype=float) ** 2 / 2.0 + c0,
        d1=lambda x: curv * np.asarray(x, dtype=float),
        d2=lambda x: curv * np.ones_like(np.asarray(x, dtype=float)),
        name="gaussian")
    return WeightedLine((-radius * sd, radius * sd), psi)


def power_weight_line(exponent: float, lo: float, hi: float) -> WeightedLine:
    """Half-line fragment with weight x**exponent, i.e. psi = -exponent*log(x)."""
    if not 0 < lo < hi:
        raise ValueError("need 0 < lo < hi for a power weight")
    a = float(exponent)
    psi = ScalarFunction1D(
        fn=lambda x: -a * np.log(np.asarray(x, dtype=float)),
        d1=lambda x: -a / np.asarray(x, dtype=float),
        d2=lambda x: a / np.asarray(x, dtype=float) ** 2,
        name=f"power({a})")
    return WeightedLine((lo, hi), psi)


def _grad_correction(g: float, denom: float) -> float:
    # g^2/denom with the convention 0 when g == 0; denom == 0 is only legal
    # for constant weights.
    if g == 0.0:
        return 0.0
    if denom == 0.0:
        raise ValueError("effective dimension equals intrinsic dimension "
                         "with a nonconstant weight")
    return g * g / denom


def _tangential_term(psi: ScalarFunction1D, theta: float) -> float:
    # cot(theta)*psi'(theta), continued to psi''(theta) at the poles.
    st = math.sin(theta)
    if abs(st) < _POLE_SIN:
        return float(psi.deriv2(theta))
    return float(np.cos(theta) / st * psi.deriv(theta))


def ricci_n(space: WeightedSpace, point: float, N: float,
            direction: float = 0.0) -> float:
    """Weighted Ricci curvature for a unit vector, N < 0.

    On a line the direction is immaterial.  On the sphere ``direction`` is the
    angle between the vector and the polar direction; the quadratic form is
    diagonal in the (polar, rotational) frame, so radial = 0.0 and tangential
    = pi/2 are the extreme values.
    """
    if not N < 0:
        raise ValueError("N must be negative")
    if isinstance(space, WeightedLine):
        psi = space.psi
        return float(psi.deriv2(point)) - _grad_correction(float(psi.deriv(point)), N - 1.0)
    psi = space.psi
    ca2 = math.cos(direction) ** 2
    sa2 = 1.0 - ca2
    radial = float(psi.deriv2(point)) - _grad_correction(float(psi.deriv(point)), N - 2.0)
    tangential = _tangential_term(psi, point)
    return 1.0 + ca2 * radial + sa2 * tangential


@dataclass(frozen=True)
class CurvatureCertificate:
    """Verified infimum of the weighted Ricci curvature over a sampled bundle."""

    K: float
    N: float
    inf_location: Tuple[float, ...]


def min_ricci_n(space: WeightedSpace, N: float, grid: Sequence[float],
                directions: Sequence[float] | None = None) -> CurvatureCertificate:
    """Grid infimum of ricci_n; records the argmin (point, direction)."""
    if isinstance(space, WeightedLine):
        dirs = [0.0]
    else:
        # the form is linear in cos^2(direction): endpoints are the extremes
        dirs = list(directions) if directions is not None else [0.0, math.pi / 2.0]
    best = math.inf
    where: Tuple[float, ...] = ()
    for x in grid:
        for a in dirs:
            v = ricci_n(space, float(x), N, a)
            if v < best:
                best = v
                where = (float(x), float(a))
    return CurvatureCertificate(K=best, N=N, inf_location=where)


def laplacian_m(space: WeightedSpace, u: ScalarFunction1D, point: float) -> float:
    """Weighted Laplacian u'' - u' psi' (plus the cot(theta) u' area term on
    the sphere, continued through the poles)."""
    up = float(u.deriv(point))
    upp = float(u.deriv2(point))
    psi = space.psi
    if isinstance(space, WeightedLine):
        return upp - up * float(psi.deriv(point))
    st = math.sin(point)
    if abs(st) < _POLE_SIN:
        # cot(theta) u'(theta) -> u''(pole) for smooth radial u
        area = upp
    else:
        area = math.cos(point) / st * up
    return upp + area - up * float(psi.deriv(point))


def _third_deriv(u: ScalarFunction1D, x: float, h: float) -> float:
    # fourth-order central stencil applied to the second derivative
    d2 = u.deriv2
    return float((-d2(x + 2 * h) + 8.0 * d2(x + h) - 8.0 * d2(x - h) + d2(x - 2 * h)) / (12.0 * h))


def bochner_margin(space: WeightedSpace, u: ScalarFunction1D, N: float,
                   grid: Sequence[float], tol: float = 1e-8,
                   h3: float = 1e-3) -> CheckReport:
    """Margin of the dimensional Bochner inequality at each grid point.

    margin(x) = L_m(|grad u|^2/2) - <grad L_m u, grad u>
                - Ric_N(grad u) - (L_m u)^2 / N,
    assembled from analytic derivatives where available; the third derivative
    of u uses a fourth-order central stencil of step ``h3``.
    """
    if not N < 0:
        raise ValueError("N must be negative")
    psi = space.psi
    margins, locations = [], []
    for x in np.asarray(grid, dtype=float):
        x = float(x)
        up = float(u.deriv(x))
        upp = float(u.deriv2(x))
        uppp = _third_deriv(u, x, h3)
        pp = float(psi.deriv(x))
        ppp = float(psi.deriv2(x))
        if isinstance(space, WeightedLine):
            lap_u = upp - up * pp
            # g = u'^2/2: L_m g = g'' - g' psi'
            lhs = (upp * upp + up * uppp) - (up * upp) * pp
            dlap = uppp - upp * pp - up * ppp
            ric_unit = ppp - _grad_correction(pp, N - 1.0)
            ric_term = ric_unit * up * up
        else:
            st = math.sin(x)
            q = (math.cos(x) / st if abs(st) >= _POLE_SIN else 0.0) - pp
            dq = (-1.0 / (st * st) if abs(st) >= _POLE_SIN else 0.0) - ppp
            lap_u = upp + q * up
            lhs = (upp * upp + up * uppp) + q * (up * upp)
            dlap = uppp + dq * up + q * upp
            ric_unit = ricci_n(space, x, N, direction=0.0)
            ric_term = ric_unit * up * up
        lhs -= up * dlap
        margin = lhs - ric_term - lap_u * lap_u / N
        margins.append(float(margin))
        locations.append(x)
    return CheckReport.from_margins("bochner", margins, locations, tol)


@dataclass
class EigenResult:
    """First nonzero eigenvalue of -L_m on radial functions, with the
    spectral-gap lower bound K*N/(N-1)."""

    lambda1: float
    bound: float
    passed: bool
    K: float
    status: str = "checked"
    note: str = ""


def _radial_lambda1(space: WeightedSpace, mesh: int) -> float:
    """Finite-volume radial eigenvalue with half-cell fluxes.

    The flux weight w = sin(theta) e^{-psi} (sphere) or e^{-psi} (line)
    vanishes at the sphere poles, which encodes the Neumann-regular endpoint
    condition without ever dividing by w at the ends.
    """
    lo, hi = space.interval
    h = (hi - lo) / mesh
    centers = lo + (np.arange(mesh) + 0.5) * h
    faces = lo + np.arange(mesh + 1) * h
    psi_c = np.asarray(space.psi(centers), dtype=float)
    psi_f = np.asarray(space.psi(faces), dtype=float)
    if isinstance(space, RotSphere):
        w_c = np.sin(centers) * np.exp(-psi_c)
        w_f = np.sin(faces) * np.exp(-psi_f)
        w_f[0] = 0.0
        w_f[-1] = 0.0
    else:
        w_c = np.exp(-psi_c)
        w_f = np.exp(-psi_f)
        w_f[0] = 0.0   # zero-flux (Neumann) truncation
        w_f[-1] = 0.0
    diag = (w_f[:-1] + w_f[1:]) / (w_c * h * h)
    off = -w_f[1:-1] / (h * h * np.sqrt(w_c[:-1] * w_c[1:]))
    vals = eigh_tridiagonal(diag, off, select="i", select_range=(0, 1),
                            eigvals_only=True)
    return float(vals[1])


def lichnerowicz(space: WeightedSpace, N: float, mesh_size: int = 2000,
                 tol: float = 1e-3, K: float | None = None,
                 cert_grid: int = 400) -> EigenResult:
    """Radial spectral gap versus the bound K*N/(N-1), K = inf Ric_N.

    Only the radial spectrum is computed; for a nontrivial weight this is not
    claimed to be the full gap (the result says so in its note).  A weighted
    line is accepted as an advisory noncompact run, outside the compactness
    hypothesis of the bound.  K <= 0 makes the bound vacuous; an eigenvalue
    shift above ``tol`` under mesh halving is reported inconclusive.
    """
    if not N < 0:
        raise ValueError("N must be negative")
    lo, hi = space.interval
    pad = (hi - lo) * 1e-6
    if K is None:
        K = min_ricci_n(space, N, np.linspace(lo + pad, hi - pad, cert_grid)).K
    lam_half = _radial_lambda1(space, mesh_size // 2)
    lam = _radial_lambda1(space, mesh_size)
    notes = []
    if isinstance(space, WeightedLine):
        notes.append("advisory: noncompact weighted line (truncated Neumann problem)")
    else:
        probe = np.linspace(lo + (hi - lo) * 0.1, hi - (hi - lo) * 0.1, 7)
        if max(abs(float(space.psi.deriv(t))) for t in probe) > 1e-12:
            notes.append("radial spectrum only; not claimed to be the full gap")
    if abs(lam - lam_half) > tol:
        notes.append(f"mesh too coarse: lambda1 shifted by {abs(lam - lam_half)!r}")
        return EigenResult(lambda1=lam, bound=K * N / (N - 1.0), passed=False,
                           K=K, status="inconclusive", note="; ".join(notes))
    bound = K * N / (N - 1.0)
    if K <= 0:
        notes.append("K <= 0: bound vacuous")
        return EigenResult(lambda1=lam, bound=bound, passed=True, K=K,
                           status="vacuous", note="; ".join(notes))
    return EigenResult(lambda1=lam, bound=bound, passed=bool(lam >= bound - tol),
                       K=K, note="; ".join(notes))


def weighted_sum_certificate(base: Tuple[float, float], extra: Tuple[float, float],
                             n: int) -> Tuple[float, float]:
    """Curvature-dimension parameters of e^{-Psi} m when m carries (K2, N2)
    with N2 >= n and Psi is (K1, N1)-convex with N1 < -N2."""
    K2, N2 = base
    K1, N1 = extra
    if not N2 >= n:
        raise ValueError(f"base dimension parameter must be >= n={n}")
    if not N1 < -N2:
        raise ValueError("need N1 < -N2")
    return (K1 + K2, N1 + N2)


def product_certificate(cert1: Tuple[float, float], cert2: Tuple[float, float],
                        n2: int = 1) -> Tuple[float, float]:
    """Parameters of a Cartesian product: shared K, dimensions N1 + N2
    (N1 < -N2, N2 >= n2)."""
    K1, N1 = cert1
    K2, N2 = cert2
    if K1 != K2:
        raise ValueError("product rule needs the same K on both factors")
    if not N2 >= n2:
        raise ValueError(f"second factor needs N2 >= n2={n2}")
    if not N1 < -N2:
        raise ValueError("need N1 < -N2")
    return (K1, N1 + N2)


def product_direction_check(psi1: ScalarFunction1D, psi2: ScalarFunction1D,
                            N1: float, N2: float,
                            x_grid: Sequence[float], y_grid: Sequence[float],
                            n_directions: int = 100,
                            tol: float = 1e-9) -> CheckReport:
    """Pointwise superadditivity of Ric_N on a product of two weighted lines.

    For unit v = (cos a, sin a) the margin is
    Ric_{N1+N2}(v) - Ric_{N1}(v1) - Ric_{N2}(v2), evaluated over the
    direction grid; nonnegativity is what the product rule rests on.
    """
    N = N1 + N2
    angles = np.linspace(0.0, math.pi / 2.0, n_directions)
    margins, locations = [], []
    for x in x_grid:
        p1 = float(psi1.deriv(x))
        h1 = float(psi1.deriv2(x))
        r1 = h1 - _grad_correction(p1, N1 - 1.0)
        for y in y_grid:
            p2 = float(psi2.deriv(y))
            h2 = float(psi2.deriv2(y))
            r2 = h2 - _grad_correction(p2, N2 - 1.0)
            for a in angles:
                ca, sa = math.cos(a), math.sin(a)
                grad = p1 * ca + p2 * sa
                ric_prod = h1 * ca * ca + h2 * sa * sa - _grad_correction(grad, N - 2.0)
                margin = ric_prod - r1 * ca * ca - r2 * sa * sa
                margins.append(float(margin))
                locations.append((float(x), float(y), float(a)))
    return CheckReport.from_margins("product-directions", margins, locations, tol)

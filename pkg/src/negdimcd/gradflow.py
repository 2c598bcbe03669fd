"""Gradient curves of 1-D potentials and the inequalities they satisfy.

A curve solves xi' = -f'(xi) by a classical fixed-step fourth-order
integrator (determinism and simple error accounting; no adaptivity).  The
checkers verify the energy dissipation identity, the dimensional evolution
variational inequality in differential and integrated form, the regularizing
and continuity estimates it implies, and the expansion bound for Lipschitz
potentials.

"Almost all t" statements are replaced by "all sampled interior t"; the
differential checker adds its own discretization allowance to the tolerance
and reports it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .comparison import s
from .functions import ScalarFunction1D, exp_transform
from .report import CheckReport

__all__ = [
    "GradientCurve",
    "integrate_flow",
    "local_slope",
    "metric_speed",
    "verify_edi",
    "verify_evi",
    "verify_evi_classical",
    "verify_evi_integrated",
    "regularizing_bounds",
    "expansion_bound",
    "claim_convexity_margin",
]


@dataclass
class GradientCurve:
    """Time-discretized trajectory of the flow xi' = -f'(xi)."""

    times: np.ndarray
    points: np.ndarray
    method: str
    step: float
    note: str = ""

    def __post_init__(self):
        if len(self.times) != len(self.points):
            raise ValueError("times and points must align")
        if len(self.times) < 2:
            raise ValueError("curve needs at least two samples")
        if self.times[0] != 0.0 or np.any(np.diff(self.times) <= 0):
            raise ValueError("times must strictly increase from 0")

    def __len__(self) -> int:
        return len(self.times)

    def index_at(self, t: float) -> int:
        """Grid index closest to time t (must be within half a step)."""
        i = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[i] - t) > 0.5 * self.step + 1e-12:
            raise ValueError(f"time {t!r} is not on the curve grid")
        return i

    def to_text(self) -> str:
        """Plain-text table (time, coordinate) for plotting."""
        lines = ["# time\tx"]
        for t, x in zip(self.times, self.points):
            lines.append(f"{t!r}\t{x!r}")
        return "\n".join(lines) + "\n"


def integrate_flow(f: ScalarFunction1D, x0: float, horizon: float, step: float,
                   domain: tuple[float, float] | None = None,
                   grad_cap: float = 1e8) -> GradientCurve:
    """Integrate the descent flow of f from x0 over [0, horizon].

    Classical RK4 with fixed step.  Near a domain boundary the step is
    retried with halved substeps and finally projected onto the boundary.
    A gradient magnitude above ``grad_cap`` truncates the curve and leaves a
    diagnostic in the note.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    n_steps = int(round(horizon / step))
    if n_steps < 1:
        raise ValueError("horizon shorter than one step")

    def rhs(x):
        return -float(f.deriv(x))

    def rk4(x, h):
        k1 = rhs(x)
        k2 = rhs(x + 0.5 * h * k1)
        k3 = rhs(x + 0.5 * h * k2)
        k4 = rhs(x + h * k3)
        return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def inside(x):
        return domain is None or (domain[0] <= x <= domain[1])

    xs = [float(x0)]
    note = ""
    x = float(x0)
    for i in range(n_steps):
        if abs(f.deriv(x)) > grad_cap:
            note = f"gradient cap {grad_cap!r} exceeded at t={i * step!r}; curve truncated"
            break
        nxt = rk4(x, step)
        if not inside(nxt):
            # substep toward the boundary, then project
            sub = 2
            while sub <= 1 << 12:
                y = x
                ok = True
                for _ in range(sub):
                    y = rk4(y, step / sub)
                    if not inside(y):
                        ok = False
                        break
                if ok:
                    nxt = y
                    break
                sub *= 2
            else:
                nxt = min(max(rk4(x, step), domain[0]), domain[1])
            if not inside(nxt):
                nxt = min(max(nxt, domain[0]), domain[1])
        x = nxt
        xs.append(x)
    times = np.arange(len(xs)) * step
    return GradientCurve(times=times, points=np.asarray(xs, dtype=float),
                         method="rk4", step=step, note=note)


def local_slope(f: ScalarFunction1D, x: float) -> float:
    """Local descending slope; equals |f'(x)| in the smooth 1-D model."""
    return abs(float(f.deriv(x)))


def metric_speed(curve: GradientCurve, i: int) -> float:
    """|xi'| at sample i by central differences (one-sided at the ends)."""
    t, p = curve.times, curve.points
    if i == 0:
        return abs((p[1] - p[0]) / (t[1] - t[0]))
    if i == len(curve) - 1:
        return abs((p[-1] - p[-2]) / (t[-1] - t[-2]))
    return abs((p[i + 1] - p[i - 1]) / (t[i + 1] - t[i - 1]))


def _speeds(curve: GradientCurve) -> np.ndarray:
    return np.array([metric_speed(curve, i) for i in range(len(curve))])


def verify_edi(curve: GradientCurve, f: ScalarFunction1D, t_from: float,
               t_to: float, tol: float = 1e-6) -> CheckReport:
    """Energy dissipation identity between two on-grid times.

    The identity is two-sided, so the margin is minus the absolute residual
    of f(xi(t)) - f(xi(s)) + (1/2) * int (speed^2 + slope^2); the integral is
    a composite trapezoid on the curve grid.
    """
    i0, i1 = curve.index_at(t_from), curve.index_at(t_to)
    if not 0 < i0 < i1 < len(curve):
        raise ValueError("need 0 < t_from < t_to inside the curve horizon")
    seg = slice(i0, i1 + 1)
    speeds = _speeds(curve)[seg]
    slopes = np.array([local_slope(f, x) for x in curve.points[seg]])
    integrand = speeds**2 + slopes**2
    integral = float(np.trapezoid(integrand, curve.times[seg]))
    drop = float(f(curve.points[i1])) - float(f(curve.points[i0]))
    resid = drop + 0.5 * integral
    return CheckReport.from_margins("edi", [-abs(resid)], [(t_from, t_to)], tol)


def _check_radius(dists: np.ndarray, K: float, N: float) -> None:
    if K < 0:
        limit = math.pi * math.sqrt(N / K)
        if np.any(dists >= limit):
            raise ValueError(
                f"distance to the reference point reaches pi*sqrt(N/K)={limit!r}")


def _sq_dist_halves(dists: np.ndarray, K: float, N: float) -> np.ndarray:
    return np.asarray(s(K / N, dists / 2.0), dtype=float) ** 2


def _evi_margins(curve, values_rhs, S, signs, tol, name, extra_note=""):
    """Shared reduction: margin_i = rhs_i - dS/dt_i - penalty_i."""
    t = curve.times
    margins, locations = [], []
    for i in range(1, len(curve) - 1):
        if signs is not None and signs[i - 1] * signs[i + 1] < 0:
            # curve crosses the reference point: one-sided derivatives, take
            # the worse (larger) one
            dplus = (S[i + 1] - S[i]) / (t[i + 1] - t[i])
            dminus = (S[i] - S[i - 1]) / (t[i] - t[i - 1])
            dS = max(dplus, dminus)
        else:
            dS = (S[i + 1] - S[i - 1]) / (t[i + 1] - t[i - 1])
        margins.append(float(values_rhs[i] - dS))
        locations.append(float(t[i]))
    return CheckReport.from_margins(name, margins, locations, tol, note=extra_note,
                                    details={"times": locations, "margins": margins})


def verify_evi(curve: GradientCurve, f: ScalarFunction1D, K: float, N: float,
               z: float, tol: float = 1e-6) -> CheckReport:
    """Differential evolution variational inequality at all interior samples.

    margin(t) = (N/2)(1 - f_N(z)/f_N(xi(t)))
                - d/dt[ s_{K/N}(d(xi(t),z)/2)^2 ] - K s_{K/N}(d(xi(t),z)/2)^2

    with the time derivative by central differences.  The reported tolerance
    is tol plus the discretization allowance 5*step*L_loc, where L_loc is the
    largest sampled gradient magnitude.
    """
    if not N < 0:
        raise ValueError("N must be negative")
    fN = exp_transform(f, N)
    dists = np.abs(curve.points - z)
    _check_radius(dists, K, N)
    S = _sq_dist_halves(dists, K, N)
    ratio = float(fN(z)) / np.asarray(fN(curve.points), dtype=float)
    rhs = (N / 2.0) * (1.0 - ratio) - K * S
    lloc = max(abs(float(f.deriv(x))) for x in curve.points)
    allowance = 5.0 * curve.step * lloc
    note = f"discretization allowance {allowance!r} added to tolerance"
    return _evi_margins(curve, rhs, S, np.sign(curve.points - z),
                        tol + allowance, "evi", note)


def verify_evi_classical(curve: GradientCurve, f: ScalarFunction1D, K: float,
                         z: float, tol: float = 1e-6) -> CheckReport:
    """Classical (dimension-free) EVI margin, scaled by 1/2 so that it is the
    exact limit of the dimensional margin as N -> -inf."""
    dists = np.abs(curve.points - z)
    S = dists**2 / 4.0
    vals = np.asarray(f(curve.points), dtype=float)
    rhs = 0.5 * (float(f(z)) - vals) - K * S
    lloc = max(abs(float(f.deriv(x))) for x in curve.points)
    allowance = 5.0 * curve.step * lloc
    return _evi_margins(curve, rhs, S, np.sign(curve.points - z),
                        tol + allowance, "evi-classical",
                        f"discretization allowance {allowance!r} added to tolerance")


def _expm1_over(K: float, dt: float) -> float:
    """(exp(K*dt) - 1)/K, read as dt when K = 0."""
    if K == 0.0:
        return dt
    return math.expm1(K * dt) / K


def verify_evi_integrated(curve: GradientCurve, f: ScalarFunction1D, K: float,
                          N: float, z: float, t0: float, t1: float,
                          tol: float = 1e-6) -> CheckReport:
    """Integrated form of the evolution variational inequality on [t0, t1].

    margin = N*(e^{K(t1-t0)}-1)/(2K) * (1 - f_N(z)/f_N(xi(t1)))
             - e^{K(t1-t0)} s_{K/N}(d(xi(t1),z)/2)^2
             + s_{K/N}(d(xi(t0),z)/2)^2.
    """
    if not N < 0:
        raise ValueError("N must be negative")
    if not 0 <= t0 <= t1:
        raise ValueError("need 0 <= t0 <= t1")
    i0, i1 = curve.index_at(t0), curve.index_at(t1)
    fN = exp_transform(f, N)
    dists = np.abs(curve.points[i0:i1 + 1] - z)
    _check_radius(dists, K, N)
    S0 = float(_sq_dist_halves(np.array([abs(curve.points[i0] - z)]), K, N)[0])
    S1 = float(_sq_dist_halves(np.array([abs(curve.points[i1] - z)]), K, N)[0])
    dt = curve.times[i1] - curve.times[i0]
    ratio = float(fN(z)) / float(fN(curve.points[i1]))
    margin = (N * _expm1_over(K, dt) / 2.0 * (1.0 - ratio)
              - math.exp(K * dt) * S1 + S0)
    return CheckReport.from_margins("evi-integrated", [margin], [(t0, t1)], tol)


def regularizing_bounds(curve: GradientCurve, f: ScalarFunction1D, K: float,
                        N: float, mode: str, z: float | None = None,
                        t: float | None = None,
                        t0: float | None = None, t1: float | None = None,
                        inf_f: float | None = None,
                        tol: float = 1e-9) -> CheckReport:
    """Consequences of the integrated inequality.

    mode "regularity": f_N(z)/f_N(xi(t)) >= 1 + 2K/(N(e^{Kt}-1)) *
    s_{K/N}(d(xi(0),z)/2)^2 for a reference point z and time t > 0.

    mode "continuity": s_{K/N}(d(xi(t0),xi(t1))/2)^2 <=
    N(1-e^{K(t0-t1)})/(2K) * (1 - f_N(xi(t0))/inf f_N); requires a finite
    lower bound inf_f of the potential.
    """
    if not N < 0:
        raise ValueError("N must be negative")
    fN = exp_transform(f, N)
    if mode == "regularity":
        if z is None or t is None:
            raise ValueError("mode 'regularity' needs z and t")
        i = curve.index_at(t)
        dists = np.abs(curve.points[: i + 1] - z)
        _check_radius(dists, K, N)
        S0 = float(_sq_dist_halves(np.array([abs(curve.points[0] - z)]), K, N)[0])
        lhs = float(fN(z)) / float(fN(curve.points[i]))
        rhs = 1.0 + 2.0 / (N * _expm1_over(K, float(curve.times[i]))) * S0
        return CheckReport.from_margins("regularizing", [lhs - rhs], [(z, t)], tol)
    if mode == "continuity":
        if t0 is None or t1 is None or inf_f is None:
            raise ValueError("mode 'continuity' needs t0, t1 and inf_f")
        i0, i1 = curve.index_at(t0), curve.index_at(t1)
        dists = np.abs(curve.points[i0:i1 + 1] - curve.points[i0])
        _check_radius(dists, K, N)
        S = float(_sq_dist_halves(
            np.array([abs(curve.points[i1] - curve.points[i0])]), K, N)[0])
        inf_fN = math.exp(-inf_f / N)
        rhs = (N * (-_expm1_over(K, t0 - t1)) / 2.0
               * (1.0 - float(fN(curve.points[i0])) / inf_fN))
        return CheckReport.from_margins("continuity", [rhs - S], [(t0, t1)], tol)
    raise ValueError(f"unknown mode {mode!r}")


def _exp_ratio(theta: float) -> float:
    """(exp(theta) - 1)/theta, read as 1 at theta = 0."""
    if theta == 0.0:
        return 1.0
    return math.expm1(theta) / theta


def expansion_bound(f: ScalarFunction1D, x: float, y: float, K: float, N: float,
                    L: float, t0: float, t1: float, step: float,
                    tol: float = 1e-9,
                    domain: tuple[float, float] | None = None) -> CheckReport:
    """Expansion bound between two descent curves of a Lipschitz potential.

    With Theta = (2K + 4L^2/N)(t1 + sqrt(t1*t0) + t0)/3, the margin is

        2 e^{-Theta} ( d(x,y)^2/2 - N (sqrt(t1)-sqrt(t0))^2 (e^Theta-1)/Theta )
        - d(xi(t0), zeta(t1))^2.

    The claimed gradient bound L is audited along both trajectories and a
    violation is rejected with the offending point.
    """
    if not N < 0:
        raise ValueError("N must be negative")
    if t0 < 0 or t1 < 0:
        raise ValueError("times must be nonnegative")
    horizon = max(t0, t1, step)
    xi = integrate_flow(f, x, horizon, step, domain=domain)
    zeta = integrate_flow(f, y, horizon, step, domain=domain)
    for curve in (xi, zeta):
        for p in curve.points:
            g = abs(float(f.deriv(p)))
            if g > L + 1e-12:
                raise ValueError(f"|f'| = {g!r} exceeds the declared bound {L!r} at x={p!r}")
    theta = (2.0 * K + 4.0 * L * L / N) * (t1 + math.sqrt(t1 * t0) + t0) / 3.0
    d0 = abs(x - y)
    rhs = 2.0 * math.exp(-theta) * (
        d0 * d0 / 2.0 - N * (math.sqrt(t1) - math.sqrt(t0)) ** 2 * _exp_ratio(theta))
    dist = abs(xi.points[xi.index_at(t0)] - zeta.points[zeta.index_at(t1)])
    return CheckReport.from_margins("expansion", [rhs - dist * dist],
                                    [(t0, t1)], tol)


def claim_convexity_margin(f: ScalarFunction1D, K: float, N: float, L: float,
                           grid: Sequence[float], tol: float = 1e-9) -> CheckReport:
    """Plain (K + L^2/N)-convexity implied by the dimensional bound plus the
    gradient bound |f'| <= L: margin(x) = f''(x) - K - L^2/N."""
    if not N < 0:
        raise ValueError("N must be negative")
    shift = K + L * L / N
    margins, locations = [], []
    for x in np.asarray(grid, dtype=float):
        margins.append(float(f.deriv2(x)) - shift)
        locations.append(float(x))
    return CheckReport.from_margins("claim-convexity", margins, locations, tol)

"""Independent checks: closed-form solutions, ODE integration, tail fits.

The integrator treats the equation as a first-order system in (y, y') and
steps along polylines given in covering coordinates (rho, phi), so paths
may wind around the critical point.  Near 1 and infinity it works in the
local variable with the reflected parameter vector, keeping step control
uniform in all three charts.
"""
from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import (FitDegenerate, LatticePoleError, PoleEncountered,
                     StepUnderflow)
from .specialfn import CoveringPoint
from .weierstrass import LatticeFrame, wp
from .elliptic_core import EllipticParams, ThetaVector, reflect_theta

_BASE_POINT = {"at0": "0", "at1": "1", "atInf": "inf"}


def picard_solution(nu1: complex, nu2: complex, x: CoveringPoint) -> complex:
    """The two-parameter family solving the (0, 0, 0, 1/2) equation."""
    point = _BASE_POINT[x.base]
    params = EllipticParams(nu1=nu1, nu2=nu2, point=point, case="picard")
    frame = LatticeFrame.from_point(x)
    z = params.work_nu1 * frame.omega1 + nu2 * frame.omega2
    yw = wp(z, frame) + (1.0 + x.value) / 3.0
    if point == "0":
        return yw
    if point == "1":
        return 1.0 - yw
    return yw / x.value


# ---------------------------------------------------------------------------
# PVI as a first-order system, Dormand-Prince 5(4)

def _pvi_rhs(x: complex, y: complex, yp: complex, theta: ThetaVector) -> complex:
    a, b, g, d = theta.alpha, theta.beta, theta.gamma, theta.delta
    return (0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - x)) * yp * yp
            - (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (y - x)) * yp
            + y * (y - 1.0) * (y - x) / (x * x * (x - 1.0) ** 2)
            * (a + b * x / (y * y) + g * (x - 1.0) / ((y - 1.0) ** 2)
               + d * x * (x - 1.0) / ((y - x) ** 2)))


# Dormand-Prince coefficients (5th order with embedded 4th order).
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
          187 / 2100, 1 / 40)


@dataclass
class Trajectory:
    samples: list                  # (CoveringPoint, y, y') with global y
    theta: ThetaVector
    tol: float

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["rho", "phi", "Re y", "Im y", "Re y'", "Im y'"])
            for pt, y, yp in self.samples:
                w.writerow([repr(pt.rho), repr(pt.phi),
                            repr(y.real), repr(y.imag),
                            repr(yp.real), repr(yp.imag)])


def _work_from_global(base, tloc, y, yp):
    """(y, dy/dx) -> (ytilde, dytilde/dt) in the chart's local variable."""
    if base == "at0":
        return y, yp
    if base == "at1":
        return 1.0 - y, yp
    # atInf: x = 1/t, yt = t*y; dyt/dt = y + t*dy/dt = y - yp/t ... chain rule:
    # dy/dt = dy/dx * dx/dt = yp * (-1/t^2); dyt/dt = y + t*dy/dt = y - yp/t.
    return tloc * y, y - yp / tloc


def _global_from_work(base, tloc, yt, ytp):
    if base == "at0":
        return yt, ytp
    if base == "at1":
        return 1.0 - yt, ytp
    # atInf: y = yt/t; dy/dx = dy/dt * (-t^2) = -(t*ytp - yt)*... :
    # dy/dt = (ytp*t - yt)/t^2; dx/dt = -1/t^2 => dy/dx = yt - t*ytp.
    return yt / tloc, yt - tloc * ytp


# Ninth-point central differences, eighth order, taken in ln t so the step
# is uniform on the covering strip.
_D1_9 = (3.0, -32.0, 168.0, -672.0, 0.0, 672.0, -168.0, 32.0, -3.0)
_D2_9 = (-9.0, 128.0, -1008.0, 8064.0, -14350.0, 8064.0, -1008.0, 128.0, -9.0)

RESIDUAL_STEPS = (0.03, 0.04, 0.055)


def transcendent_derivatives(yfun, x: CoveringPoint, h: float = 0.04):
    """(y, dy/dx, d2y/dx2) of a global solution sampled on the cover.

    `yfun` maps a CoveringPoint in the chart of `x` to the global y value.
    Differences are taken in the logarithm of the local variable, where
    solutions vary on an O(1) scale, then converted by the chain rule.
    """
    ys = [yfun(CoveringPoint(x.rho + k * h, x.phi, x.base))
          for k in range(-4, 5)]
    w1 = sum(c * y for c, y in zip(_D1_9, ys)) / (840.0 * h)
    w2 = sum(c * y for c, y in zip(_D2_9, ys)) / (5040.0 * h * h)
    t = x.value
    y, yt, ytt = ys[4], w1 / t, (w2 - w1) / (t * t)
    if x.base == "at0":
        return y, yt, ytt
    if x.base == "at1":            # x = 1 - t
        return y, -yt, ytt
    # x = 1/t: dy/dx = -t^2 y_t, d2y/dx2 = t^4 y_tt + 2 t^3 y_t
    return y, -t * t * yt, t ** 4 * ytt + 2.0 * t ** 3 * yt


def residual_scale(x: complex, y: complex, yp: complex, ypp: complex,
                   theta: ThetaVector) -> float:
    """Largest additive contribution to the equation at this point.

    Dividing a residual by this measures it against the cancellation
    actually taking place, which is the honest notion of "small" here.
    """
    a, b, g, d = theta.alpha, theta.beta, theta.gamma, theta.delta
    pref = y * (y - 1.0) * (y - x) / (x * x * (x - 1.0) ** 2)
    parts = (ypp,
             0.5 * yp * yp / y, 0.5 * yp * yp / (y - 1.0),
             0.5 * yp * yp / (y - x),
             yp / x, yp / (x - 1.0), yp / (y - x),
             pref * a, pref * b * x / (y * y),
             pref * g * (x - 1.0) / ((y - 1.0) ** 2),
             pref * d * x * (x - 1.0) / ((y - x) ** 2))
    return max(1.0, max(abs(p) for p in parts))


def equation_residual(yfun, x: CoveringPoint, theta: ThetaVector,
                      steps=RESIDUAL_STEPS) -> float:
    """Scaled equation residual of a sampled solution at one point.

    The true residual of an exact solution is zero, so the minimum over a
    few step sizes tracks the differencing floor rather than any single
    step's truncation error.
    """
    from .elliptic_core import pvi_residual
    best = math.inf
    xv = x.global_x()
    for h in steps:
        y, yp, ypp = transcendent_derivatives(yfun, x, h)
        r = abs(pvi_residual(x, y, yp, ypp, theta))
        best = min(best, r / residual_scale(xv, y, yp, ypp, theta))
    return best


def _pole_guard(x: complex, y: complex) -> None:
    if min(abs(y), abs(y - 1.0), abs(y - x), 1.0 / max(abs(y), 1e-300)) < 1e-6:
        raise PoleEncountered(x, y)


def integrate_pvi(theta: ThetaVector, start, path, tol: float = 1e-10) -> Trajectory:
    """Integrate along the polyline `path` of covering points.

    `start` is (CoveringPoint, y, y') at the first path vertex, in global
    variables; all path points must share the start's chart.
    """
    x0, y0, yp0 = start
    base = x0.base
    if any(p.base != base for p in path):
        raise ValueError("path points must share the start's chart")
    thw = theta if base == "at0" else reflect_theta(
        theta, "1" if base == "at1" else "inf")
    _pole_guard(x0.global_x(), y0)
    yt, ytp = _work_from_global(base, x0.value, y0, yp0)
    samples = [(x0, y0, yp0)]
    cur = x0
    for target in path:
        if target == cur:
            continue
        yt, ytp, cur = _segment(thw, base, cur, target, yt, ytp, tol, samples)
    return Trajectory(samples, theta, tol)


def _segment(thw, base, a: CoveringPoint, b: CoveringPoint, yt, ytp, tol,
             samples):
    drho, dphi = b.rho - a.rho, b.phi - a.phi
    seglen = math.hypot(drho, dphi)
    if seglen == 0.0:
        return yt, ytp, b

    def tloc(s):
        return cmath.exp(a.rho + s * drho + 1j * (a.phi + s * dphi))

    def deriv(s, u):
        t = tloc(s)
        dt = t * (drho + 1j * dphi)
        y, yp = u
        return np.array([yp * dt, _pvi_rhs(t, y, yp, thw) * dt])

    s, u = 0.0, np.array([yt, ytp])
    h = min(0.1, 0.01 / max(seglen, 1e-12))
    k1 = deriv(s, u)
    while s < 1.0:
        h = min(h, 1.0 - s)
        ks = [k1]
        for i in range(1, 7):
            ui = u + h * sum(c * k for c, k in zip(_DP_A[i], ks))
            ks.append(deriv(s + _DP_C[i] * h, ui))
        u5 = u + h * sum(c * k for c, k in zip(_DP_B5, ks) if c != 0.0)
        u4 = u + h * sum(c * k for c, k in zip(_DP_B4, ks))
        scale = tol * (1.0 + np.abs(u5))
        err = float(np.max(np.abs(u5 - u4) / scale))
        if err <= 1.0:
            s += h
            u = u5
            k1 = ks[-1]          # FSAL
            t = tloc(s)
            yg, ypg = _global_from_work(base, t, u[0], u[1])
            pt = CoveringPoint(a.rho + s * drho, a.phi + s * dphi, base)
            _pole_guard(pt.global_x(), yg)
            samples.append((pt, yg, ypg))
        h *= max(0.2, min(5.0, 0.9 * (1.0 / max(err, 1e-16)) ** 0.2))
        if h * seglen < 1e-13:
            raise StepUnderflow(f"step underflow at s={s} on segment "
                                f"({a.rho},{a.phi})->({b.rho},{b.phi})")
    return u[0], u[1], b


def fit_behavior(traj: Trajectory, point: str):
    """Power-law fit of the trajectory tail in the local variable.

    Fits ln f = ln C + e ln t with f = y, 1-y, t*y at 0, 1, infinity;
    returns (exponent, coefficient, confidence).
    """
    base = {"0": "at0", "1": "at1", "inf": "atInf"}[point]
    tail = [(pt, y) for pt, y, _ in traj.samples
            if pt.base == base and pt.rho < math.log(1e-2)]
    if len(tail) < 8:
        raise FitDegenerate(f"only {len(tail)} tail samples, need >= 8")
    L, G = [], []
    prev = None
    for pt, y in tail:
        t = pt.value
        f = y if point == "0" else (1.0 - y if point == "1" else t * y)
        if f == 0:
            raise FitDegenerate("profile hits zero in the tail")
        lf = cmath.log(f)
        if prev is not None:      # unwrap the fitted log continuously
            k = round((prev.imag - lf.imag) / (2.0 * math.pi))
            lf += 2j * math.pi * k
        prev = lf
        L.append(pt.rho + 1j * pt.phi)
        G.append(lf)
    A = np.vstack([np.ones(len(L)), np.array(L)]).T
    coef, *_ = np.linalg.lstsq(A, np.array(G), rcond=None)
    resid = np.array(G) - A @ coef
    confidence = float(np.sqrt(np.mean(np.abs(resid) ** 2)))
    if confidence > 0.5:
        raise FitDegenerate(
            f"tail is not power-law (fit rms {confidence:.3g}); "
            "oscillatory sine-form regime suspected")
    return coef[1], cmath.exp(coef[0]), confidence

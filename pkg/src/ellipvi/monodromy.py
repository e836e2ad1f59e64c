"""Generic-case connection problem: 2x2 monodromy, traces, dictionaries.

The three monodromy matrices are similarity-normalized exponentials built
from hypergeometric connection matrices.  Everything downstream (the trace
formulas, the recovery of s and of the leading coefficient a, the
(sigma, a) <-> (nu1, nu2) dictionary) works with traces only, so all
results are conjugation-invariant.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (ConsistencyError, DegenerateError, GammaPoleError,
                     PoleError, ZeroSigmaError)
from .specialfn import gamma_complex
from .elliptic_core import EllipticParams, ThetaVector

_BUF = 1e-8
_PI = math.pi


def _int_distance(z: complex) -> float:
    z = complex(z)
    return math.hypot(z.real - round(z.real), z.imag)


def assert_generic(sigma, theta: ThetaVector) -> None:
    """The genericity predicate: no Gamma argument may collide with Z."""
    named = {"sigma": sigma, "theta0": theta.theta0, "thetaX": theta.thetaX,
             "theta1": theta.theta1, "thetaInf": theta.thetaInf}
    for name, z in named.items():
        if _int_distance(z) < _BUF:
            raise DegenerateError(f"{name} = {z} is within {_BUF} of an integer")
    for s1 in (1, -1):
        for s2 in (1, -1):
            for s3 in (1, -1):
                z = (s1 * complex(sigma) + s2 * theta.theta1
                     + s3 * theta.thetaInf) / 2.0
                if _int_distance(z) < _BUF:
                    raise DegenerateError(
                        f"(±sigma±theta1±thetaInf)/2 = {z} near an integer")
                z = (s1 * complex(sigma) + s2 * theta.theta0
                     + s3 * theta.thetaX) / 2.0
                if _int_distance(z) < _BUF:
                    raise DegenerateError(
                        f"(±sigma±theta0±thetaX)/2 = {z} near an integer")


@dataclass(frozen=True)
class MonodromyData:
    theta: ThetaVector
    T0: complex      # tr(M0 Mx)
    T1: complex      # tr(M1 Mx)
    TInf: complex    # tr(M0 M1)

    def to_json(self) -> str:
        th = (self.theta.theta0, self.theta.thetaX,
              self.theta.theta1, self.theta.thetaInf)
        return json.dumps({
            "theta": [[complex(t).real, complex(t).imag] for t in th],
            "traces": [[complex(t).real, complex(t).imag]
                       for t in (self.T0, self.T1, self.TInf)]},
            sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MonodromyData":
        d = json.loads(text)
        th = [complex(re, im) for re, im in d["theta"]]
        tr = [complex(re, im) for re, im in d["traces"]]
        return cls(ThetaVector(*th), *tr)


@dataclass(frozen=True)
class SigmaA:
    sigma: complex
    a: complex
    point: str = "0"


def canonical_sigma(sigma: complex) -> complex:
    """Alias with 0 <= Re sigma <= 1, Im sigma >= 0 on the strip edges."""
    s = complex(sigma)
    re = s.real - 2.0 * math.floor(s.real / 2.0)   # into [0, 2)
    s = complex(re, s.imag)
    if s.real > 1.0:
        s = 2.0 - s
    if s.real in (0.0, 1.0) and s.imag < 0.0:
        s = complex(s.real, -s.imag) if s.real == 0.0 else 2.0 - s
    return s


def sigma_aliases(sigma: complex, nmax: int = 2):
    """All representations ±sigma+2n with |n| <= nmax."""
    out = []
    for n in range(-nmax, nmax + 1):
        out.append(sigma + 2 * n)
        out.append(-sigma + 2 * n)
    return out


def sigma_from_trace(T: complex) -> complex:
    """Solve 2cos(pi sigma) = T on the canonical strip."""
    w = complex(T) / 2.0
    sig = cmath.acos(w) / _PI
    return canonical_sigma(sig)


def _g(z: complex, name: str) -> complex:
    try:
        return gamma_complex(complex(z))
    except PoleError as exc:
        raise GammaPoleError(f"Gamma pole at {name} = {z}") from exc


def connection_C01(sigma, theta1, thetaInf) -> np.ndarray:
    a0 = (thetaInf + theta1 + sigma) / 2.0
    b0 = 1.0 + (-thetaInf + theta1 + sigma) / 2.0
    g0 = sigma + 1.0
    return np.array([
        [_g(g0 - a0 - b0, "g0-a0-b0") * _g(g0, "g0")
         / (_g(g0 - a0, "g0-a0") * _g(g0 - b0, "g0-b0")),
         _g(g0 - a0 - b0, "g0-a0-b0") * _g(2.0 - g0, "2-g0")
         / (_g(1.0 - a0, "1-a0") * _g(1.0 - b0, "1-b0"))],
        [_g(a0 + b0 - g0, "a0+b0-g0") * _g(g0, "g0")
         / (_g(a0, "a0") * _g(b0, "b0")),
         _g(a0 + b0 - g0, "a0+b0-g0") * _g(2.0 - g0, "2-g0")
         / (_g(a0 + 1.0 - g0, "a0+1-g0") * _g(b0 + 1.0 - g0, "b0+1-g0"))],
    ])


def _second_params(sigma, theta0, thetaX):
    a0 = (-sigma + theta0 + thetaX) / 2.0
    b0 = 1.0 + (sigma + theta0 + thetaX) / 2.0
    g0 = 1.0 + theta0
    return a0, b0, g0


def connection_Cinf0(sigma, theta0, thetaX) -> np.ndarray:
    a0, b0, g0 = _second_params(sigma, theta0, thetaX)
    e = cmath.exp
    return np.array([
        [e(-1j * _PI * a0) * _g(1 + a0 - b0, "1+a0-b0") * _g(1 - g0, "1-g0")
         / (_g(1 - b0, "1-b0") * _g(1 + a0 - g0, "1+a0-g0")),
         e(-1j * _PI * b0) * _g(1 + b0 - a0, "1+b0-a0") * _g(1 - g0, "1-g0")
         / (_g(1 - a0, "1-a0") * _g(1 + b0 - g0, "1+b0-g0"))],
        [e(1j * _PI * (g0 - 1 - a0)) * _g(1 + a0 - b0, "1+a0-b0")
         * _g(g0 - 1, "g0-1") / (_g(a0, "a0") * _g(g0 - b0, "g0-b0")),
         e(1j * _PI * (g0 - 1 - b0)) * _g(1 + b0 - a0, "1+b0-a0")
         * _g(g0 - 1, "g0-1") / (_g(b0, "b0") * _g(g0 - a0, "g0-a0"))],
    ])


def connection_Cinf1(sigma, theta0, thetaX) -> np.ndarray:
    a0, b0, g0 = _second_params(sigma, theta0, thetaX)
    e = cmath.exp
    return np.array([
        [_g(g0 - a0 - b0, "g0-a0-b0") * _g(1 + a0 - b0, "1+a0-b0")
         / (_g(1 - b0, "1-b0") * _g(g0 - b0, "g0-b0")),
         _g(g0 - a0 - b0, "g0-a0-b0") * _g(1 + b0 - a0, "1+b0-a0")
         / (_g(1 - a0, "1-a0") * _g(g0 - a0, "g0-a0"))],
        [e(1j * _PI * (g0 - a0 - b0)) * _g(a0 + b0 - g0, "a0+b0-g0")
         * _g(1 + a0 - b0, "1+a0-b0")
         / (_g(1 + a0 - g0, "1+a0-g0") * _g(a0, "a0")),
         e(1j * _PI * (g0 - a0 - b0)) * _g(a0 + b0 - g0, "a0+b0-g0")
         * _g(1 + b0 - a0, "1+b0-a0")
         / (_g(1 + b0 - g0, "1+b0-g0") * _g(b0, "b0"))],
    ])


def m_matrices(sigma, theta: ThetaVector, s: complex):
    if s == 0:
        raise DegenerateError("s must be nonzero")
    assert_generic(sigma, theta)
    D = np.diag([1.0, s / (1.0 + sigma)])

    def conj(C, th):
        B = C @ D
        E = np.diag([cmath.exp(1j * _PI * th), cmath.exp(-1j * _PI * th)])
        return np.linalg.solve(B, E @ B)

    m0 = conj(connection_Cinf0(sigma, theta.theta0, theta.thetaX), theta.theta0)
    mx = conj(connection_Cinf1(sigma, theta.theta0, theta.thetaX), theta.thetaX)
    C01 = connection_C01(sigma, theta.theta1, theta.thetaInf)
    E1 = np.diag([cmath.exp(1j * _PI * theta.theta1),
                  cmath.exp(-1j * _PI * theta.theta1)])
    m1 = np.linalg.solve(C01, E1 @ C01)
    return m0, mx, m1


def laurent_coefficients(sigma, theta: ThetaVector, s0: complex = 1.0):
    """F1..F4 of the trace formulas, fitted from three s-samples.

    tr(m1 m0) = F1/s + F2 + F3 s and
    tr(mx m1) = -e^{-i pi sigma} F1/s + F4 - e^{i pi sigma} F3 s;
    the cross-relations between the two fits are asserted.
    """
    svals = [0.5 * s0, s0, 2.0 * s0]
    t10, tx1 = [], []
    for s in svals:
        m0, mx, m1 = m_matrices(sigma, theta, s)
        t10.append(np.trace(m1 @ m0))
        tx1.append(np.trace(mx @ m1))
    V = np.array([[1.0 / s, 1.0, s] for s in svals])
    c10 = np.linalg.solve(V, np.array(t10))
    cx1 = np.linalg.solve(V, np.array(tx1))
    F1, F2, F3 = c10
    eip, eim = cmath.exp(1j * _PI * sigma), cmath.exp(-1j * _PI * sigma)
    scale = max(1.0, max(abs(c) for c in c10))
    if (abs(cx1[0] + eim * F1) > 1e-8 * scale
            or abs(cx1[2] + eip * F3) > 1e-8 * scale):
        raise ConsistencyError(
            "trace Laurent coefficients violate the cross-relations: "
            f"{cx1[0]} vs {-eim * F1}, {cx1[2]} vs {-eip * F3}")
    return F1, F2, F3, cx1[1]


def traces_from_params(sigma, theta: ThetaVector, s: complex) -> MonodromyData:
    m0, mx, m1 = m_matrices(sigma, theta, s)
    return MonodromyData(theta,
                         complex(np.trace(m0 @ mx)),
                         complex(np.trace(m1 @ mx)),
                         complex(np.trace(m0 @ m1)))


def s_from_traces(data: MonodromyData, sigma: complex) -> complex:
    """Recover s from the two s-dependent traces.

    Eliminating the linear-in-s terms from the trace Laurent expansions
    gives (e^{i pi sigma}-e^{-i pi sigma}) F1 / s = e^{i pi sigma} TInf
    + T1 - F4 - e^{i pi sigma} F2; s is the reciprocal.
    """
    F1, F2, F3, F4 = laurent_coefficients(sigma, data.theta)
    eip, eim = cmath.exp(1j * _PI * sigma), cmath.exp(-1j * _PI * sigma)
    if abs((eip - eim) * F1) < 1e-12:
        raise DegenerateError(f"degenerate trace system, F1 = {F1}")
    num = eip * data.TInf + data.T1 - F4 - eip * F2
    if abs(num) < 1e-12:
        raise DegenerateError("degenerate trace system, 1/s numerator ~ 0")
    return (eip - eim) * F1 / num


def a_from_s(sigma, theta: ThetaVector, s: complex) -> complex:
    if abs(complex(sigma)) < 1e-12:
        raise ZeroSigmaError("sigma = 0 has no leading power law")
    if s == 0:
        raise DegenerateError("s must be nonzero")
    t0, tx = theta.theta0, theta.thetaX
    return ((t0 + tx + sigma) * (-t0 + tx + sigma)
            * (t0 + tx - sigma) * (t0 - tx + sigma)
            / (16.0 * sigma ** 3 * s))


def _cos(z):
    return cmath.cos(_PI * z)


def transform_to_x1(data: MonodromyData) -> MonodromyData:
    th = data.theta
    newT = (4.0 * (_cos(th.thetaInf) * _cos(th.thetaX)
                   + _cos(th.theta0) * _cos(th.theta1))
            - (data.TInf + data.T0 * data.T1))
    return MonodromyData(ThetaVector(th.theta1, th.thetaX, th.theta0,
                                     th.thetaInf),
                         data.T1, data.T0, newT)


def transform_to_xinf(data: MonodromyData) -> MonodromyData:
    th = data.theta
    newT = (4.0 * (_cos(th.thetaInf) * _cos(th.theta1)
                   + _cos(th.thetaX) * _cos(th.theta0))
            - (data.T0 + data.T1 * data.TInf))
    return MonodromyData(ThetaVector(th.theta0, th.theta1, th.thetaX,
                                     th.thetaInf),
                         data.TInf, data.T1, newT)


def sigma_a_to_nu(sa: SigmaA, branch: str = "low") -> EllipticParams:
    """Dictionary (sigma, a) -> (nu1, nu2); nu1 has a 2k ambiguity.

    `a` is the coefficient of the leading power x^{nu2} of y at the point;
    the point-1 chart reads off e^{-i pi nu1} instead of e^{i pi nu1}.
    """
    sigma, a = sa.sigma, sa.a
    if branch == "low":
        nu2 = 1.0 - sigma
    elif branch == "high":
        nu2 = 1.0 + sigma
    else:
        raise ValueError(f"unknown branch {branch!r}")
    rhs = -4.0 * a * 16.0 ** (nu2 - 1.0)
    nu1 = cmath.log(rhs) / (1j * _PI)
    if sa.point == "1":
        nu1 = -nu1
    params = EllipticParams(nu1=nu1, nu2=nu2, point=sa.point,
                            case="generic-a" if branch == "low"
                            else "generic-b")
    return params


def nu_to_sigma_a(params: EllipticParams) -> SigmaA:
    """Inverse dictionary; returns the alias with sigma = 1 - nu2."""
    nu1, nu2 = params.nu1, params.nu2
    if params.point == "1":
        nu1 = -nu1
    a = -0.25 * cmath.exp(1j * _PI * nu1) * 16.0 ** (1.0 - nu2)
    return SigmaA(1.0 - nu2, a, params.point)


def lemmaA2_matrices(sigma, theta: ThetaVector, r: complex, s: complex):
    """(Lambda, A0, Ax, A1, G0hat) of the leading Fuchsian system."""
    if abs(complex(sigma)) < 1e-12:
        raise ZeroSigmaError("sigma = 0")
    if abs(complex(theta.thetaInf)) < 1e-12 or r == 0 or s == 0:
        raise DegenerateError("need thetaInf != 0 and r, s != 0")
    a2 = (theta.thetaInf + theta.theta1 + sigma) / 2.0
    b2 = (-theta.thetaInf + theta.theta1 + sigma) / 2.0
    g2 = 1.0 + sigma

    def block(al, be, ga, par):
        return np.array([
            [al * (be + 1 - ga) / (al - be), par],
            [al * be * (be + 1 - ga) * (ga - 1 - al) / ((al - be) ** 2 * par),
             be * (ga - al - 1) / (al - be)]])

    def coblock(al, be, ga, par, lower):
        return np.array([
            [al * (ga - al - 1) / (al - be), -par],
            [-lower, be * (be + 1 - ga) / (al - be)]])

    Lam0 = block(a2, b2, g2, r)
    Lam = Lam0 + (sigma / 2.0) * np.eye(2)
    A1 = coblock(a2, b2, g2, r, Lam[1, 0]) + (theta.theta1 / 2.0) * np.eye(2)
    w = a2 * (1 + b2 - g2) / (b2 - a2)
    G0 = np.array([[1.0, 1.0],
                   [w / r, (w + 1.0 - g2) / r]])
    a1 = (-sigma + theta.theta0 + theta.thetaX) / 2.0
    b1 = (sigma + theta.theta0 + theta.thetaX) / 2.0
    g1 = 1.0 + theta.theta0
    M0 = block(a1, b1, g1, s)
    A0 = G0 @ M0 @ np.linalg.inv(G0) + (theta.theta0 / 2.0) * np.eye(2)
    Mx = coblock(a1, b1, g1, s, M0[1, 0])
    Ax = G0 @ Mx @ np.linalg.inv(G0) + (theta.thetaX / 2.0) * np.eye(2)
    return Lam, A0, Ax, A1, G0

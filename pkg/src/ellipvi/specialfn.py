"""Special functions: complex Gamma/digamma, the hypergeometric pair F, F1,
half-periods at the three critical points, and the modular correction factor h.

All branch-sensitive powers go through CoveringPoint.power, which works on the
universal cover of the punctured plane: a point is stored as
(log-modulus, argument) so x^c is single-valued for every complex c.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import DomainError, GammaPoleError, PoleError

LN16 = math.log(16.0)

_BASES = ("at0", "at1", "atInf")


@dataclass(frozen=True)
class CoveringPoint:
    """A point on the universal cover of C \\ {0} in a local variable.

    base names the local variable the pair refers to: x (at0), 1-x (at1)
    or 1/x (atInf). rho = ln|t|, phi = arg t for the local variable t.
    """

    rho: float
    phi: float
    base: str = "at0"

    def __post_init__(self):
        if self.base not in _BASES:
            raise ValueError(f"unknown base tag {self.base!r}")

    @classmethod
    def from_complex(cls, z: complex, base: str = "at0", winding: int = 0) -> "CoveringPoint":
        z = complex(z)
        if z == 0:
            raise ValueError("0 has no covering representative")
        return cls(math.log(abs(z)), cmath.phase(z) + 2.0 * math.pi * winding, base)

    @property
    def value(self) -> complex:
        """The underlying complex number of the local variable."""
        return cmath.exp(complex(self.rho, self.phi))

    @property
    def log(self) -> complex:
        return complex(self.rho, self.phi)

    @property
    def modulus(self) -> float:
        return math.exp(self.rho)

    def power(self, c: complex) -> complex:
        """t^c, single-valued on the cover."""
        return cmath.exp(complex(c) * complex(self.rho, self.phi))

    def global_x(self) -> complex:
        """The global x corresponding to this local point."""
        t = self.value
        if self.base == "at0":
            return t
        if self.base == "at1":
            return 1.0 - t
        return 1.0 / t


@dataclass(frozen=True)
class PeriodPair:
    """Half-periods at one critical point.

    omega1/omega2 follow the connection-formula definitions verbatim.  tau is
    the modular parameter of the expansion frame: at x=1 the verbatim pair is
    negatively oriented, so tau is stored as -omega2/omega1 there (the lattice
    is unchanged) keeping Im tau > 0 throughout.
    """

    omega1: complex
    omega2: complex
    tau: complex
    point: str = "at0"


class SeriesValue(NamedTuple):
    """Partial sum of a power series plus a crude tail estimate."""

    value: complex
    tail: float

    def __complex__(self) -> complex:
        return self.value


# --- Gamma and digamma ---------------------------------------------------

# Lanczos coefficients, g = 7.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _near_nonpositive_int(z: complex, tol: float = 1e-12) -> bool:
    if z.real > 0.5:
        return False
    n = round(z.real)
    return n <= 0 and abs(z - n) < tol


def gamma_complex(z: complex) -> complex:
    """Gamma(z) via the Lanczos rational approximation with reflection."""
    z = complex(z)
    if _near_nonpositive_int(z):
        raise GammaPoleError(f"Gamma pole at z = {z}")
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * gamma_complex(1.0 - z))
    z -= 1.0
    a = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        a += _LANCZOS[i] / (z + i)
    t = z + 7.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * a


# Bernoulli numbers B2..B14 for the digamma asymptotic series.
_BERN = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)


def digamma(z: complex) -> complex:
    """psi(z) by recurrence shift to Re z > 10 and the asymptotic series."""
    z = complex(z)
    if _near_nonpositive_int(z):
        raise GammaPoleError(f"digamma pole at z = {z}")
    if z.real < 0:
        # psi(z) = psi(1-z) - pi cot(pi z)
        return digamma(1.0 - z) - math.pi / cmath.tan(math.pi * z)
    acc = 0.0 + 0.0j
    while z.real < 10.0:
        acc -= 1.0 / z
        z += 1.0
    out = cmath.log(z) - 0.5 / z
    zi2 = 1.0 / (z * z)
    p = zi2
    for k, b in enumerate(_BERN, start=1):
        out -= b / (2 * k) * p
        p *= zi2
    return out + acc


# --- the hypergeometric pair F, F1 ---------------------------------------


@lru_cache(maxsize=None)
def f_coefficients(order: int) -> tuple[float, ...]:
    """Taylor coefficients of F = F(1/2,1/2,1;x): [(1/2)_n / n!]^2."""
    out = [1.0]
    for n in range(1, order + 1):
        out.append(out[-1] * ((n - 0.5) / n) ** 2)
    return tuple(out)


@lru_cache(maxsize=None)
def f1_coefficients(order: int) -> tuple[float, ...]:
    """Taylor coefficients of F1: those of F times 2[psi(n+1/2) - psi(n+1)]."""
    f = f_coefficients(order)
    out = []
    t = -4.0 * math.log(2.0)  # 2[psi(1/2) - psi(1)]
    for n in range(order + 1):
        if n > 0:
            t += 2.0 * (1.0 / (n - 0.5) - 1.0 / n)
        out.append(f[n] * t)
    return tuple(out)


def _check_disc(x: CoveringPoint) -> None:
    if x.rho >= 0.0:
        raise DomainError(f"|t| = {x.modulus:.6g} >= 1: outside the series disc")


def hyper_F(x: CoveringPoint, order: int = 64) -> SeriesValue:
    """F(1/2,1/2,1;t) partial sum through n = order with a tail estimate."""
    _check_disc(x)
    t = x.value
    coeffs = f_coefficients(order)
    s = 0.0 + 0.0j
    p = 1.0 + 0.0j
    last = 0.0
    for c in coeffs:
        term = c * p
        s += term
        last = abs(term)
        p *= t
    return SeriesValue(s, last / (1.0 - x.modulus))


def hyper_F1(x: CoveringPoint, order: int = 64) -> SeriesValue:
    """The logarithm-free companion series F1 with a tail estimate."""
    _check_disc(x)
    t = x.value
    coeffs = f1_coefficients(order)
    s = 0.0 + 0.0j
    p = 1.0 + 0.0j
    last = 0.0
    for c in coeffs:
        term = c * p
        s += term
        last = abs(term)
        p *= t
    return SeriesValue(s, last / (1.0 - x.modulus))


def periods(x: CoveringPoint, point: str | None = None, order: int = 64) -> PeriodPair:
    """Half-periods at the requested critical point.

    x must be the local variable of that point (x, 1-x or 1/x) on its cover.
    """
    point = point or x.base
    if point != x.base:
        raise DomainError(f"covering point is {x.base}, periods requested at {point}")
    _check_disc(x)
    F = hyper_F(x, order).value
    F1 = hyper_F1(x, order).value
    g = F * x.log + F1
    if point == "at0":
        w1 = 0.5 * math.pi * F
        w2 = -0.5j * g
    elif point == "at1":
        w1 = 0.5j * math.pi * F
        w2 = -0.5 * g
    else:  # atInf: local t = 1/x, global prefactor x^(-1/2) = t^(1/2)
        root = x.power(0.5)
        w1 = 0.5 * math.pi * root * F
        w2 = -0.5j * root * g
    tau = w2 / w1
    if tau.imag < 0.0:
        tau = -tau
    return PeriodPair(w1, w2, tau, point)


def h_factor(x: CoveringPoint, C: complex) -> complex:
    """h(x)^C with h = exp(F1/F + 4 ln 2); satisfies e^{i pi C tau} = h^C (x/16)^C."""
    _check_disc(x)
    if C == 0:
        return 1.0 + 0.0j
    F = hyper_F(x).value
    F1 = hyper_F1(x).value
    return cmath.exp(complex(C) * (F1 / F + 4.0 * math.log(2.0)))

"""Weierstrass p-function on the family of lattices attached to the equation.

The elliptic curve is w^2 = 4(z - e1)(z - e2)(z - e3) with
e1 = (2-x)/3, e2 = (2x-1)/3, e3 = -(1+x)/3, so e1-e3 = 1, e2-e3 = x.
Evaluation uses the trigonometric q-series, rewritten in exponentials that
stay bounded for complex arguments, after reducing the argument to the
fundamental cell of the period lattice 2*omega1 Z + 2*omega2 Z.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import LatticePoleError, StripError
from .specialfn import CoveringPoint, PeriodPair, periods

_NEAR_LATTICE = 1e-8


@dataclass(frozen=True)
class LatticeFrame:
    """Half-periods plus the curve data at a fixed x.

    omega2_q is the second half-period used by the q-series: it equals
    omega2 up to sign, chosen so Im(omega2_q/omega1) > 0.
    """

    x: complex
    omega1: complex
    omega2: complex
    omega2_q: complex
    tau: complex

    @classmethod
    def from_point(cls, pt: CoveringPoint, order: int = 64) -> "LatticeFrame":
        pp = periods(pt, order=order)
        return cls.from_periods(pt.global_x(), pp)

    @classmethod
    def from_periods(cls, x: complex, pp: PeriodPair) -> "LatticeFrame":
        w1, w2 = pp.omega1, pp.omega2
        t = w2 / w1
        w2q = w2 if t.imag > 0 else -w2
        return cls(complex(x), w1, w2, w2q, t if t.imag > 0 else -t)

    @property
    def e1(self) -> complex:
        return (2.0 - self.x) / 3.0

    @property
    def e2(self) -> complex:
        return (2.0 * self.x - 1.0) / 3.0

    @property
    def e3(self) -> complex:
        return -(1.0 + self.x) / 3.0

    @property
    def g2(self) -> complex:
        return (4.0 / 3.0) * (1.0 - self.x + self.x * self.x)

    @property
    def g3(self) -> complex:
        return (4.0 / 27.0) * (self.x - 2.0) * (2.0 * self.x - 1.0) * (1.0 + self.x)

    @property
    def q(self) -> complex:
        """Nome squared: exp(2 i pi tau)."""
        return cmath.exp(2j * math.pi * self.tau)

    def reduce(self, z: complex) -> complex:
        """Translate z by the lattice into the cell |a|,|b| <= 1 of
        z = a*omega1 + b*omega2_q; raises on a lattice point."""
        zeta = z / self.omega1
        b = zeta.imag / self.tau.imag
        a = zeta.real - b * self.tau.real
        a -= 2.0 * round(a / 2.0)
        b -= 2.0 * round(b / 2.0)
        if max(abs(a), abs(b)) < _NEAR_LATTICE:
            raise LatticePoleError(f"argument within {_NEAR_LATTICE} of the lattice")
        return (a + b * self.tau) * self.omega1


def _exp_pieces(frame: LatticeFrame, z: complex, nterms: int):
    """Bounded exponentials for the q-series at reduced argument z.

    Returns (c, s, E, Q) with c = pi/(2 omega1), w = c*z, s = +-1 chosen so
    E = exp(2 i s w) has |E| <= 1, and Q = exp(2 i pi tau).
    """
    c = math.pi / (2.0 * frame.omega1)
    w = c * z
    s = 1.0 if w.imag <= 0.0 else -1.0
    E = cmath.exp(2j * s * w)
    Q = frame.q
    if abs(Q / E) >= 1.0 or abs(Q * E) >= 1.0:
        raise StripError("argument outside the convergence strip after reduction")
    return c, s, E, Q


def wp(z: complex, frame: LatticeFrame, nterms: int = 40) -> complex:
    """The p-function of the lattice 2*omega1 Z + 2*omega2 Z at z."""
    z = frame.reduce(complex(z))
    c, _s, E, Q = _exp_pieces(frame, z, nterms)
    # 1/sin^2 w = -4E/(1-E)^2, invariant under E -> 1/E
    total = -1.0 / 3.0 - 4.0 * E / (1.0 - E) ** 2
    P1, P2 = Q * E, Q / E
    p1 = p2 = qn = 1.0 + 0.0j
    for n in range(1, nterms + 1):
        p1 *= P1
        p2 *= P2
        qn *= Q
        total += 8.0 * n * (qn - 0.5 * (p1 + p2)) / (1.0 - qn)
    return c * c * total


def wp_prime(z: complex, frame: LatticeFrame, nterms: int = 40) -> complex:
    """d/dz of wp at z."""
    z = frame.reduce(complex(z))
    c, s, E, Q = _exp_pieces(frame, z, nterms)
    cot = s * 1j * (E + 1.0) / (E - 1.0)
    inv_sin2 = -4.0 * E / (1.0 - E) ** 2
    total = -2.0 * cot * inv_sin2
    P1, P2 = Q * E, Q / E
    p1 = p2 = qn = 1.0 + 0.0j
    for n in range(1, nterms + 1):
        p1 *= P1
        p2 *= P2
        qn *= Q
        # Q^n sin(2nw) = s (P1^n - P2^n) / (2i)
        total += 16.0 * n * n * (s * (p1 - p2) / 2j) / (1.0 - qn)
    return c ** 3 * total


def wp_du(u: complex, frame: LatticeFrame,
          shift: tuple[int, int, int] = (0, 0, 0), nterms: int = 40) -> complex:
    """d/du of wp(u/2 + eps1*omega1 + (eps2 + 2 N2)*omega2)."""
    eps1, eps2, n2 = shift
    z = u / 2.0 + eps1 * frame.omega1 + (eps2 + 2 * n2) * frame.omega2
    return 0.5 * wp_prime(z, frame, nterms)

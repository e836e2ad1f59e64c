"""Core engine: the phase correction v(x) as a triple power series.

The transcendent is y = wp(u/2; omega1, omega2) + (1+x)/3 with
u = 2 nu1 omega1 + 2 nu2 omega2 + 2 v(x).  v solves, in D = x d/dx,

    D^2 v = x (Dv + v/4)/(1-x) + bracket / (4 (1-x)^2),

where bracket = 2a P(0,0) - 2b P(0,1) + 2g P(1,0) + (1-2d) P(1,1) and
P(e1,e2) is the u-derivative of wp at u/2 + e1*omega1 + (e2+2N2)*omega2.
Each P expands into exponential sums in two dominant carriers

    Zb = exp(-i pi nu1) (x/16)^pb,   Zc = exp(+i pi nu1) (x/16)^pc,

so v = sum a_n x^n + sum b_nm x^n Zb^m + sum c_nm x^n Zc^m.  The
coefficients are rational in nu2 alone and are found here by a degree-
triangular recursion (divide the right side monomial-wise by mu^2 with
mu = n + mb*pb + mc*pc).
"""
from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass

from .errors import (CaseError, ConvergenceWarning, DomainError,
                     ResonanceError, SingularArgumentError)
from .specialfn import (LN16, CoveringPoint, PeriodPair, f1_coefficients,
                        f_coefficients)
from .weierstrass import LatticeFrame, wp, wp_du

EPS_INT = 1e-8
_ZERO_TOL = 1e-12

_CASES = ("generic-a", "generic-b", "special-beta", "special-alphagamma", "picard")
_POINT_BASE = {"0": "at0", "1": "at1", "inf": "atInf"}


# --- truncated Taylor helpers (lists indexed by power of x) ---------------

def _pmul(a, b, D):
    out = [0j] * (D + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(min(len(b), D + 1 - i)):
            out[i + j] += ai * b[j]
    return out


def _pinv(a, D):
    out = [0j] * (D + 1)
    out[0] = 1.0 / a[0]
    for n in range(1, D + 1):
        s = 0j
        for k in range(1, min(n, len(a) - 1) + 1):
            s += a[k] * out[n - k]
        out[n] = -s * out[0]
    return out


def _pexp(f, D):
    """exp of a series with zero constant term."""
    out = [0j] * (D + 1)
    out[0] = 1.0
    for n in range(1, D + 1):
        s = 0j
        for k in range(1, min(n, len(f) - 1) + 1):
            s += k * f[k] * out[n - k]
        out[n] = s / n
    return out


def _pscale(a, c):
    return [c * x for x in a]


# --- parameter containers -------------------------------------------------

def _canonical_sqrt(z: complex) -> complex:
    w = cmath.sqrt(z)
    if w.real < 0 or (w.real == 0 and w.imag < 0):
        w = -w
    return w


@dataclass(frozen=True)
class ThetaVector:
    """The four exponents (theta0, thetaX, theta1, thetaInf)."""

    theta0: complex
    thetaX: complex
    theta1: complex
    thetaInf: complex

    @classmethod
    def from_abcd(cls, alpha: complex, beta: complex,
                  gamma: complex, delta: complex) -> "ThetaVector":
        return cls(
            _canonical_sqrt(-2.0 * beta),
            _canonical_sqrt(1.0 - 2.0 * delta),
            _canonical_sqrt(2.0 * gamma),
            1.0 + _canonical_sqrt(2.0 * alpha),
        )

    @property
    def alpha(self) -> complex:
        return (self.thetaInf - 1.0) ** 2 / 2.0

    @property
    def beta(self) -> complex:
        return -self.theta0 ** 2 / 2.0

    @property
    def gamma(self) -> complex:
        return self.theta1 ** 2 / 2.0

    @property
    def delta(self) -> complex:
        return (1.0 - self.thetaX ** 2) / 2.0


def reflect_theta(theta: ThetaVector, point: str) -> ThetaVector:
    """theta of the work-frame equation at the given critical point.

    x -> 1-x, y -> 1-y swaps theta0 and theta1; x -> 1/x, y -> y/x swaps
    thetaX and theta1.
    """
    if point == "0":
        return theta
    if point == "1":
        return ThetaVector(theta.theta1, theta.thetaX, theta.theta0, theta.thetaInf)
    if point == "inf":
        return ThetaVector(theta.theta0, theta.theta1, theta.thetaX, theta.thetaInf)
    raise ValueError(f"unknown point {point!r}")


@dataclass(frozen=True)
class EllipticParams:
    nu1: complex
    nu2: complex
    point: str = "0"
    branchN: int = 0
    case: str = "generic-a"

    def __post_init__(self):
        if self.point not in _POINT_BASE:
            raise ValueError(f"unknown point {self.point!r}")
        if self.case not in _CASES:
            raise CaseError(f"unknown case {self.case!r}")

    @classmethod
    def normalized(cls, nu1: complex, nu2: complex, point: str = "0",
                   case: str | None = None) -> "EllipticParams":
        """Translate nu2 by an even integer into 0 <= Re nu2 < 2."""
        nu1, nu2 = complex(nu1), complex(nu2)
        n = math.floor(nu2.real / 2.0)
        nu2n = nu2 - 2 * n
        if case is None:
            case = "generic-a" if nu2n.real < 1.0 else "generic-b"
        return cls(nu1, nu2n, point, n, case)

    @property
    def work_nu1(self) -> complex:
        """nu1 of the work frame (sign flipped at the point x = 1)."""
        return -self.nu1 if self.point == "1" else self.nu1


def case_exponents(case: str, nu2: complex):
    """(pb, pc, s): carrier exponents and the integer with Zb*Zc = (x/16)^s."""
    if case in ("generic-a", "picard"):
        return 1.0 - nu2, nu2, 1
    if case == "generic-b":
        return 2.0 - nu2, nu2 - 1.0, 1
    if case == "special-beta":
        return 2.0 - nu2, nu2, 2
    if case == "special-alphagamma":
        return 1.0 - nu2, 1.0 + nu2, 2
    raise CaseError(f"unknown case {case!r}")


def _case_configs(case: str, nu2: complex):
    """Per-shift data (ja, ca, jb, cb, eps2): the dominant variables are
    A = (-1)^e1 Zc (x/16)^ja h^ca E+ and B = (-1)^e1 Zb (x/16)^jb h^cb E-."""
    if case in ("generic-a", "picard"):
        return [(0, nu2, 1, 2.0 - nu2, 0), (1, 1.0 + nu2, 0, 1.0 - nu2, 1)]
    if case == "generic-b":
        return [(1, nu2, 0, 2.0 - nu2, 0), (0, nu2 - 1.0, 1, 3.0 - nu2, 1)]
    if case == "special-beta":
        return [(0, nu2, 0, 2.0 - nu2, 0)]
    if case == "special-alphagamma":
        return [(0, 1.0 + nu2, 0, 1.0 - nu2, 1)]
    raise CaseError(f"unknown case {case!r}")


def weight_configs(theta: ThetaVector, case: str):
    """(eps1, eps2, weight) triples of the bracket, filtered by case."""
    all_w = [(0, 0, 2.0 * theta.alpha), (1, 0, 2.0 * theta.gamma),
             (0, 1, -2.0 * theta.beta), (1, 1, 1.0 - 2.0 * theta.delta)]
    if case == "picard":
        for _, _, w in all_w:
            if abs(w) > _ZERO_TOL:
                raise CaseError("picard case requires alpha=beta=gamma=1-2delta=0")
        return []
    if case == "special-beta":
        for e1, e2, w in all_w:
            if e2 == 1 and abs(w) > _ZERO_TOL:
                raise CaseError("special-beta requires beta = 1-2delta = 0")
        return [t for t in all_w if t[1] == 0]
    if case == "special-alphagamma":
        for e1, e2, w in all_w:
            if e2 == 0 and abs(w) > _ZERO_TOL:
                raise CaseError("special-alphagamma requires alpha = gamma = 0")
        return [t for t in all_w if t[1] == 1]
    return all_w


def validate_params(params: EllipticParams) -> None:
    """Real-nu2 admissibility windows of each case (after translation)."""
    nu2 = complex(params.nu2)
    if abs(nu2.imag) >= EPS_INT:
        return
    r = nu2.real
    windows = {
        "generic-a": (0.0, 1.0), "generic-b": (1.0, 2.0),
        "special-beta": (0.0, 2.0), "special-alphagamma": (-1.0, 1.0),
    }
    if params.case not in windows:
        return
    lo, hi = windows[params.case]
    if not (lo + EPS_INT < r < hi - EPS_INT):
        raise ResonanceError(
            f"real nu2 = {r} outside ({lo}, {hi}) for case {params.case}")


# --- triple series --------------------------------------------------------

class TripleSeries:
    """Finite sum of coeff * x^n * Zb^mb * Zc^mc with min(mb, mc) = 0.

    Multiplication reduces Zb*Zc = (x/16)^s.  Truncation is by total
    degree n + mb + mc <= D.
    """

    __slots__ = ("data", "D", "s")

    def __init__(self, D: int, s: int, data: dict | None = None):
        self.D = D
        self.s = s
        self.data = data if data is not None else {}

    def copy(self) -> "TripleSeries":
        return TripleSeries(self.D, self.s, dict(self.data))

    def scale(self, c: complex) -> "TripleSeries":
        return TripleSeries(self.D, self.s, {k: c * v for k, v in self.data.items()})

    def add(self, other: "TripleSeries", c: complex = 1.0) -> "TripleSeries":
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, 0j) + c * v
        return TripleSeries(self.D, self.s, out)

    def add_inplace(self, other: "TripleSeries", c: complex = 1.0) -> None:
        d = self.data
        for k, v in other.data.items():
            d[k] = d.get(k, 0j) + c * v

    def mul(self, other: "TripleSeries") -> "TripleSeries":
        D, s = self.D, self.s
        red = 16.0 ** (-s)
        out: dict = {}
        for (n1, b1, c1), v1 in self.data.items():
            for (n2, b2, c2), v2 in other.data.items():
                bb, cc = b1 + b2, c1 + c2
                k = bb if bb < cc else cc
                n = n1 + n2 + k * s
                bb -= k
                cc -= k
                if n + bb + cc > D:
                    continue
                key = (n, bb, cc)
                out[key] = out.get(key, 0j) + v1 * v2 * red ** k
        return TripleSeries(D, s, out)

    def mul_poly(self, poly) -> "TripleSeries":
        D = self.D
        out: dict = {}
        for (n, b, c), v in self.data.items():
            room = D - (n + b + c)
            for j in range(min(len(poly) - 1, room) + 1):
                p = poly[j]
                if p == 0:
                    continue
                key = (n + j, b, c)
                out[key] = out.get(key, 0j) + v * p
        return TripleSeries(D, self.s, out)

    def shift_x(self, k: int) -> "TripleSeries":
        D = self.D
        out = {}
        for (n, b, c), v in self.data.items():
            if n + k + b + c <= D:
                out[(n + k, b, c)] = v
        return TripleSeries(D, self.s, out)

    def deriv(self, pb: complex, pc: complex) -> "TripleSeries":
        """The operator D = x d/dx: multiply each monomial by its exponent."""
        return TripleSeries(self.D, self.s, {
            (n, b, c): (n + b * pb + c * pc) * v
            for (n, b, c), v in self.data.items()})

    def prune(self, tol: float = 0.0) -> "TripleSeries":
        return TripleSeries(self.D, self.s,
                            {k: v for k, v in self.data.items() if abs(v) > tol})

    def __bool__(self) -> bool:
        return bool(self.data)


# --- right-hand-side engine ----------------------------------------------

class _Engine:
    """Precomputed data for the recursion at fixed (theta-work, nu2, case)."""

    def __init__(self, theta: ThetaVector, params: EllipticParams, maxDegree: int):
        D = self.D = maxDegree
        self.case = params.case
        nu2 = self.nu2 = complex(params.nu2)
        self.pb, self.pc, self.s = case_exponents(params.case, nu2)
        F = list(f_coefficients(D))
        F1 = list(f1_coefficients(D))
        self.Finv = _pinv(F, D)
        Fm3 = _pmul(_pmul(self.Finv, self.Finv, D), self.Finv, D)
        ell = _pmul(F1, self.Finv, D)
        ell[0] = 0.0  # F1/F + 4 ln 2 vanishes at x = 0
        self.inv1mx = [1.0 + 0j] * (D + 1)
        # -i F^{-3} / (1-x)^2  (the -4i of the wp series over the 4 of the ODE)
        pref = _pscale(_pmul(Fm3, _pmul(self.inv1mx, self.inv1mx, D), D), -1j)
        # nome squared as a plain x-series: qt = h^2 (x/16)^2
        h2 = _pexp(_pscale(ell, 2.0), D)
        qt = [0j] * (D + 1)
        for i in range(min(len(h2), D - 1)):
            qt[i + 2] = h2[i] / 256.0

        weights = weight_configs(theta, params.case)
        by_eps2 = {0: [0j, 0j], 1: [0j, 0j]}
        for e1, e2, w in weights:
            by_eps2[e2][e1] += w

        # v enters only through E(+-k) = exp(+-2ik v/F) = sum_j (+-k)^j f^j/j!
        # with f = 2i v / F; regroup the whole bracket as sum_j G[j] * f^j/j!.
        G = [TripleSeries(D, self.s) for _ in range(D + 1)]
        for ja, ca, jb, cb, e2 in _case_configs(params.case, nu2):
            we0, we1 = by_eps2[e2]
            if we0 == 0 and we1 == 0:
                continue
            ha = _pexp(_pscale(ell, ca), D)
            hb = _pexp(_pscale(ell, cb), D)
            a0 = TripleSeries(D, self.s, {
                (ja + i, 0, 1): ha[i] * 16.0 ** (-ja)
                for i in range(D - ja) if ha[i] != 0})
            b0 = TripleSeries(D, self.s, {
                (jb + i, 1, 0): hb[i] * 16.0 ** (-jb)
                for i in range(D - jb) if hb[i] != 0})
            apow, bpow, abpow = [None, a0], [None, b0], [None, a0.mul(a0).mul(b0)]
            for _ in range(2, D + 1):
                apow.append(apow[-1].mul(a0))
                bpow.append(bpow[-1].mul(b0))
                abpow.append(abpow[-1].mul(abpow[1]))
            pa, pbn = [None], [None]
            qn = [1.0 + 0j]
            for n in range(1, D + 1):
                qn = _pmul(qn, qt, D)
                one_m = [-x for x in qn]
                one_m[0] += 1.0
                invq = _pinv(one_m, D)
                pa.append(abpow[n].mul_poly(invq))
                pbn.append(bpow[n].mul_poly(invq))
            for j in range(D + 1):
                for k in range(1, D + 1):
                    wk = we0 + we1 * (-1.0) ** k
                    if wk != 0 and apow[k]:
                        G[j].add_inplace(apow[k], wk * float(k) ** (2 + j))
                    wn = wk
                    if wn != 0:
                        if pa[k]:
                            G[j].add_inplace(pa[k], wn * float(k) ** (2 + j))
                        if pbn[k]:
                            G[j].add_inplace(pbn[k], -wn * float(k) ** 2 * float(-k) ** j)
        self.G = [g.mul_poly(pref).prune() for g in G]

    def rhs(self, v: TripleSeries) -> TripleSeries:
        """Right side of D^2 v = x(Dv + v/4)/(1-x) + bracket/(4(1-x)^2)."""
        out = v.deriv(self.pb, self.pc).add(v, 0.25).shift_x(1).mul_poly(self.inv1mx)
        out.add_inplace(self.G[0])
        if v:
            f = v.mul_poly(self.Finv).scale(2j)
            fj = f
            j = 1
            while fj and j <= self.D:
                out.add_inplace(fj.mul(self.G[j]))
                j += 1
                fj = fj.mul(f).scale(1.0 / j)
        return out

    def solve(self) -> TripleSeries:
        pb, pc = self.pb, self.pc
        gaps = [1.0]
        for g in self.G:
            for (n, b, c) in g.data:
                gaps.append(max((n + b * pb + c * pc).real, 0.02))
        g0 = min(gaps)
        wmax = self.D * max(1.0, abs(pb.real), abs(pc.real)) + 2.0
        maxit = min(500, int(wmax / g0) + 6)
        v = TripleSeries(self.D, self.s)
        for _ in range(maxit):
            r = self.rhs(v)
            data = {}
            for key, val in r.data.items():
                n, b, c = key
                mu = n + b * pb + c * pc
                if abs(mu) < EPS_INT:
                    raise ResonanceError(
                        f"exponent mu = {mu} for monomial {key} within "
                        f"{EPS_INT} of zero (nu2 = {self.nu2})")
                data[key] = val / (mu * mu)
            vn = TripleSeries(self.D, self.s, data)
            scale = 1.0 + max((abs(x) for x in v.data.values()), default=0.0)
            delta = 0.0
            for k in set(v.data) | set(vn.data):
                delta = max(delta, abs(v.data.get(k, 0j) - vn.data.get(k, 0j)))
            v = vn
            if delta < 1e-14 * scale:
                return v
        warnings.warn("coefficient recursion did not stabilize; "
                      "results may be inaccurate", ConvergenceWarning)
        return v


@dataclass
class RhsSeries:
    """The dominant triple series Phi (the wp bracket at v = 0) plus a
    kernel applying the full right side to a candidate v."""

    phi: TripleSeries
    _engine: _Engine

    def apply(self, v: TripleSeries) -> TripleSeries:
        return self._engine.rhs(v)


def rhs_series(theta: ThetaVector, params: EllipticParams,
               maxDegree: int) -> RhsSeries:
    eng = _Engine(theta, params, maxDegree)
    return RhsSeries(eng.G[0].copy(), eng)


# --- coefficient tables ---------------------------------------------------

@dataclass
class SeriesTable:
    """Computed v-coefficients: v = sum aN[n-1] x^n + sum bNM[n,m] x^n Zb^m
    + sum cNM[n,m] x^n Zc^m."""

    aN: list
    bNM: dict
    cNM: dict
    maxDegree: int
    params: EllipticParams

    def monomials(self):
        for n, a in enumerate(self.aN, start=1):
            if a != 0:
                yield (n, 0, 0), a
        for (n, m), v in self.bNM.items():
            if v != 0:
                yield (n, m, 0), v
        for (n, m), v in self.cNM.items():
            if v != 0:
                yield (n, 0, m), v

    def phase_series(self, kind: str) -> dict:
        """m -> coefficient of the pure-carrier terms (n = 0)."""
        src = self.bNM if kind == "b" else self.cNM
        return {m: v for (n, m), v in sorted(src.items()) if n == 0}

    def to_json(self) -> str:
        rows = []
        for n, a in enumerate(self.aN, start=1):
            rows.append([n, 0, "a", a.real, a.imag])
        for (n, m), v in sorted(self.bNM.items()):
            rows.append([n, m, "b", v.real, v.imag])
        for (n, m), v in sorted(self.cNM.items()):
            rows.append([n, m, "c", v.real, v.imag])
        p = self.params
        return json.dumps({
            "params": {"nu1": [p.nu1.real, p.nu1.imag],
                       "nu2": [p.nu2.real, p.nu2.imag],
                       "point": p.point, "branchN": p.branchN, "case": p.case},
            "maxDegree": self.maxDegree,
            "coefficients": rows,
        }, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "SeriesTable":
        doc = json.loads(text)
        p = doc["params"]
        params = EllipticParams(complex(*p["nu1"]), complex(*p["nu2"]),
                                p["point"], p["branchN"], p["case"])
        D = doc["maxDegree"]
        aN = [0j] * D
        bNM, cNM = {}, {}
        for n, m, kind, re, im in doc["coefficients"]:
            val = complex(re, im)
            if kind == "a":
                aN[n - 1] = val
            elif kind == "b":
                bNM[(n, m)] = val
            else:
                cNM[(n, m)] = val
        return cls(aN, bNM, cNM, D, params)


def v_coefficients(theta: ThetaVector, params: EllipticParams,
                   maxDegree: int = 12) -> SeriesTable:
    validate_params(params)
    D = maxDegree
    aN = [0j] * D
    bNM, cNM = {}, {}
    if params.case != "picard":
        work = reflect_theta(theta, params.point)
        v = _Engine(work, params, D).solve()
        for (n, b, c), val in v.data.items():
            if b == 0 and c == 0:
                aN[n - 1] = val
            elif c == 0:
                bNM[(n, b)] = val
            else:
                cNM[(n, c)] = val
    else:
        weight_configs(theta, "picard")  # raises CaseError when not Picard
    return SeriesTable(aN, bNM, cNM, D, params)


# --- domains and evaluation ----------------------------------------------

def _carriers(params: EllipticParams, x: CoveringPoint):
    """Values of Zb and Zc at x (local variable of params.point)."""
    pb, pc, _s = case_exponents(params.case, params.nu2)
    nu1 = params.work_nu1
    if params.point == "inf":
        lb = x.log + LN16  # the displayed carriers at infinity use (16/x)^p
    else:
        lb = x.log - LN16
    zb = cmath.exp(-1j * math.pi * nu1 + pb * lb)
    zc = cmath.exp(1j * math.pi * nu1 + pc * lb)
    return zb, zc


@dataclass(frozen=True)
class DomainSpec:
    r: float
    params: EllipticParams

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise ValueError("radius must lie in (0, 1)")


def domain_contains(d: DomainSpec, x: CoveringPoint) -> bool:
    p = d.params
    if x.base != _POINT_BASE[p.point]:
        raise DomainError(f"covering point base {x.base} does not match "
                          f"critical point {p.point}")
    if x.modulus >= d.r:
        return False
    zb, zc = _carriers(p, x)
    return abs(zb) < d.r and abs(zc) < d.r


def default_domain(table: SeriesTable, r0: float = 0.05) -> DomainSpec:
    """Shrink r by halves until the top-degree term at radius r is below
    1e-3 of the degree-1 term."""
    top = table.maxDegree
    t1 = max((abs(v) for k, v in table.monomials()
              if k[0] + k[1] + k[2] == 1), default=1.0)
    r = r0
    while r > 1e-6:
        lead = t1 * r
        tail = max((abs(v) * r ** (k[0] + k[1] + k[2])
                    for k, v in table.monomials()
                    if k[0] + k[1] + k[2] == top), default=0.0)
        if tail <= 1e-3 * lead:
            break
        r *= 0.5
    return DomainSpec(r, table.params)


def v_eval(x: CoveringPoint, table: SeriesTable, nu1: complex,
           order: int = 0) -> complex:
    """Sum of the truncated series (order > 0 applies D = x d/dx that
    many times).  nu1 is the work-frame value entering the carriers."""
    p = table.params
    pb, pc, _s = case_exponents(p.case, p.nu2)
    # coefficients are always in the internal (t/16)^p carrier normalization
    lb = x.log - LN16
    zb = cmath.exp(-1j * math.pi * nu1 + pb * lb)
    zc = cmath.exp(1j * math.pi * nu1 + pc * lb)
    xv = x.value
    out = 0j
    for (n, mb, mc), coeff in table.monomials():
        mu = n + mb * pb + mc * pc
        out += coeff * mu ** order * xv ** n * zb ** mb * zc ** mc
    return out


def bound_constant(table: SeriesTable, r: float) -> float:
    """A concrete M with |v| <= M (|x| + |Zb| + |Zc|) for radius r."""
    m = 0.0
    for (n, mb, mc), coeff in table.monomials():
        d = n + mb + mc
        m += abs(coeff) * r ** (d - 1)
    return m


def _work_periods(x: CoveringPoint, order: int = 64):
    """Expansion-frame half-periods in the local variable (the at-0 formulas
    applied to the work frame)."""
    from .specialfn import hyper_F, hyper_F1
    F = hyper_F(x, order).value
    F1 = hyper_F1(x, order).value
    w1 = 0.5 * math.pi * F
    w2 = -0.5j * (F * x.log + F1)
    return w1, w2, F


def u_half(x: CoveringPoint, params: EllipticParams, table: SeriesTable,
           order: int = 64):
    """u/2 = nu1 w1 + nu2 w2 + v in the work frame, plus the lattice frame."""
    w1, w2, _F = _work_periods(x, order)
    nu1 = params.work_nu1
    v = v_eval(x, table, nu1)
    frame = LatticeFrame.from_periods(x.value, PeriodPair(w1, w2, w2 / w1, "at0"))
    return nu1 * w1 + params.nu2 * w2 + v, frame


def y_eval(x: CoveringPoint, params: EllipticParams, table: SeriesTable,
           order: int = 64, nterms: int = 40) -> complex:
    """The transcendent y(x).  x carries the local variable of params.point."""
    if x.base != _POINT_BASE[params.point]:
        raise DomainError(f"covering point base {x.base} does not match "
                          f"critical point {params.point}")
    uh, frame = u_half(x, params, table, order)
    ytilde = wp(uh, frame, nterms) + (1.0 + x.value) / 3.0
    if params.point == "0":
        return ytilde
    if params.point == "1":
        return 1.0 - ytilde
    return ytilde / x.value  # y = ytilde / xi with xi = 1/x


def pvi_residual(x: CoveringPoint, y: complex, yp: complex, ypp: complex,
                 theta: ThetaVector) -> complex:
    """Left minus right side of the sixth Painleve equation at global x."""
    xv = x.global_x()
    for bad in (0.0, 1.0, xv):
        if abs(y - bad) < 1e-10:
            raise SingularArgumentError(f"y = {y} too close to {bad}")
    if min(abs(xv), abs(xv - 1.0)) < 1e-10:
        raise SingularArgumentError(f"x = {xv} too close to a fixed singularity")
    a, b, g, d = theta.alpha, theta.beta, theta.gamma, theta.delta
    rhs = (0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - xv)) * yp * yp
           - (1.0 / xv + 1.0 / (xv - 1.0) + 1.0 / (y - xv)) * yp
           + y * (y - 1.0) * (y - xv) / (xv * xv * (xv - 1.0) ** 2)
           * (a + b * xv / y ** 2 + g * (xv - 1.0) / (y - 1.0) ** 2
              + d * xv * (xv - 1.0) / (y - xv) ** 2))
    return ypp - rhs


def fuchs_residual(x: CoveringPoint, theta: ThetaVector,
                   params: EllipticParams, table: SeriesTable,
                   order: int = 64, nterms: int = 40) -> complex:
    """Dual-route check: series derivatives of v against the wp q-series.

    Returns D^2 v - x(Dv + v/4)/(1-x) - bracket/(4(1-x)^2) with the bracket
    evaluated through the lattice function, not the recursion.
    """
    work = reflect_theta(theta, params.point)
    nu1 = params.work_nu1
    v0 = v_eval(x, table, nu1, 0)
    v1 = v_eval(x, table, nu1, 1)
    v2 = v_eval(x, table, nu1, 2)
    uh, frame = u_half(x, params, table, order)
    bracket = 0j
    for e1, e2, w in weight_configs(work, params.case):
        if w != 0:
            bracket += w * wp_du(2.0 * uh, frame, (e1, e2, 0), nterms)
    t = x.value
    return v2 - t * (v1 + v0 / 4.0) / (1.0 - t) - bracket / (4.0 * (1.0 - t) ** 2)

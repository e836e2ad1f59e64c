"""Critical behavior of the transcendents at x = 0, 1, infinity.

Behaviors are organized by the path parameter V: along
arg x = arg x0 + (Re nu2 - V)/Im nu2 * ln(|x|/|x0|) the two carrier
magnitudes scale like powers of |x| with exponents depending on V, and the
leading form switches between a power law (V strictly inside the range),
a sin^2 form and an inverse-sin^2 form (V at the range ends).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

from .errors import GuardError, RangeError
from .specialfn import LN16, CoveringPoint, hyper_F, hyper_F1
from .elliptic_core import EllipticParams, SeriesTable, case_exponents

_VTOL = 1e-12
_PI = math.pi


@dataclass(frozen=True)
class AsymptoticForm:
    """One leading-behavior branch, evaluable at a covering point.

    The local profile f(t) in the point's local variable t is
      powerLaw:  f = coefficient * t^exponent
      sine2:     f = t * sin^2(arg)
      invSine2:  f = t/2 + 1/sin^2(arg)
    with arg = lin_log * ln(t/16) + pi*nu1/2 + sum_m phase_series[m] * Z^m
    (+ f1f_coeff * F1(t)/F(t) in the Picard log cases), where
    Z = exp(carrier_sign * i pi nu1) * (t/16)^carrier_exponent.
    The global y is f, 1 - f or f/t according to the point.
    """

    kind: str                      # powerLaw | sine2 | invSine2
    point: str                     # "0" | "1" | "inf"
    nu1: complex                   # work-frame nu1
    label: str = ""
    coefficient: complex = 0j
    exponent: complex = 0j
    lin_log: complex = 0j
    phase_series: dict = field(default_factory=dict)
    carrier_sign: int = 1
    carrier_exponent: complex = 0j
    uses_abs_log: bool = False
    plain_log: bool = False        # ln t instead of ln(t/16); pairs with F1/F
    f1f_coeff: complex = 0j
    delta: float = 1.0             # subleading relative-error exponent

    def argument(self, x: CoveringPoint) -> complex:
        L = x.rho if self.uses_abs_log else x.log
        if not self.plain_log:
            L -= LN16
        arg = self.lin_log * L + 0.5 * _PI * self.nu1
        if self.phase_series:
            z = cmath.exp(self.carrier_sign * 1j * _PI * self.nu1
                          + self.carrier_exponent * (x.log - LN16))
            for m, c in self.phase_series.items():
                arg += c * z ** m
        if self.f1f_coeff != 0:
            arg += self.f1f_coeff * (hyper_F1(x).value / hyper_F(x).value)
        return arg

    def evaluate(self, x: CoveringPoint) -> complex:
        t = x.value
        if self.kind == "powerLaw":
            f = self.coefficient * x.power(self.exponent)
        else:
            s = cmath.sin(self.argument(x))
            f = t * s * s if self.kind == "sine2" else t / 2.0 + 1.0 / (s * s)
        if self.point == "0":
            return f
        if self.point == "1":
            return 1.0 - f
        return f / t


@dataclass(frozen=True)
class PathSpec:
    """The path family: straight in (ln|x|, arg x) with V-dependent slope."""

    anchor: CoveringPoint
    V: float
    params: EllipticParams

    @property
    def slope(self) -> float:
        nu2 = self.params.nu2 + 2 * self.params.branchN
        if abs(nu2.imag) < _VTOL:
            return 0.0
        return (nu2.real - self.V) / nu2.imag


def path_point(p: PathSpec, lnAbsX: float) -> CoveringPoint:
    phi = p.anchor.phi + p.slope * (lnAbsX - p.anchor.rho)
    return CoveringPoint(lnAbsX, phi, p.anchor.base)


def _power_coefficient(nu1: complex, nu2: complex) -> complex:
    """-(1/4) e^{i pi nu1} 16^{1-nu2}: the power-law leading coefficient."""
    return -0.25 * cmath.exp(1j * _PI * nu1) * 16.0 ** (1.0 - nu2)


def _v_ranges(case: str) -> tuple:
    return {"generic-a": (0.0, 1.0), "generic-b": (0.0, 1.0),
            "special-beta": (0.0, 2.0), "special-alphagamma": (-1.0, 1.0),
            "picard": (-2.0, 2.0)}[case]


def _phase(table: SeriesTable | None, kind: str, negate: bool = False) -> dict:
    if table is None:
        return {}
    ser = table.phase_series(kind)
    return {m: -c for m, c in ser.items()} if negate else ser


def _check_guard(nu1: complex, what: str) -> None:
    if abs(cmath.sin(0.5 * _PI * nu1)) < 1e-12:
        raise GuardError(f"nu1 = {nu1} makes the {what} form degenerate")


def _behavior_local(nu1: complex, nu2: complex, case: str,
                    table: SeriesTable | None, V: float, point: str,
                    bser: dict, cser: dict) -> AsymptoticForm:
    """Dispatch in the work frame (the at-0 forms in the local variable)."""
    lo, hi = _v_ranges(case)
    if not (lo - _VTOL <= V <= hi + _VTOL):
        raise RangeError(f"V = {V} outside [{lo}, {hi}] for case {case}")
    pb, pc, s = case_exponents(case, nu2)
    real = abs(nu2.imag) < 1e-12
    r2 = nu2.real

    def power(c, e, dlt, label):
        return AsymptoticForm("powerLaw", point, nu1, label,
                              coefficient=c, exponent=e, delta=dlt)

    if case in ("generic-a", "generic-b"):
        dlt = max(min(V, 1.0 - V, 1.0), 1e-6)
        if real:
            dlt = max(min(pb.real, pc.real, 1.0), 1e-6)
            if case == "generic-a":
                return power(_power_coefficient(nu1, nu2), nu2, dlt, "critE")
            return power(_power_coefficient(-nu1, 2.0 - nu2), 2.0 - nu2,
                         dlt, "critEE")
        if abs(V - 1.0) < _VTOL:
            return AsymptoticForm("sine2", point, nu1, "critB",
                                  lin_log=0.5j * (1.0 - nu2),
                                  phase_series=bser, carrier_sign=-1,
                                  carrier_exponent=1.0 - nu2, delta=1.0)
        if abs(V) < _VTOL:
            return AsymptoticForm("invSine2", point, nu1, "critC",
                                  lin_log=-0.5j * nu2,
                                  phase_series=cser, carrier_sign=1,
                                  carrier_exponent=nu2, delta=1.0)
        return power(_power_coefficient(nu1, nu2), nu2, dlt, "critA")

    if case == "special-beta":
        if real and abs(r2 - 1.0) < 1e-12:
            _check_guard(nu1, "nu2 = 1")
            return AsymptoticForm("sine2", point, nu1, "critEEEs1", delta=1.0)
        dlt = max(min(V, 2.0 - V, 1.0), 1e-6)
        if real:
            V = r2  # radial path: carriers scale with Re nu2 itself
            dlt = max(min(pb.real, pc.real, 1.0), 1e-6)
        if abs(V) < _VTOL:
            return AsymptoticForm("invSine2", point, nu1, "critCs1",
                                  lin_log=-0.5j * nu2, phase_series=cser,
                                  carrier_sign=1, carrier_exponent=nu2,
                                  delta=1.0)
        if abs(V - 1.0) < _VTOL:
            return AsymptoticForm("sine2", point, nu1, "critBs1",
                                  lin_log=0.5j * (1.0 - nu2), delta=1.0)
        if abs(V - 2.0) < _VTOL:
            return AsymptoticForm("invSine2", point, nu1, "critDs1",
                                  lin_log=0.5j * (2.0 - nu2),
                                  phase_series=bser, carrier_sign=-1,
                                  carrier_exponent=2.0 - nu2, delta=1.0)
        if V < 1.0:
            return power(_power_coefficient(nu1, nu2), nu2, dlt, "critAs1")
        return power(_power_coefficient(-nu1, 2.0 - nu2), 2.0 - nu2,
                     dlt, "critAAs1")

    if case == "special-alphagamma":
        if real and abs(r2) < 1e-12:
            _check_guard(nu1, "nu2 = 0")
            return AsymptoticForm("invSine2", point, nu1, "critEEEs2", delta=1.0)
        dlt = max(min(1.0 + V, 1.0 - V, 1.0), 1e-6)
        if real:
            V = r2
            dlt = max(min(pb.real, pc.real, 1.0), 1e-6)
        if abs(V - 1.0) < _VTOL:
            return AsymptoticForm("sine2", point, nu1, "critBs2",
                                  lin_log=0.5j * (1.0 - nu2),
                                  phase_series=bser, carrier_sign=-1,
                                  carrier_exponent=1.0 - nu2, delta=1.0)
        if abs(V + 1.0) < _VTOL:
            return AsymptoticForm("sine2", point, nu1, "critBBs2",
                                  lin_log=-0.5j * (nu2 + 1.0),
                                  phase_series=cser, carrier_sign=1,
                                  carrier_exponent=nu2 + 1.0, delta=1.0)
        if abs(V) < _VTOL:
            return AsymptoticForm("invSine2", point, nu1, "critCs2",
                                  lin_log=-0.5j * nu2, delta=1.0)
        if V > 0.0:
            return power(_power_coefficient(nu1, nu2), nu2, dlt, "critAs2")
        return power(-0.25 * cmath.exp(-1j * _PI * nu1) * 16.0 ** (1.0 + nu2),
                     -nu2, dlt, "critAAs2")

    raise RangeError(f"no behavior dispatch for case {case}")


def _work_view(params: EllipticParams, table: SeriesTable | None):
    """Work-frame quantities for the dispatch; generic-b is re-expressed
    through (-nu1, 2-nu2) with negated series (the period symmetry)."""
    nu1 = params.work_nu1
    nu2 = params.nu2
    case = params.case
    bser = _phase(table, "b")
    cser = _phase(table, "c")
    if case == "generic-b":
        nu1, nu2, case = -nu1, 2.0 - nu2, "generic-a"
        bser, cser = _phase(table, "c", negate=True), _phase(table, "b", negate=True)
    return nu1, nu2, case, bser, cser


def behavior_at_0(params: EllipticParams, table: SeriesTable | None,
                  V: float) -> AsymptoticForm:
    if params.case == "picard":
        return picard_behavior(params.nu1, params.nu2, params.branchN, V)
    nu1, nu2, case, bser, cser = _work_view(params, table)
    form = _behavior_local(nu1, nu2, case, table, V, "0", bser, cser)
    if params.case == "generic-b" and form.label == "critE":
        form = replace(form, label="critEE")
    return form


def behavior_at_1(params: EllipticParams, table: SeriesTable | None,
                  V: float) -> AsymptoticForm:
    if params.point != "1":
        raise RangeError("params.point must be '1'")
    nu1, nu2, case, bser, cser = _work_view(params, table)
    return _behavior_local(nu1, nu2, case, table, V, "1", bser, cser)


def behavior_at_inf(params: EllipticParams, table: SeriesTable | None,
                    V: float) -> AsymptoticForm:
    if params.point != "inf":
        raise RangeError("params.point must be 'inf'")
    nu1, nu2, case, bser, cser = _work_view(params, table)
    return _behavior_local(nu1, nu2, case, table, V, "inf", bser, cser)


def picard_behavior(nu1: complex, nu2: complex, N: int = 0,
                    V: float = 0.5) -> AsymptoticForm:
    """Behavior branches of the v = 0 solutions; V in [-2, 2]."""
    if not (-2.0 - _VTOL <= V <= 2.0 + _VTOL):
        raise RangeError(f"V = {V} outside [-2, 2]")
    nu1, nu2 = complex(nu1), complex(nu2)
    if abs(nu2.imag) < 1e-12:
        r2 = nu2.real + 2 * N
        if abs(r2 - 1.0) < 1e-12:
            _check_guard(nu1, "nu2 = 1")
            return AsymptoticForm("sine2", "0", nu1, "picard-nu2-1", delta=1.0)
        if abs(r2) < 1e-12:
            _check_guard(nu1, "nu2 = 0")
            return AsymptoticForm("invSine2", "0", nu1, "picard-nu2-0", delta=1.0)
        V = r2  # radial path
    # negative-V branches reflect to positive V with N -> N+1
    if V < -_VTOL:
        return picard_behavior(nu1, nu2 + 2, N, V + 2.0)
    e = nu2 + 2 * N
    if abs(V) < _VTOL:
        return AsymptoticForm("invSine2", "0", nu1, "picard-V0",
                              lin_log=-0.5j * e, plain_log=True,
                              f1f_coeff=-0.5j * e, delta=1.0)
    if abs(V - 1.0) < _VTOL:
        return AsymptoticForm("sine2", "0", nu1, "picard-V1",
                              lin_log=0.5j * (1.0 - e), delta=1.0)
    if abs(V - 2.0) < _VTOL:
        return AsymptoticForm("invSine2", "0", nu1, "picard-V2",
                              lin_log=0.5j * (2.0 - e), plain_log=True,
                              f1f_coeff=0.5j * (2.0 - e), delta=1.0)
    if V < 1.0:
        return AsymptoticForm("powerLaw", "0", nu1, "picard-A",
                              coefficient=_power_coefficient(nu1, e),
                              exponent=e,
                              delta=max(min(V, 1.0 - V), 1e-6))
    return AsymptoticForm("powerLaw", "0", nu1, "picard-AA",
                          coefficient=_power_coefficient(-nu1, 2.0 - e),
                          exponent=2.0 - e,
                          delta=max(min(V - 1.0, 2.0 - V), 1e-6))


def loop_continuation(params: EllipticParams) -> EllipticParams:
    """Parameter change under one loop around the critical point.

    Valid only when the point before and after the loop both lie in the
    respective domains; otherwise the continuation may hit a movable pole.
    """
    if params.point == "0":
        return replace(params, nu1=params.nu1 + 2 * params.nu2)
    if params.point == "1":
        return replace(params, nu1=params.nu1 - 2 * params.nu2)
    return replace(params, nu1=params.nu1 + 2 * params.nu2)

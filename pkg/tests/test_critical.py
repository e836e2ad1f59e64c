"""Leading-behavior branches and path bookkeeping."""

import cmath
import math

from ellipvi import (CoveringPoint, EllipticParams, PathSpec, ThetaVector,
                     behavior_at_0, loop_continuation, path_point,
                     picard_behavior, picard_solution, v_coefficients)

NU1, NU2 = 0.2 + 0.1j, 0.5 + 0.8j


def _params():
    return EllipticParams(nu1=NU1, nu2=NU2, case="generic-a")


def test_path_slope_keeps_effective_exponent():
    # along the path, Im(nu2 ln x) - V Re(ln x) must stay constant
    params = _params()
    spec = PathSpec(CoveringPoint(math.log(1e-3), 0.0, "at0"), 0.5, params)
    p1 = path_point(spec, math.log(1e-3))
    p2 = path_point(spec, math.log(1e-5))

    def invariant(p):
        lnx = complex(p.rho, p.phi)
        return (NU2 * lnx).real - 0.5 * lnx.real

    assert abs(invariant(p1) - invariant(p2)) < 1e-12


def test_leading_coefficient_generic_a():
    # power-law branch: y ~ C x^{nu2}, C = -(1/4) e^{i pi nu1} 16^{1 - nu2}
    form = behavior_at_0(_params(), None, 0.5)
    C = -0.25 * cmath.exp(1j * math.pi * NU1) * 16.0 ** complex(1 - NU2)
    assert form.kind == "powerLaw"
    assert abs(form.exponent - NU2) < 1e-12
    assert abs(form.coefficient - C) < 1e-12 * abs(C)


def test_form_tracks_solution():
    # the evaluated branch approximates the actual series solution
    theta = ThetaVector(0.3, 0.4, 0.5, 1.7)
    params = _params()
    table = v_coefficients(theta, params, maxDegree=10)
    form = behavior_at_0(params, table, 0.5)
    spec = PathSpec(CoveringPoint(math.log(1e-4), 0.0, "at0"), 0.5, params)
    from ellipvi import y_eval
    rels = []
    for lnx in (math.log(1e-4), math.log(1e-5), math.log(1e-6)):
        p = path_point(spec, lnx)
        rels.append(abs(y_eval(p, params, table) - form.evaluate(p))
                    / abs(form.evaluate(p)))
    assert rels[2] < rels[1] < rels[0]   # decays along the path
    assert rels[2] < 1e-2


def test_picard_behavior_matches_solution():
    nu1, nu2 = 0.3 + 0.05j, 0.6 + 0.4j
    form = picard_behavior(nu1, nu2)
    spec = PathSpec(CoveringPoint(math.log(1e-5), 0.0, "at0"), 0.5,
                    EllipticParams(nu1, nu2, case="picard"))
    p = path_point(spec, math.log(1e-8))
    y = picard_solution(nu1, nu2, p)
    assert abs(form.evaluate(p) - y) / abs(y) < 1e-3


def test_loop_continuation_shifts_nu1():
    params = _params()
    looped = loop_continuation(params)
    assert abs(looped.nu2 - params.nu2) < 1e-15
    assert abs(abs(looped.nu1 - params.nu1) - 2 * abs(params.nu2)) < 1e-12

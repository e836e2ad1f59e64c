"""Direct integration oracle and the sampled-solution residual tools."""

import math
import random

from ellipvi import (CoveringPoint, ThetaVector, equation_residual,
                     fit_behavior, integrate_pvi, picard_behavior,
                     picard_solution, transcendent_derivatives)

PICARD_THETA = ThetaVector(0.0, 0.0, 0.0, 1.0)


def test_picard_equation_residual():
    rng = random.Random(17)
    for _ in range(5):
        nu1 = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.3, 0.3))
        nu2 = complex(rng.uniform(0.2, 1.8), rng.uniform(-0.3, 0.3))
        x = CoveringPoint(math.log(rng.uniform(0.005, 0.02)),
                          rng.uniform(-0.5, 0.5), "at0")
        res = equation_residual(lambda p: picard_solution(nu1, nu2, p),
                                x, PICARD_THETA)
        assert res < 1e-9


def test_transcendent_derivatives_power_law():
    # exact derivatives of a pure power recovered on each chart
    for base in ("at0", "at1", "atInf"):
        x = CoveringPoint(math.log(0.02), 0.1, base)

        def f(p):
            xg = p.global_x()
            return 3.0 * xg * xg - xg

        y, yp, ypp = transcendent_derivatives(f, x)
        xg = x.global_x()
        assert abs(y - (3 * xg * xg - xg)) < 1e-14
        assert abs(yp - (6 * xg - 1)) < 1e-8 * max(1.0, abs(yp))
        assert abs(ypp - 6.0) < 1e-8


def test_integration_tracks_picard():
    nu1, nu2 = 0.25 + 0.05j, 0.6 + 0.1j
    pts = [CoveringPoint(math.log(r), 0.0, "at0")
           for r in (0.02, 0.03, 0.05, 0.08)]
    h = 1e-6
    y0 = picard_solution(nu1, nu2, pts[0])
    x0 = pts[0].global_x()
    yp0 = (picard_solution(nu1, nu2, CoveringPoint(pts[0].rho + h, 0.0, "at0"))
           - picard_solution(nu1, nu2,
                             CoveringPoint(pts[0].rho - h, 0.0, "at0"))) \
        / (2 * h * x0)
    traj = integrate_pvi(PICARD_THETA, (pts[0], y0, yp0), pts, tol=1e-12)
    pt, y, _ = traj.samples[-1]
    want = picard_solution(nu1, nu2, pt)
    assert abs(y - want) < 1e-7 * max(1.0, abs(want))


def test_fit_behavior_recovers_picard_tail():
    nu1, nu2 = 0.3 + 0.02j, 0.55 + 0.03j
    pts = [CoveringPoint(lnr, 0.0, "at0")
           for lnr in [math.log(1e-7) - 0.25 * k for k in range(12)]]
    samples = [(p, picard_solution(nu1, nu2, p), 0.0) for p in pts]

    class T:
        pass

    traj = T()
    traj.samples = samples
    exponent, coefficient, confidence = fit_behavior(traj, "0")
    form = picard_behavior(nu1, nu2)
    assert abs(exponent - form.exponent) < 1e-4
    assert abs(coefficient - form.coefficient) < 5e-3 * abs(form.coefficient)
    assert confidence < 1e-3

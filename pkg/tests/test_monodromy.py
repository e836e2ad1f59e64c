"""Trace coordinates, the s/a parameters, and the chart maps."""

import cmath
import math
import random

import numpy as np

from ellipvi import (EllipticParams, SigmaA, ThetaVector, a_from_s,
                     canonical_sigma, laurent_coefficients, m_matrices,
                     nu_to_sigma_a, s_from_traces, sigma_a_to_nu,
                     sigma_aliases, sigma_from_trace, traces_from_params,
                     transform_to_x1, transform_to_xinf)

THETA = ThetaVector(0.31, 0.27, 0.41, 1.63)


def draws(n=8, seed=101):
    rng = random.Random(seed)
    for _ in range(n):
        sigma = complex(rng.uniform(0.1, 0.9), rng.uniform(-0.4, 0.4))
        s = cmath.exp(complex(rng.uniform(-1, 1), rng.uniform(-2, 2)))
        yield sigma, s


def test_monodromy_matrices_realize_traces():
    for sigma, s in draws():
        m0, mx, m1 = m_matrices(sigma, THETA, s)
        data = traces_from_params(sigma, THETA, s)
        assert abs(np.trace(m0 @ mx) - data.T0) < 1e-10
        assert abs(np.trace(m1 @ mx) - data.T1) < 1e-10
        assert abs(np.trace(m0 @ m1) - data.TInf) < 1e-10
        for m, th in ((m0, THETA.theta0), (mx, THETA.thetaX),
                      (m1, THETA.theta1)):
            assert abs(np.trace(m) - 2 * math.cos(math.pi * th)) < 1e-10


def test_trace_roundtrip():
    for sigma, s in draws():
        data = traces_from_params(sigma, THETA, s)
        assert abs(2 * cmath.cos(math.pi * sigma) - data.T0) < 1e-10
        s_back = s_from_traces(data, sigma)
        assert abs(s_back - s) < 1e-9 * max(1.0, abs(s))


def test_a_from_s_inverts():
    t0, tx = THETA.theta0, THETA.thetaX
    for sigma, s in draws():
        a = a_from_s(sigma, THETA, s)
        prod = ((t0 + tx + sigma) * (-t0 + tx + sigma)
                * (t0 + tx - sigma) * (t0 - tx + sigma))
        s_back = prod / (16.0 * sigma ** 3 * a)
        assert abs(s_back - s) < 1e-9 * max(1.0, abs(s))


def test_canonical_sigma_and_aliases():
    sigma = 0.37 + 0.21j
    assert canonical_sigma(sigma) == sigma
    assert abs(canonical_sigma(-sigma) - sigma) < 1e-14
    assert abs(canonical_sigma(sigma + 2.0) - sigma) < 1e-14
    al = sigma_aliases(sigma)
    assert any(abs(v - (2.0 - sigma)) < 1e-14 for v in al)
    assert all(abs(canonical_sigma(v) - sigma) < 1e-13 for v in al)


def test_sigma_from_trace_inverts_cos():
    for sigma, _ in draws():
        T = 2 * cmath.cos(math.pi * sigma)
        got = sigma_from_trace(T)
        assert abs(cmath.cos(math.pi * got) - T / 2) < 1e-12


def test_x1_map_is_involution():
    for sigma, s in draws(4):
        data = traces_from_params(sigma, THETA, s)
        back = transform_to_x1(transform_to_x1(data))
        for u, v in ((back.T0, data.T0), (back.T1, data.T1),
                     (back.TInf, data.TInf)):
            assert abs(u - v) < 1e-10


def test_xinf_map_preserves_theta_multiset():
    data = traces_from_params(0.4 + 0.1j, THETA, 1.3 - 0.2j)
    moved = transform_to_xinf(data)
    assert sorted([moved.theta.theta0, moved.theta.thetaX,
                   moved.theta.theta1]) == sorted([THETA.theta0, THETA.thetaX,
                                                   THETA.theta1])
    assert moved.theta.thetaInf == THETA.thetaInf


def test_nu_dictionary_roundtrip():
    for sigma, s in draws(6, seed=55):
        a = a_from_s(sigma, THETA, s)
        for branch in ("low", "high"):
            params = sigma_a_to_nu(SigmaA(sigma, a, "0"), branch)
            sa = nu_to_sigma_a(params)
            assert abs(canonical_sigma(sa.sigma) - canonical_sigma(sigma)) < 1e-10
            assert abs(sa.a - a) < 1e-9 * max(1.0, abs(a))


def test_nu_branches_differ_by_reflection():
    sigma, a = 0.52 + 0.13j, 0.8 + 0.3j
    lo = sigma_a_to_nu(SigmaA(sigma, a, "0"), "low")
    hi = sigma_a_to_nu(SigmaA(sigma, a, "0"), "high")
    assert abs(lo.nu2 - (1 - sigma)) < 1e-13
    assert abs(hi.nu2 - (1 + sigma)) < 1e-13


def test_laurent_coefficients_reproduce_traces():
    # tr(m1 m0) = F1/s + F2 + F3 s for every s, not just the fit samples
    sigma = 0.45 + 0.2j
    F1, F2, F3, F4 = laurent_coefficients(sigma, THETA)
    for s in (0.7 - 0.4j, 3.1 + 0.2j):
        m0, mx, m1 = m_matrices(sigma, THETA, s)
        want = np.trace(m1 @ m0)
        assert abs(F1 / s + F2 + F3 * s - want) < 1e-9 * max(1.0, abs(want))
        wantx = np.trace(mx @ m1)
        got = (-cmath.exp(-1j * math.pi * sigma) * F1 / s + F4
               - cmath.exp(1j * math.pi * sigma) * F3 * s)
        assert abs(got - wantx) < 1e-9 * max(1.0, abs(wantx))

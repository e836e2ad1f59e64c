"""Trace-coordinate triples for the one-parameter families."""

import cmath
import math
import random

import pytest

from ellipvi import (ConsistencyError, K_shift, RangeError, Triple, a_of,
                     canonical_sigma, nu1_of_triple, params_of_triple,
                     sigma_of_triple, triple_from_nu, triple_of, triple_to_x1,
                     triple_to_xinf)

MU = 0.31 + 0.07j


def draws(n=10, seed=9):
    rng = random.Random(seed)
    for _ in range(n):
        sigma = complex(rng.uniform(0.05, 0.95), rng.uniform(-0.4, 0.4))
        a = complex(rng.uniform(0.3, 2.0), rng.uniform(-1.0, 1.0))
        mu = complex(rng.uniform(0.1, 0.9), rng.uniform(-0.2, 0.2))
        yield sigma, a, mu


def test_triple_satisfies_constraint():
    for sigma, a, mu in draws():
        t = triple_of(sigma, a, mu)
        assert t.jimbo_residual() < 1e-10 * max(1.0, abs(t.x1) ** 2,
                                                abs(t.xInf) ** 2)


def test_sigma_a_roundtrip():
    for sigma, a, mu in draws():
        t = triple_of(sigma, a, mu)
        sig = sigma_of_triple(t)
        assert abs(sig - canonical_sigma(sigma)) < 1e-10
        assert abs(a_of(sig, t) - a) < 1e-9 * max(1.0, abs(a))


def test_substitutions_preserve_constraint():
    rng = random.Random(41)
    for _ in range(100):
        sigma = complex(rng.uniform(0.05, 0.95), rng.uniform(-0.5, 0.5))
        a = complex(rng.uniform(0.3, 2.0), rng.uniform(-1.0, 1.0))
        mu = complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3))
        t = triple_of(sigma, a, mu)
        for mapped in (triple_to_x1(t), triple_to_xinf(t)):
            scale = max(1.0, abs(mapped.x1) ** 2, abs(mapped.xInf) ** 2)
            assert mapped.jimbo_residual() < 1e-10 * scale


def test_x1_substitution_is_involution():
    t = triple_of(0.42 + 0.11j, 0.9 - 0.4j, MU)
    back = triple_to_x1(triple_to_x1(t))
    assert back == t


def test_nu_form_matches_sigma_form():
    # the same triple written from (nu1, nu2) and from (sigma, a)
    for sigma, a, mu in draws(6, seed=13):
        t = triple_of(sigma, a, mu)
        p = params_of_triple(t, branch="low")
        t2, numeric = triple_from_nu(p.nu1, p.nu2, mu)
        assert not numeric
        assert t2 == t


def test_nu1_roundtrip_both_branches():
    for sigma, a, mu in draws(6, seed=29):
        t = triple_of(sigma, a, mu)
        for branch, nu2 in (("low", 1 - sigma), ("high", 1 + sigma)):
            nu1 = nu1_of_triple(nu2, t, branch)
            t2, _ = triple_from_nu(nu1, nu2, mu)
            assert t2 == t


def test_dictionary_identity():
    # e^{i pi nu1} = -4 a 16^{nu2 - 1} on the low branch
    for sigma, a, mu in draws(5, seed=71):
        t = triple_of(sigma, a, mu)
        nu2 = 1 - sigma
        nu1 = nu1_of_triple(nu2, t, "low")
        lhs = cmath.exp(1j * math.pi * nu1)
        rhs = -4.0 * a * 16.0 ** complex(nu2 - 1.0)
        assert abs(lhs - rhs) < 1e-9 * abs(rhs)


def test_k_shift_identities():
    nu2, mu = 0.73 + 0.21j, MU
    assert abs(K_shift(nu2, 1, mu) * K_shift(nu2 + 2, -1, mu) - 1.0) < 1e-12
    assert abs(K_shift(nu2, 2, mu)
               - K_shift(nu2, 1, mu) * K_shift(nu2 + 2, 1, mu)) < 1e-12
    step = ((nu2 - 1 + 2 * mu) ** 2 * (nu2 + 1 - 2 * mu) ** 2 / nu2 ** 4)
    assert abs(K_shift(nu2, 1, mu) - step) < 1e-12 * abs(step)


def test_shift_consistency_of_a():
    # a(sigma + 2) = a(sigma) * 16^2 * K(1 - sigma, -1)
    sigma, a, mu = 0.34 + 0.18j, 1.1 - 0.5j, MU
    t = triple_of(sigma, a, mu)
    a_shift = a * 256.0 * K_shift(1 - sigma, -1, mu)
    nu1 = nu1_of_triple(1 - (sigma + 2), t, "low")
    lhs = cmath.exp(1j * math.pi * nu1)
    rhs = -4.0 * a_shift * 16.0 ** complex(-sigma - 2.0)
    assert abs(lhs - rhs) < 1e-9 * abs(rhs)


def test_resonant_sigma_uses_limit_branch():
    # at sigma = 2 mu the main formula degenerates; the limit value is
    # the analytic continuation along the one-parameter family
    mu = 0.26 + 0.0j
    sigma0 = 2 * mu
    a0 = 0.8 + 0.3j
    t = triple_of(sigma0, a0, mu)
    assert abs(a_of(sigma0, t) - a0) < 1e-5 * abs(a0)
    # nearby non-resonant sigma recovers consistently
    for d in (1e-3, 1e-5):
        sig = sigma0 + d
        td = triple_of(sig, a0, mu)
        assert abs(a_of(sig, td) - a0) < 1e-6 * abs(a0)


def test_triple_validation():
    with pytest.raises(ConsistencyError):
        Triple(0.1, 0.2, 0.3, MU).validate()     # violates the constraint
    t = triple_of(0.3 + 0.05j, 0.7, MU)
    t.validate()


def test_triple_equality_mod_sign_gauge():
    t = triple_of(0.3 + 0.05j, 0.7 - 0.2j, MU)
    flipped = Triple(t.x0, -t.x1, -t.xInf, MU)
    assert flipped == t
    assert Triple(t.x0, -t.x1, t.xInf, MU) != t


def test_triple_json_roundtrip():
    t = triple_of(0.3 + 0.05j, 0.7 - 0.2j, MU)
    assert Triple.from_json(t.to_json()) == t


def test_strip_range_guard():
    t = triple_of(0.3, 0.7, 0.3)
    with pytest.raises(RangeError):
        triple_from_nu(0.1, 3.7, 0.3)

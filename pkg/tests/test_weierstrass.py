"""Lattice frame and the wp family."""

import cmath
import random

import pytest

from ellipvi import CoveringPoint, LatticeFrame, LatticePoleError, wp, wp_du, wp_prime


def frames(n=10, seed=11):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        x = complex(rng.uniform(0.03, 0.4), rng.uniform(-0.15, 0.15))
        out.append(LatticeFrame.from_point(CoveringPoint.from_complex(x)))
    return out


def test_branch_point_values():
    for fr in frames():
        assert abs(wp(fr.omega1, fr) - fr.e1) < 1e-12
        assert abs(wp(fr.omega1 + fr.omega2, fr) - fr.e2) < 1e-12
        assert abs(wp(fr.omega2, fr) - fr.e3) < 1e-12


def test_invariants_match_branch_points():
    # g2 = -4(e1 e2 + e1 e3 + e2 e3), g3 = 4 e1 e2 e3, e1 + e2 + e3 = 0
    for fr in frames():
        e1, e2, e3 = fr.e1, fr.e2, fr.e3
        assert abs(e1 + e2 + e3) < 1e-14
        assert abs(fr.g2 + 4 * (e1 * e2 + e1 * e3 + e2 * e3)) < 1e-12
        assert abs(fr.g3 - 4 * e1 * e2 * e3) < 1e-12


def test_differential_equation():
    rng = random.Random(23)
    for fr in frames():
        z = rng.uniform(0.2, 0.8) * fr.omega1 + rng.uniform(0.1, 0.9) * fr.omega2
        w = wp(z, fr)
        lhs = wp_prime(z, fr) ** 2
        rhs = 4 * w ** 3 - fr.g2 * w - fr.g3
        assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


def test_periodicity():
    rng = random.Random(37)
    for fr in frames():
        z = rng.uniform(0.15, 0.85) * fr.omega1 + rng.uniform(0.15, 0.85) * fr.omega2
        w = wp(z, fr)
        assert abs(wp(z + 2 * fr.omega1, fr) - w) < 1e-9 * max(1.0, abs(w))
        assert abs(wp(z + 2 * fr.omega2, fr) - w) < 1e-9 * max(1.0, abs(w))


def test_evenness():
    for fr in frames(4):
        z = 0.31 * fr.omega1 + 0.22 * fr.omega2
        assert abs(wp(-z, fr) - wp(z, fr)) < 1e-12
        assert abs(wp_prime(-z, fr) + wp_prime(z, fr)) < 1e-12


def test_wp_prime_is_derivative():
    fr = frames(1)[0]
    z = 0.27 * fr.omega1 + 0.41 * fr.omega2
    h = 1e-6 * fr.omega1
    fd = (wp(z - 2 * h, fr) - 8 * wp(z - h, fr)
          + 8 * wp(z + h, fr) - wp(z + 2 * h, fr)) / (12 * h)
    assert abs(fd - wp_prime(z, fr)) < 1e-8


def test_wp_du_chain_rule():
    fr = frames(1)[0]
    u = 0.8 * fr.omega1 + 0.62 * fr.omega2
    assert abs(wp_du(u, fr) - 0.5 * wp_prime(u / 2, fr)) < 1e-13
    shifted = wp_du(u, fr, shift=(1, 0, 0))
    assert abs(shifted - 0.5 * wp_prime(u / 2 + fr.omega1, fr)) < 1e-13


def test_lattice_pole_guard():
    fr = frames(1)[0]
    with pytest.raises(LatticePoleError):
        wp(2 * fr.omega1 + 1e-12 * fr.omega2, fr)

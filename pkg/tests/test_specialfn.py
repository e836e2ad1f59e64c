"""Special-function layer: gamma, the F/F1 pair, periods, h."""

import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from ellipvi import (CoveringPoint, GammaPoleError, digamma, gamma_complex,
                     h_factor, hyper_F, hyper_F1, periods)

# Frozen oracles (mpmath, 50 digits, independent series implementations).
GAMMA_25_1J = complex(0.77476210455108367, 0.70763120437959259)
F_HALF = 1.1803405990160962
F1_FIFTH = -2.8139603187315050
H_AT_001 = 1.0050330566128249
WRONSKIAN = -0.78539816339744831j   # -i pi / 4


def test_gamma_oracle():
    assert abs(gamma_complex(2.5 + 1j) - GAMMA_25_1J) < 1e-14


def test_gamma_small_integers():
    for n, fact in ((1, 1.0), (2, 1.0), (3, 2.0), (5, 24.0)):
        assert abs(gamma_complex(complex(n)) - fact) < 1e-13


def test_gamma_pole_raises():
    with pytest.raises(GammaPoleError):
        gamma_complex(-2.0 + 0j)


@settings(deadline=None, max_examples=100)
@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=6.0,
                          allow_infinity=False, allow_nan=False))
def test_gamma_recurrence(z):
    if abs(z.imag) < 1e-3 and z.real < 0.2:
        return  # stay clear of the pole line
    lhs = gamma_complex(z + 1.0)
    rhs = z * gamma_complex(z)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


@settings(deadline=None, max_examples=100)
@given(st.complex_numbers(min_magnitude=0.05, max_magnitude=4.0,
                          allow_infinity=False, allow_nan=False))
def test_gamma_reflection(z):
    if abs(z.imag) < 1e-2 and abs(z.real - round(z.real)) < 1e-2:
        return
    lhs = gamma_complex(z) * gamma_complex(1.0 - z)
    rhs = math.pi / cmath.sin(math.pi * z)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_digamma_at_one():
    # psi(1) = -EulerGamma
    assert abs(digamma(1.0 + 0j) + 0.57721566490153286) < 1e-12


def test_hyper_F_oracle():
    x = CoveringPoint.from_complex(0.5 + 0j)
    assert abs(hyper_F(x).value - F_HALF) < 1e-12


def test_hyper_F1_oracle():
    x = CoveringPoint.from_complex(0.2 + 0j)
    assert abs(hyper_F1(x).value - F1_FIFTH) < 1e-12


def test_connection_identity_ring():
    # -pi F(1-x) = F(x) ln x + F1(x) on 0.3 < |x| < 0.5; both series must
    # converge, so keep |1-x| well inside the unit disc too.
    for k in range(12):
        r = 0.3 + 0.02 * k
        x = r * cmath.exp(1j * (k / 12.0 - 0.5))
        p0 = CoveringPoint.from_complex(x)
        p1 = CoveringPoint.from_complex(1.0 - x, base="at1")
        lhs = -math.pi * hyper_F(p1, order=128).value
        rhs = hyper_F(p0).value * cmath.log(x) + hyper_F1(p0).value
        assert abs(lhs - rhs) < 1e-10


def test_h_factor_oracle():
    x = CoveringPoint.from_complex(0.01 + 0j)
    assert abs(h_factor(x, 1.0) - H_AT_001) < 1e-12


def test_h_factor_zero_power():
    x = CoveringPoint.from_complex(0.07 + 0j)
    assert h_factor(x, 0.0) == 1.0


def test_period_wronskian():
    # (w1 w2' - w1' w2) x (1-x) is the constant -i pi / 4.
    h = 1e-5
    for xv in (0.1, 0.37):
        vals = []
        for dx in (-2 * h, -h, h, 2 * h):
            p = periods(CoveringPoint.from_complex(xv + dx))
            vals.append((p.omega1, p.omega2))
        p0 = periods(CoveringPoint.from_complex(xv))
        d1 = (vals[0][0] - 8 * vals[1][0] + 8 * vals[2][0] - vals[3][0]) / (12 * h)
        d2 = (vals[0][1] - 8 * vals[1][1] + 8 * vals[2][1] - vals[3][1]) / (12 * h)
        W = p0.omega1 * d2 - d1 * p0.omega2
        assert abs(W * xv * (1 - xv) - WRONSKIAN) < 1e-9


def test_periods_at_one_and_inf_frames():
    # the three local frames give genuinely independent period pairs
    x0 = CoveringPoint.from_complex(0.3 + 0j)
    x1 = CoveringPoint.from_complex(0.7 + 0j, base="at1")
    assert abs(periods(x0).omega1.imag) < 1e-12      # real at 0
    assert abs(periods(x1).omega1.real) < 1e-12      # imaginary at 1

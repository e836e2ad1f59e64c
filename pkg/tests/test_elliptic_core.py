"""Series engine for v, case bookkeeping, and the equation residuals."""

import math
import random

import pytest

from ellipvi import (CaseError, CoveringPoint, EllipticParams, ResonanceError,
                     SeriesTable, ThetaVector, case_exponents, fuchs_residual,
                     v_coefficients, validate_params, weight_configs, y_eval)

THETA = ThetaVector(0.3, 0.4, 0.5, 1.7)
NU2 = 0.5 + 0.8j

# Frozen oracle: low-degree coefficients for the generic-a case at the
# parameters above, computed by an independent successive-approximation
# solver in 40-digit arithmetic.  Keys are (n, mb, mc).
ORACLE = {
    (0, 0, 1): complex(-0.24239363716702437, 0.11816689811892438),
    (0, 0, 2): complex(-0.71873747703720050, 0.38674356563068890),
    (0, 0, 3): complex(0.11223145831535342, 0.38798681198470203),
    (0, 1, 0): complex(0.07069814417371544, 0.03446534528468628),
    (0, 2, 0): complex(-0.25005673609905008, -0.12499570265588696),
    (0, 3, 0): complex(0.03585525020243003, 0.06152363748517733),
    (1, 0, 0): complex(0.00424188865042293, 0.0),
    (1, 0, 1): complex(-0.14931684544986846, -0.05050596324695613),
    (1, 0, 2): complex(-0.85152418295418636, -0.30437100199785288),
    (1, 1, 0): complex(0.02421732389955871, -0.02301424210959864),
    (1, 2, 0): complex(-0.28456507642257376, 0.11842369519837355),
    (2, 0, 0): complex(-0.00343270818111211, -0.00015467696913414),
    (2, 0, 1): complex(-0.08617673175331532, -0.05888612377799322),
    (2, 1, 0): complex(0.00381114607927201, -0.01685664155955297),
    (3, 0, 0): complex(-0.00550512697735468, -0.00014333941148359),
}


def _table(order=8):
    params = EllipticParams(nu1=0.2 + 0.1j, nu2=NU2, case="generic-a")
    return v_coefficients(THETA, params, maxDegree=order)


def test_low_degree_coefficients_against_oracle():
    table = _table()
    got = {k: v for k, v in table.monomials()}
    for key, want in ORACLE.items():
        deg = key[0] + key[1] + key[2]
        tol = 1e-6 if deg <= 2 else 5e-6
        assert key in got, key
        assert abs(got[key] - want) < tol, (key, got[key], want)


def test_closed_form_first_carriers():
    # c(0,1) = -2i(alpha - gamma)/nu2^2 and
    # b(0,1) = -i(2 beta + 1 - 2 delta)/(1 - nu2)^2
    table = _table()
    a, b = THETA.alpha, THETA.beta
    g, d = THETA.gamma, THETA.delta
    c01 = -2j * (a - g) / NU2 ** 2
    b01 = -1j * (2 * b + 1 - 2 * d) / (1 - NU2) ** 2
    assert abs(table.cNM[(0, 1)] - c01) < 1e-12
    assert abs(table.bNM[(0, 1)] - b01) < 1e-12


def test_case_exponents():
    pb, pc, s = case_exponents("generic-a", NU2)
    assert (pb, pc, s) == (1 - NU2, NU2, 1)
    pb, pc, s = case_exponents("generic-b", NU2)
    assert (pb, pc, s) == (2 - NU2, NU2 - 1, 1)
    pb, pc, s = case_exponents("special-beta", NU2)
    assert (pb, pc, s) == (2 - NU2, NU2, 2)
    pb, pc, s = case_exponents("special-alphagamma", NU2)
    assert (pb, pc, s) == (1 - NU2, 1 + NU2, 2)


def test_weight_configs_gates():
    weight_configs(ThetaVector(0.0, 0.0, 0.0, 1.0), "picard")
    with pytest.raises(CaseError):
        weight_configs(THETA, "picard")
    with pytest.raises(CaseError):
        weight_configs(THETA, "special-beta")    # needs beta = 1-2delta = 0


def test_validate_params_windows():
    validate_params(EllipticParams(0.1, 0.5, case="generic-a"))
    with pytest.raises(ResonanceError):
        validate_params(EllipticParams(0.1, 1.5, case="generic-a"))
    validate_params(EllipticParams(0.1, 1.5, case="generic-b"))
    with pytest.raises(ResonanceError):
        validate_params(EllipticParams(0.1, 0.5, case="generic-b"))


def test_series_table_json_roundtrip():
    table = _table(order=6)
    back = SeriesTable.from_json(table.to_json())
    assert dict(back.monomials()) == dict(table.monomials())
    assert back.params == table.params
    assert back.maxDegree == table.maxDegree


def test_fuchs_residual_small():
    params = EllipticParams(nu1=0.2 + 0.1j, nu2=NU2, case="generic-a")
    table = v_coefficients(THETA, params, maxDegree=12)
    rng = random.Random(3)
    for _ in range(6):
        x = CoveringPoint(math.log(rng.uniform(0.002, 0.02)),
                          rng.uniform(-1.0, 1.0), "at0")
        assert abs(fuchs_residual(x, THETA, params, table)) < 1e-7


def test_y_eval_runs_in_all_cases():
    cases = [
        (ThetaVector(0.3, 0.4, 0.5, 1.7), EllipticParams(0.2 + 0.1j, 0.5 + 0.3j,
                                                         case="generic-a")),
        (ThetaVector(0.3, 0.4, 0.5, 1.7), EllipticParams(0.2 + 0.1j, 1.4 + 0.3j,
                                                         case="generic-b")),
        (ThetaVector(0.0, 0.0, 0.5, 1.7), EllipticParams(0.2 + 0.1j, 0.5 + 0.3j,
                                                         case="special-beta")),
        (ThetaVector(0.4, 0.3, 0.0, 1.0), EllipticParams(0.2 + 0.1j, 0.5 + 0.3j,
                                                         case="special-alphagamma")),
    ]
    for theta, params in cases:
        table = v_coefficients(theta, params, maxDegree=10)
        y = y_eval(CoveringPoint(math.log(0.01), 0.3, "at0"), params, table)
        assert y == y  # finite, no NaN

import math

import numpy as np
import pytest

from twocon.errors import DomainError
from twocon.numeric import (
    LogReal,
    TruncatedPoisson,
    derive_params,
    eta_bar_of,
    eta_of,
    expm1m,
    g,
    log_binomial,
    log_double_factorial,
    log_expm1m,
    p_c_of,
    solve_lambda,
    trunc_poisson_pmf,
)

CS = [2.0001, 2.001, 2.01, 2.5, 3, 4, 6, 10, 20, 40]


def test_solver_residuals():
    for c in CS:
        lam = solve_lambda(c)
        assert abs(g(lam) - c) <= 1e-10


def test_solver_monotone():
    lams = [solve_lambda(c) for c in CS]
    assert all(a < b for a, b in zip(lams, lams[1:]))


def test_c_minus_2pc_identity():
    # c - 2 p_c = lambda_c holds exactly for the truncated Poisson
    for c in CS:
        lam = solve_lambda(c)
        assert abs(c - 2.0 * p_c_of(lam) - lam) <= 1e-9


def test_solver_rejects_c_le_2():
    for c in [2.0, 1.5, 0.0, -1.0]:
        with pytest.raises(DomainError):
            solve_lambda(c)


def test_expm1m_series_matches_direct():
    for lam in [1e-8, 1e-5, 1e-3, 0.01, 0.5, 2.0, 10.0]:
        direct = math.expm1(lam) - lam
        assert expm1m(lam) == pytest.approx(direct, rel=1e-13)


def test_expm1m_tiny_no_cancellation():
    lam = 1e-9
    # leading term lam^2/2; naive expm1(lam) - lam loses most digits
    assert expm1m(lam) == pytest.approx(lam * lam / 2.0, rel=1e-9)


def test_log_expm1m_large():
    assert log_expm1m(50.0) == pytest.approx(
        50.0 + math.log1p(-(51.0) * math.exp(-50.0)), rel=1e-14)
    assert log_expm1m(800.0) == pytest.approx(800.0, rel=1e-12)


def test_logreal_arithmetic():
    a = LogReal.from_float(3.5)
    b = LogReal.from_float(-2.0)
    assert (a * b).to_float() == pytest.approx(-7.0)
    assert (a + b).to_float() == pytest.approx(1.5)
    assert (a - b).to_float() == pytest.approx(5.5)
    assert (a / b).to_float() == pytest.approx(-1.75)
    z = LogReal.zero()
    assert (a + z).to_float() == pytest.approx(3.5)
    assert (a * z).sign == 0


def test_logreal_decimal_string():
    x = LogReal.from_log(math.log(10) * 100 + math.log(2.5))
    assert x.decimal_string() == "2.500000e+100"


def test_log_double_factorial():
    # (2m-1)!! for m = 5: 9!! = 945
    assert log_double_factorial(5).to_float() == pytest.approx(945.0)
    assert log_double_factorial(1).to_float() == pytest.approx(1.0)


def test_log_binomial():
    assert log_binomial(10, 3) == pytest.approx(math.log(120))


def test_trunc_poisson_normalized():
    tp = TruncatedPoisson(2.1491257999070625)
    vals, probs = tp.support_table()
    assert math.fsum(probs) == pytest.approx(1.0, abs=1e-12)
    assert vals[0] == 2
    assert tp.mean() == pytest.approx(g(2.1491257999070625), rel=1e-12)


def test_trunc_poisson_pmf_values():
    lam = 3.0
    z = math.expm1(lam) - lam
    for j in [2, 3, 7]:
        assert trunc_poisson_pmf(lam, j) == pytest.approx(
            lam ** j / (math.factorial(j) * z), rel=1e-12)


def test_eta_of():
    # sum d(d-1) / sum d
    assert eta_of([3, 3, 2, 2]) == pytest.approx(16.0 / 10.0)
    with pytest.raises(DomainError):
        eta_of([2, 1, 3])


def test_eta_bar_consistency():
    lam = solve_lambda(3.0)
    tp = TruncatedPoisson(lam)
    vals, probs = (np.asarray(a, dtype=np.float64)
                   for a in tp.support_table())
    eta_direct = float((vals * (vals - 1.0) * probs).sum() /
                       (vals * probs).sum())
    assert eta_bar_of(lam) == pytest.approx(eta_direct, rel=1e-10)


def test_derive_params():
    p = derive_params(1000, 2000)
    assert 3.58 < p.lambda_c < 3.60
    assert p.r == 2000
    assert p.delta == pytest.approx((p.lambda_c / p.c) ** 2)
    with pytest.raises(DomainError):
        derive_params(1000, 1000)

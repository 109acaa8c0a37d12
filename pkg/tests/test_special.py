import numpy as np
import pytest
import scipy.special

from oracles import betainc_reg_highprec
from rcla.special import beta_quantile, betainc_reg


def test_betainc_frozen_value():
    assert betainc_reg(2.5, 7.0, 0.3) == pytest.approx(0.6412224629717212, rel=1e-12)


def test_betainc_endpoints_and_validation():
    assert betainc_reg(2.0, 3.0, 0.0) == 0.0
    assert betainc_reg(2.0, 3.0, 1.0) == 1.0
    with pytest.raises(ValueError):
        betainc_reg(0.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        betainc_reg(1.0, 1.0, 1.5)


def test_betainc_against_scipy_sweep():
    rng = np.random.default_rng(0)
    for _ in range(300):
        a = float(rng.uniform(0.5, 50.0))
        b = float(rng.uniform(0.5, 50.0))
        x = float(rng.uniform(0.0, 1.0))
        assert betainc_reg(a, b, x) == pytest.approx(
            float(scipy.special.betainc(a, b, x)), rel=5e-13, abs=1e-15
        )


def test_betainc_against_highprec():
    for a, b, x in [(0.5, 0.5, 0.01), (80.5, 20.5, 0.73), (50.0, 0.5, 0.999)]:
        assert betainc_reg(a, b, x) == pytest.approx(
            betainc_reg_highprec(a, b, x), rel=1e-12
        )


def test_betainc_symmetry():
    rng = np.random.default_rng(1)
    for _ in range(100):
        a = float(rng.uniform(0.5, 30.0))
        b = float(rng.uniform(0.5, 30.0))
        x = float(rng.uniform(0.0, 1.0))
        assert betainc_reg(a, b, x) + betainc_reg(b, a, 1.0 - x) == pytest.approx(
            1.0, abs=1e-12
        )


def test_quantile_inverts_cdf():
    rng = np.random.default_rng(2)
    for _ in range(100):
        a = float(rng.uniform(0.5, 50.0))
        b = float(rng.uniform(0.5, 50.0))
        gamma = float(rng.uniform(0.01, 0.99))
        x = beta_quantile(a, b, gamma)
        assert abs(betainc_reg(a, b, x) - gamma) <= 1e-8


def test_quantile_frozen_value():
    # the Jeffreys-posterior case that drives the noise bound
    assert beta_quantile(80.5, 20.5, 0.05) == pytest.approx(
        0.72828969707125757, abs=1e-10
    )


def test_quantile_validation():
    with pytest.raises(ValueError):
        beta_quantile(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        beta_quantile(-1.0, 1.0, 0.5)


def test_quantile_monte_carlo():
    rng = np.random.default_rng(3)
    for a, b, gamma in [(0.5, 5.0, 0.05), (10.0, 2.0, 0.5), (50.0, 50.0, 0.95)]:
        samples = rng.beta(a, b, size=10**6)
        mc = float(np.quantile(samples, gamma))
        assert beta_quantile(a, b, gamma) == pytest.approx(mc, abs=0.005)

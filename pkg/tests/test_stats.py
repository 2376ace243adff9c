import math

import pytest

import moranlab as ml
from moranlab.errors import DomainError, ParameterError
from moranlab.stats import TailBoundQuery


def test_chernoff_zero_theta_gives_one():
    q = TailBoundQuery(N=50, p=0.4, theta=0.0)
    assert ml.chernoff(q, "lower") == 1.0
    assert ml.chernoff(q, "upper") == 1.0


def test_chernoff_lambda_e_gives_one():
    q = TailBoundQuery(N=50, p=0.4, lam=math.e)
    assert ml.chernoff(q, "mult") == pytest.approx(1.0)


def test_chernoff_frozen_value():
    # exponent theta^2 N p / 2 = 0.04 * 50 / 2 = 1
    q = TailBoundQuery(N=100, p=0.5, theta=0.2)
    assert ml.chernoff(q, "lower") == pytest.approx(0.36787944117144233, rel=1e-12)


def test_chernoff_monotone_in_theta_and_mean():
    lo = [ml.chernoff(TailBoundQuery(N=100, p=0.5, theta=t), "lower")
          for t in (0.1, 0.2, 0.4, 0.8)]
    assert all(a > b for a, b in zip(lo, lo[1:]))
    up = [ml.chernoff(TailBoundQuery(N=n, p=0.5, theta=0.3), "upper")
          for n in (10, 100, 1000)]
    assert all(a > b for a, b in zip(up, up[1:]))


def test_chernoff_domain_errors():
    with pytest.raises(DomainError):
        ml.chernoff(TailBoundQuery(N=10, p=0.5, theta=1.5), "lower")
    with pytest.raises(DomainError):
        ml.chernoff(TailBoundQuery(N=10, p=0.5, lam=0.0), "mult")
    with pytest.raises(ParameterError):
        ml.chernoff(TailBoundQuery(N=10, p=0.5), "sideways")


def test_wilson_boundaries():
    lo, hi = ml.binomial_ci(0, 25, 0.95)
    assert lo == 0.0 and hi > 0.0
    lo, hi = ml.binomial_ci(25, 25, 0.95)
    assert hi == 1.0 and lo < 1.0


def test_wilson_frozen_value():
    lo, hi = ml.binomial_ci(50, 100, 0.95)
    assert lo == pytest.approx(0.4038315303659956, abs=1e-9)
    assert hi == pytest.approx(0.5961684696340044, abs=1e-9)


def test_wilson_contains_point_estimate_and_nests():
    for k, n in [(3, 10), (0, 7), (7, 7), (123, 456)]:
        lo95, hi95 = ml.binomial_ci(k, n, 0.95)
        lo99, hi99 = ml.binomial_ci(k, n, 0.99)
        assert lo95 <= k / n <= hi95
        assert lo99 <= lo95 and hi99 >= hi95


def test_wilson_rejects_bad_inputs():
    with pytest.raises(ParameterError):
        ml.binomial_ci(1, 0, 0.95)
    with pytest.raises(ParameterError):
        ml.binomial_ci(5, 3, 0.95)
    with pytest.raises(ParameterError):
        ml.binomial_ci(1, 2, 1.0)

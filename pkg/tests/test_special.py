import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ail2.special import betainc, f_cdf, f_ppf

scipy_special = pytest.importorskip("scipy.special")
scipy_stats = pytest.importorskip("scipy.stats")

DF_GRID = (0.5, 1, 2, 3, 5, 7.5, 10, 19.9, 20, 30, 100, 1000, 1e5, 1e7)
PROBS = (0.025, 0.5, 0.975)


def test_betainc_edges():
    assert betainc(2, 3, 0.0) == 0.0
    assert betainc(2, 3, 1.0) == 1.0
    assert betainc(1, 1, 0.3) == pytest.approx(0.3, abs=1e-15)
    # I_x(a, 1) = x^a
    assert betainc(2.5, 1, 0.4) == pytest.approx(0.4 ** 2.5, rel=1e-13)
    with pytest.raises(ValueError):
        betainc(0, 1, 0.5)
    with pytest.raises(ValueError):
        betainc(1, 1, 1.5)


def test_betainc_against_scipy():
    rng = random.Random(7)
    worst = 0.0
    for _ in range(3000):
        a = 10 ** rng.uniform(-2, 5)
        b = 10 ** rng.uniform(-2, 5)
        x = rng.random()
        if rng.random() < 0.5:  # concentrate near the mode
            x = min(1.0, x * 2 * a / (a + b))
        worst = max(worst, abs(betainc(a, b, x) - scipy_special.betainc(a, b, x)))
    assert worst < 1e-11


def test_betainc_one_large_shape():
    # lgamma(a + b) - lgamma(b) cancels badly here unless handled separately
    u = 1.0 * 0.5 / (1.0 * 0.5 + 1e6)
    assert betainc(0.5, 5e5, u) == pytest.approx(scipy_special.betainc(0.5, 5e5, u), abs=1e-13)


@given(st.floats(0.5, 500), st.floats(0.5, 500), st.floats(0.0, 1.0))
def test_betainc_symmetry(a, b, x):
    assert betainc(a, b, x) == pytest.approx(1.0 - betainc(b, a, 1.0 - x), abs=1e-12)


def test_f_cdf_against_scipy():
    for d1 in (1, 3, 30, 1e4):
        for d2 in (1, 4, 50, 1e6):
            for x in (0.01, 0.5, 1.0, 2.5, 40.0):
                # scipy's own f.cdf loses ~1e-10 for huge dfd; compare to betainc
                u = d1 * x / (d1 * x + d2)
                assert f_cdf(x, d1, d2) == pytest.approx(
                    scipy_special.betainc(d1 / 2, d2 / 2, u), abs=1e-11)
    assert f_cdf(0.0, 2, 2) == 0.0
    assert f_cdf(-1.0, 2, 2) == 0.0
    assert f_cdf(math.inf, 2, 2) == 1.0


def quantile_residuals():
    """(worst |cdf(ppf(p)) - p|, worst relative gap to scipy's quantile)."""
    worst_cdf = worst_rel = 0.0
    for d1 in DF_GRID:
        for d2 in DF_GRID:
            for p in PROBS:
                q = f_ppf(p, d1, d2)
                worst_cdf = max(worst_cdf, abs(f_cdf(q, d1, d2) - p))
                ref = scipy_stats.f.ppf(p, d1, d2)
                worst_rel = max(worst_rel, abs(q - ref) / ref)
    return worst_cdf, worst_rel


def test_quantile_inversion_grid():
    worst_cdf, worst_rel = quantile_residuals()
    assert worst_cdf <= 1e-10
    assert worst_rel < 1e-6


def test_ppf_edges():
    assert f_ppf(0.0, 3, 4) == 0.0
    assert f_ppf(1.0, 3, 4) == math.inf
    with pytest.raises(ValueError):
        f_ppf(1.5, 3, 4)
    with pytest.raises(ValueError):
        f_ppf(0.5, 0, 4)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-6, 1 - 1e-6), st.floats(0.5, 1e4), st.floats(0.5, 1e4))
def test_ppf_round_trip_random(p, d1, d2):
    q = f_ppf(p, d1, d2)
    assert abs(f_cdf(q, d1, d2) - p) <= 1e-10

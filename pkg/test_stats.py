"""
Test the incomplete beta function and the hypothesis tests built on it
"""
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from scipy import special, stats

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from wcgkit.exceptions import DegenerateInputError, DomainError
from wcgkit.models import Alternative
from wcgkit.stats import (
    bonferroni_threshold,
    f_cdf,
    f_sf,
    f_test,
    pearson,
    regularized_incomplete_beta,
    student_t_cdf,
    student_t_sf,
    welch_t,
)


def _random_pairs(count: int = 50, seed: int = 0):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        na, nb = rng.integers(3, 40, size=2)
        a = rng.normal(rng.normal(0, 1), rng.uniform(0.2, 3), size=na)
        b = rng.normal(rng.normal(0, 1), rng.uniform(0.2, 3), size=nb)
        yield a, b


def test_incomplete_beta_identities():
    for a, b in [(0.5, 0.5), (2.0, 3.0), (10.0, 1.5)]:
        assert regularized_incomplete_beta(a, b, 0.0) == 0.0
        assert regularized_incomplete_beta(a, b, 1.0) == 1.0
    for x in (0.1, 0.37, 0.9):
        assert regularized_incomplete_beta(1.0, 1.0, x) == pytest.approx(x, abs=1e-15)
    assert regularized_incomplete_beta(2.0, 3.0, 0.5) == pytest.approx(0.6875, abs=1e-10)


@pytest.mark.parametrize("a,b", [(0.5, 0.5), (2.0, 3.0), (7.5, 0.5), (30.0, 45.0), (1.0, 4.0), (3.0, 1.0)])
def test_incomplete_beta_matches_scipy(a, b):
    for x in np.linspace(0.01, 0.99, 25):
        assert regularized_incomplete_beta(a, b, x) == pytest.approx(special.betainc(a, b, x), abs=1e-11)


def test_incomplete_beta_domain():
    with pytest.raises(DomainError):
        regularized_incomplete_beta(0.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        regularized_incomplete_beta(1.0, 1.0, 1.5)


@hyp_settings(max_examples=200, deadline=None)
@given(st.floats(0.1, 50.0), st.floats(0.1, 50.0), st.floats(1e-6, 1.0 - 1e-6))
def test_incomplete_beta_reflection(a, b, x):
    # Near 0 or 1, 1 - x rounds away the mass the reflection has to recover
    value = regularized_incomplete_beta(a, b, x)
    assert 0.0 <= value <= 1.0
    assert value == pytest.approx(1.0 - regularized_incomplete_beta(b, a, 1.0 - x), abs=1e-10)


def test_incomplete_beta_at_tiny_x():
    x = 2.157622142760522e-61
    assert regularized_incomplete_beta(0.125, 1.0, x) == pytest.approx(x ** 0.125, rel=1e-9)
    assert regularized_incomplete_beta(1.0, 0.125, 1.0 - x) == 1.0


def test_student_t_distribution():
    assert student_t_sf(0.0, 5.0) == 0.5
    assert student_t_cdf(0.0, 5.0) == 0.5
    grid = np.linspace(-8, 8, 161)
    cdf = np.array([student_t_cdf(t, 7.3) for t in grid])
    assert np.all(np.diff(cdf) > 0)
    for t in (-3.0, -0.4, 1.2, 5.0):
        assert student_t_sf(t, 7.3) == pytest.approx(stats.t.sf(t, 7.3), abs=1e-11)


def test_f_distribution():
    for f in (0.2, 1.0, 3.7):
        assert f_cdf(f, 4.0, 9.0) + f_sf(f, 4.0, 9.0) == pytest.approx(1.0, abs=1e-12)
        assert f_sf(f, 4.0, 9.0) == pytest.approx(stats.f.sf(f, 4.0, 9.0), abs=1e-11)
    assert f_cdf(0.0, 3.0, 3.0) == 0.0
    assert f_sf(0.0, 3.0, 3.0) == 1.0
    with pytest.raises(DomainError):
        f_cdf(1.0, 0.0, 3.0)


def test_pearson_examples():
    x = np.arange(1.0, 11.0)
    assert pearson(x, 2 * x + 3) == pytest.approx(1.0, abs=1e-12)
    assert pearson(x, -x) == pytest.approx(-1.0, abs=1e-12)
    assert pearson([1, 2, 3, 4, 5], [2, 1, 4, 3, 5]) == pytest.approx(0.8, abs=1e-12)


def test_pearson_matches_scipy_and_affine_maps():
    rng = np.random.default_rng(1)
    x, y = rng.random(30), rng.random(30)
    r = pearson(x, y)
    assert r == pytest.approx(stats.pearsonr(x, y)[0], abs=1e-12)
    assert pearson(3.0 * x - 1.0, 0.5 * y + 7.0) == pytest.approx(r, abs=1e-12)


def test_pearson_degenerate_inputs():
    with pytest.raises(DegenerateInputError):
        pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(DegenerateInputError):
        pearson([1.0, 2.0], [1.0, 2.0, 3.0])
    with pytest.raises(DegenerateInputError):
        pearson([1.0], [2.0])


def test_welch_examples():
    a = np.array([1.0, 2.0, 3.0, 4.0])
    same = welch_t(a, a)
    assert same.statistic == 0.0
    assert same.p_value == 1.0

    shifted = welch_t(a, a + 10.0)
    assert shifted.df[0] == pytest.approx(6.0, abs=1e-9)

    b = np.array([10.0, 11.0, 12.0, 13.0])
    result = welch_t(a, b)
    reference = stats.ttest_ind(a, b, equal_var=False)
    assert result.test == "welch_t"
    assert result.statistic == pytest.approx(reference.statistic, abs=1e-9)
    assert result.p_value == pytest.approx(reference.pvalue, abs=1e-9)


@pytest.mark.parametrize("alternative", list(Alternative))
def test_welch_matches_scipy(alternative):
    for a, b in _random_pairs():
        result = welch_t(a, b, alternative)
        reference = stats.ttest_ind(a, b, equal_var=False, alternative=alternative.value)
        assert result.statistic == pytest.approx(reference.statistic, rel=1e-9)
        assert result.p_value == pytest.approx(reference.pvalue, abs=1e-9)


@pytest.mark.parametrize("alternative", list(Alternative))
def test_f_test_matches_scipy(alternative):
    for a, b in _random_pairs(seed=2):
        result = f_test(a, b, alternative)
        d1, d2 = len(a) - 1, len(b) - 1
        f = np.var(a, ddof=1) / np.var(b, ddof=1)
        if alternative == Alternative.GREATER:
            expected = stats.f.sf(f, d1, d2)
        elif alternative == Alternative.LESS:
            expected = stats.f.cdf(f, d1, d2)
        else:
            expected = min(1.0, 2 * min(stats.f.cdf(f, d1, d2), stats.f.sf(f, d1, d2)))
        assert result.statistic == pytest.approx(f, rel=1e-12)
        assert result.df == (float(d1), float(d2))
        assert result.p_value == pytest.approx(expected, abs=1e-9)


def test_f_test_examples():
    a = np.array([1.0, 2.0, 3.0, 4.0])
    b = np.array([10.0, 11.0, 12.0, 13.0])
    result = f_test(a, b, Alternative.GREATER)
    assert result.statistic == 1.0
    assert result.p_value == pytest.approx(f_sf(1.0, 3.0, 3.0), abs=1e-15)

    rng = np.random.default_rng(5)
    x, y = rng.random(12), rng.random(9)
    assert f_test(x, y).statistic * f_test(y, x).statistic == pytest.approx(1.0, abs=1e-12)


def test_tests_reject_degenerate_samples():
    with pytest.raises(DegenerateInputError):
        welch_t([1.0, 1.0], [2.0, 2.0])
    with pytest.raises(DegenerateInputError):
        welch_t([1.0], [2.0, 3.0])
    with pytest.raises(DegenerateInputError):
        f_test([1.0, 2.0], [3.0, 3.0])
    with pytest.raises(DomainError):
        welch_t([1.0, np.nan], [2.0, 3.0])


def test_bonferroni_threshold():
    assert bonferroni_threshold(0.05, 4) == 0.0125
    with pytest.raises(DomainError):
        bonferroni_threshold(0.05, 0)
    with pytest.raises(DomainError):
        bonferroni_threshold(1.5, 2)

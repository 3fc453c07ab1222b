"""Tests for Mallows' Cp degree selection."""

import math

import numpy as np
import pytest

from app.domain.approximation import (
    cp_scores,
    mallows_cp_select,
    residual_sums,
    tail_noise_floor,
)
from app.modules.chebyshev import ChebyshevSeries


def test_residual_sums_structure():
    series = ChebyshevSeries([1.0, 0.5, -0.25, 0.1])
    rss = residual_sums(series)
    assert rss.size == 4
    assert rss[-1] == 0.0
    assert np.all(np.diff(rss) <= 0)
    # each step removes one coefficient's energy, doubled at the last index
    assert rss[0] - rss[1] == pytest.approx(2.0 * 0.25)
    assert rss[2] == pytest.approx(2.0 * 2 * 0.01)


def test_clean_series_selects_last_nonzero_degree():
    series = ChebyshevSeries([1.0, 0.5, 0.25, 0.0, 0.0, 0.0])
    assert mallows_cp_select(series, 0.0) == 2


def test_large_noise_floor_selects_constant():
    series = ChebyshevSeries([1.0, 0.01, 0.01, 0.01])
    assert mallows_cp_select(series, 10.0) == 0


def test_ties_go_to_smallest_degree():
    series = ChebyshevSeries([1.0, 0.0, 0.0])
    assert mallows_cp_select(series, 0.0) == 0


def test_max_degree_limits_the_search():
    series = ChebyshevSeries([1.0, 0.5, 0.25, 0.125])
    assert mallows_cp_select(series, 0.0, max_degree=1) == 1
    assert cp_scores(series, 0.0, max_degree=2).size == 3


def test_cp_penalty_grows_linearly():
    series = ChebyshevSeries(np.zeros(5))
    scores = cp_scores(series, 0.5)
    np.testing.assert_allclose(scores, 2 * np.arange(1, 6) * 0.5)


def test_selection_separates_signal_from_noise():
    rng = np.random.default_rng(4)
    n = 200
    sigma2 = 1e-4
    coeffs = rng.standard_normal(n + 1) * math.sqrt(2 * sigma2 / (n + 1))
    coeffs[:6] += [1.0, -0.5, 0.3, 0.2, -0.1, 0.05]
    chosen = mallows_cp_select(ChebyshevSeries(coeffs), sigma2)
    assert 5 <= chosen < 40


@pytest.mark.parametrize("floor", [-1.0, float("nan")])
def test_invalid_noise_floor(floor):
    with pytest.raises(ValueError, match="Noise floor"):
        cp_scores(ChebyshevSeries([1.0, 2.0]), floor)


def test_invalid_max_degree():
    with pytest.raises(ValueError, match="max_degree"):
        cp_scores(ChebyshevSeries([1.0, 2.0]), 0.0, max_degree=2)


def test_tail_noise_floor():
    series = ChebyshevSeries([1.0] * 9 + [0.2])
    assert tail_noise_floor(series) == pytest.approx(5 * 0.04)


def test_tail_noise_floor_recovers_white_noise_level():
    rng = np.random.default_rng(9)
    n = 2000
    sigma2 = 0.01
    coeffs = rng.standard_normal(n + 1) * math.sqrt(2 * sigma2 / (n + 1))
    assert tail_noise_floor(ChebyshevSeries(coeffs)) == pytest.approx(sigma2, rel=0.35)

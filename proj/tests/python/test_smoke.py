"""End-to-end smoke tests for the padicroots Python package."""

import re
from fractions import Fraction

import pytest

import padicroots


def test_version_string():
    assert re.fullmatch(r"\d+\.\d+\.\d+", padicroots.__version__)


def test_count_roots_basic():
    total, per_residue = padicroots.count_roots([-1, 0, 1], 5)
    assert total == 2
    assert per_residue == [0, 1, 0, 0, 1]

    total, _ = padicroots.count_roots([-2, 0, 1], 2)
    assert total == 0


def test_count_roots_big_integers():
    # 10**30 = (10**15)**2 is a perfect square, and 10**15 = 0 mod 5
    total, per_residue = padicroots.count_roots([-(10**30), 0, 1], 5)
    assert total == 2
    assert per_residue[0] == 2


def test_count_roots_rejects_garbage():
    with pytest.raises(ValueError):
        padicroots.count_roots(["not a number", 1], 5)


def test_count_henselian():
    count, all_simple = padicroots.count_henselian([-17, 0, 1], 2, 5, 3)
    assert count == 2
    assert all_simple is True


def test_no_root_poly_count():
    # a monic linear polynomial always has a root
    assert padicroots.no_root_poly_count(1, 2) == 0
    # over F_2 only x^2 + x + 1 is rootless among the four monic quadratics
    assert padicroots.no_root_poly_count(2, 2) == 1
    assert padicroots.no_root_poly_count(6, 2) == 16  # 64 - 2*32 + 16


def test_gamma_values():
    assert padicroots.gamma(2, 1) == Fraction(1, 3)
    assert padicroots.gamma(3, 1) == Fraction(1, 2)
    assert padicroots.gamma(2, 2) == Fraction(13, 558)


def test_theoretical_mean_variance():
    mean, variance = padicroots.theoretical_mean_variance(2)
    assert mean == Fraction(1, 3)
    assert variance == Fraction(25, 93)
    mean3, variance3 = padicroots.theoretical_mean_variance(3)
    assert mean3 == Fraction(1, 2)
    assert variance3 == Fraction(50, 121)


def test_moment_table():
    table = padicroots.MomentTable(2)
    assert table.gamma(1) == Fraction(1, 3)
    assert table.alpha(1, 1) == Fraction(1)
    assert table.beta(3, 4) == Fraction(0)  # fewer coefficients than roots asked
    assert table.alpha_stable(2) == table.alpha(4, 2)
    assert table.series_identity_check(4) is True


def test_estimate_linear_is_exact():
    report = padicroots.estimate(3, [-1, 1], degree=1, samples=50, seed=1)
    assert report["mean_exact"] == Fraction(1)
    assert report["stderr"] == 0.0
    assert report["samples_used"] == 50


def test_estimate_deterministic():
    kwargs = dict(degree=12, d=1, samples=400, seed=9, workers=2)
    a = padicroots.estimate(3, [-1, 0, 1], **kwargs)
    b = padicroots.estimate(3, [-1, 0, 1], **kwargs)
    assert a["mean_exact"] == b["mean_exact"]
    assert a["mean"] == b["mean"]


def test_assumption_error_exposed():
    assert issubclass(padicroots.AssumptionError, Exception)

"""Exact root counting and factorial moments for random polynomials over Z_p.

The heavy lifting lives in the compiled ``_core`` extension; this package
converts its decimal-string rationals into :class:`fractions.Fraction` so the
exactness survives the language boundary.
"""

from fractions import Fraction
from typing import Iterable, List, Tuple

from . import _core

__version__ = _core.__version__
AssumptionError = _core.AssumptionError

__all__ = [
    "AssumptionError",
    "MomentTable",
    "count_henselian",
    "count_roots",
    "estimate",
    "gamma",
    "no_root_poly_count",
    "theoretical_mean_variance",
]


def _fraction(pair: Tuple[str, str]) -> Fraction:
    return Fraction(int(pair[0]), int(pair[1]))


def count_roots(coefficients: Iterable[int], p: int) -> Tuple[int, List[int]]:
    """Distinct roots of the polynomial (constant term first) in Z_p.

    Returns ``(total, per_residue)`` where ``per_residue[r]`` counts the roots
    congruent to r mod p.
    """
    coeffs = [str(int(c)) for c in coefficients]
    total, per_residue = _core.count_roots(coeffs, int(p))
    return total, list(per_residue)


def count_henselian(residues: Iterable[int], p: int, precision: int, k: int) -> Tuple[int, bool]:
    """k-Henselian root count of a polynomial known modulo p**precision."""
    res = [str(int(r)) for r in residues]
    count, all_simple = _core.count_henselian(res, int(p), int(precision), int(k))
    return count, all_simple


def no_root_poly_count(degree: int, p: int) -> int:
    """Monic residue polynomials of the given degree with no root mod p."""
    return int(_core.no_root_poly_count(int(degree), int(p)))


def theoretical_mean_variance(p: int) -> Tuple[Fraction, Fraction]:
    """Limiting mean and variance of the unit-conditioned root count."""
    mean, variance = _core.theoretical_mean_variance(int(p))
    return _fraction(mean), _fraction(variance)


class MomentTable:
    """Exact factorial moments alpha(n, d), beta(n, d), gamma(d) over Q."""

    def __init__(self, p: int):
        self._table = _core.MomentTable(int(p))

    def alpha(self, n: int, d: int) -> Fraction:
        return _fraction(self._table.alpha(int(n), int(d)))

    def beta(self, n: int, d: int) -> Fraction:
        return _fraction(self._table.beta(int(n), int(d)))

    def alpha_stable(self, d: int) -> Fraction:
        return _fraction(self._table.alpha_stable(int(d)))

    def beta_stable(self, d: int) -> Fraction:
        return _fraction(self._table.beta_stable(int(d)))

    def gamma(self, d: int) -> Fraction:
        return _fraction(self._table.gamma(int(d)))

    def series_identity_check(self, d_max: int) -> bool:
        return self._table.series_identity_check(int(d_max))


def gamma(p: int, d: int) -> Fraction:
    """gamma(d): limiting d-th factorial moment at the prime p."""
    return MomentTable(p).gamma(d)


def estimate(
    p: int,
    values: Iterable[int],
    degree: int,
    d: int = 1,
    samples: int = 1000,
    seed: int = 0,
    workers: int = 1,
    unit_constant_term: bool = False,
) -> dict:
    """Seeded Monte Carlo estimate of E[binom(N, d)] for monic polynomials.

    Coefficients are uniform on ``values``; the report's ``mean_exact`` is a
    Fraction and the run is deterministic for fixed (seed, workers).
    """
    report = _core.estimate(
        int(p),
        [str(int(v)) for v in values],
        int(degree),
        int(d),
        int(samples),
        int(seed),
        int(workers),
        bool(unit_constant_term),
    )
    report["mean_exact"] = _fraction(report["mean_exact"])
    return report

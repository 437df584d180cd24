"""Exact sphere moments vs Gamma-function and Monte-Carlo oracles."""

from __future__ import annotations

import math

import numpy as np
import pytest

from spectral_torsion import (
    Multivector,
    XiPolynomialMV,
    integrate_sphere,
    moment,
    rational,
    vol_numeric,
    vol_sphere,
)
from spectral_torsion.moments import xi_monomial
from spectral_torsion.scalars import SymScalar


def gamma_moment_full(n: int, alpha) -> float:
    """Independent closed form: 2 prod Gamma((a_i+1)/2) / Gamma((n+|a|)/2)."""
    if any(a % 2 for a in alpha):
        return 0.0
    prod = 1.0
    for a in alpha:
        prod *= math.gamma((a + 1) / 2.0)
    return 2.0 * prod / math.gamma((n + sum(alpha)) / 2.0)


def eval_moment(n, alpha) -> float:
    s = moment(n, alpha)
    return s.evaluate({vol_sphere(n - 1): vol_numeric(n - 1)}).real


def test_odd_moment_vanishes():
    assert moment(4, (1, 1, 0, 0)).is_zero()
    assert moment(6, (1, 0, 0, 0, 0, 0)).is_zero()


def test_second_moment():
    assert moment(4, (2, 0, 0, 0)) == SymScalar.from_atom(vol_sphere(3), rational("1/4"))
    assert moment(6, (0, 2, 0, 0, 0, 0)) == SymScalar.from_atom(vol_sphere(5), rational("1/6"))


def test_fourth_moment_gamma_oracle():
    # against the independent Gamma formula
    assert moment(4, (4, 0, 0, 0)) == SymScalar.from_atom(vol_sphere(3), rational("1/8"))
    assert eval_moment(4, (4, 0, 0, 0)) == pytest.approx(gamma_moment_full(4, (4, 0, 0, 0)), rel=1e-12)
    assert eval_moment(4, (2, 2, 0, 0)) == pytest.approx(gamma_moment_full(4, (2, 2, 0, 0)), rel=1e-12)
    assert eval_moment(6, (2, 2, 2, 0, 0, 0)) == pytest.approx(
        gamma_moment_full(6, (2, 2, 2, 0, 0, 0)), rel=1e-12)


def test_permutation_symmetry(rng):
    n = 6
    alpha = (4, 2, 0, 2, 0, 0)
    base = moment(n, alpha)
    for _ in range(10):
        perm = list(alpha)
        rng.shuffle(perm)
        assert moment(n, tuple(perm)) == base


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_second_moments_sum_to_volume(n):
    total = SymScalar.zero()
    for i in range(1, n + 1):
        total = total + moment(n, xi_monomial(n, i, i))
    assert total == SymScalar.from_atom(vol_sphere(n - 1))


def test_vol_numeric_values():
    assert vol_numeric(1) == pytest.approx(2 * math.pi, rel=1e-14)
    assert vol_numeric(3) == pytest.approx(2 * math.pi ** 2, rel=1e-14)
    assert vol_numeric(5) == pytest.approx(math.pi ** 3, rel=1e-14)


def test_monte_carlo_agreement():
    # quasi-independent check: 10^6 normalized Gaussian points on S^3
    n = 4
    gen = np.random.default_rng(12345)
    points = gen.standard_normal((1_000_000, n))
    points /= np.linalg.norm(points, axis=1, keepdims=True)
    for alpha in [(2, 0, 0, 0), (2, 2, 0, 0), (4, 0, 0, 0), (2, 0, 2, 0)]:
        sample_mean = np.prod(points ** np.array(alpha), axis=1).mean()
        exact_mean = eval_moment(n, alpha) / vol_numeric(n - 1)
        assert sample_mean == pytest.approx(exact_mean, rel=0.01)
    # an odd monomial averages to ~0
    odd = np.prod(points ** np.array((1, 1, 0, 0)), axis=1).mean()
    assert abs(odd) < 1e-3


def test_integrate_sphere_odd_term_dies():
    n = 4
    p = XiPolynomialMV(n, n, {xi_monomial(n, 1): Multivector.generator(n, 1)})
    assert integrate_sphere(n, p).is_zero()


def test_integrate_sphere_sums_to_volume():
    n = 4
    terms = {xi_monomial(n, i, i): Multivector.identity(n) for i in range(1, n + 1)}
    out = integrate_sphere(n, XiPolynomialMV(n, n, terms))
    assert out == Multivector.identity(n).scale(SymScalar.from_atom(vol_sphere(3)))


def test_integrate_sphere_mixed_term_dies():
    n = 4
    terms = {
        xi_monomial(n, 1, 2): Multivector.blade(n, 0b11),
        xi_monomial(n, 1, 1): Multivector.identity(n),
    }
    out = integrate_sphere(n, XiPolynomialMV(n, n, terms))
    assert out == Multivector.identity(n).scale(
        SymScalar.from_atom(vol_sphere(3), rational("1/4")))

import math

import numpy as np
import pytest
from hypothesis import given

from conftest import exppolys
from halfplane import NonFinite, QuadConfig, WeightExpr
from halfplane.exppoly import weighted_moment
from halfplane.quad import (convolve_numeric, gauss_kronrod, integrate_halfline, integrate_interval,
                            integrate_real_line, integrate_vertical)

CFG = QuadConfig()

# midpoint sums with 1e6 cells, computed once and frozen
RIEMANN_CONV_T1 = 0.014980796431864108  # (u * u)(1), u = 1/(2 pi (1 + t^2))


def test_gauss_kronrod_exact_on_polynomials():
    res = gauss_kronrod(lambda x: 5 * x**4 - 3 * x**2 + 1, [0.0, 2.0], CFG)
    assert res.value == pytest.approx(32 - 8 + 2, rel=1e-15)
    assert res.converged and res.n_intervals == 1


def test_halfline_examples():
    assert integrate_halfline(lambda t: np.exp(-t)).value == pytest.approx(1.0, rel=1e-12)
    res = integrate_halfline(lambda t: 1 / (2 * np.pi * (1 + t**2)), real=True)
    assert abs(res.value - 0.25) < 1e-10
    sing = integrate_halfline(lambda t: t**-0.5 * np.exp(-t), real=True)
    assert sing.value == pytest.approx(math.sqrt(math.pi), rel=1e-10)


def test_interval_with_singularity_at_origin():
    res = integrate_interval(lambda x: np.log(x) / np.sqrt(x), 0.0, 1.0, real=True)
    assert res.value == pytest.approx(-4.0, rel=1e-10)


def test_interval_singularity_at_nonzero_end_stays_finite():
    # t cannot approach 1 closer than eps, which costs about 2 sqrt(eps)
    res = integrate_interval(lambda x: 1 / np.sqrt(x * (1 - x)), 0.0, 1.0, real=True)
    assert abs(res.value - math.pi) < 4 * math.sqrt(np.finfo(float).eps)


def test_vertical_examples():
    # |1/(z+1)|^2 on Re z = r integrates to pi/(r+1)
    F = lambda z: 1 / (z + 1)
    assert integrate_vertical(F, 0.0).value == pytest.approx(math.pi, rel=1e-10)
    assert integrate_vertical(F, 1.0).value == pytest.approx(math.pi / 2, rel=1e-10)
    assert integrate_real_line(lambda s: 1 / (1 + s**2), real=True).value == pytest.approx(math.pi)


def test_vertical_batch_is_accurate_per_member():
    r = np.geomspace(1e-3, 1e6, 40)
    res = integrate_vertical(lambda z: 1 / (z + 1), r)
    assert np.all(np.abs(res.value * (1 + r) / math.pi - 1) < 1e-9)


def test_convolution_examples():
    res = convolve_numeric(lambda t: np.exp(-t), lambda t: np.exp(-t), 1.0)
    assert complex(res.value) == pytest.approx(math.exp(-1), rel=1e-12)
    res = convolve_numeric(lambda t: np.ones_like(t), lambda t: np.ones_like(t), 2.0)
    assert float(res) == pytest.approx(2.0, rel=1e-13)


def test_convolution_against_riemann_oracle():
    u = lambda t: 1 / (2 * np.pi * (1 + t**2))
    res = convolve_numeric(u, u, 1.0)
    assert abs(float(res) - RIEMANN_CONV_T1) < 1e-12


def test_convolution_rejects_nonpositive_t():
    with pytest.raises(ValueError):
        convolve_numeric(np.exp, np.exp, 0.0)


def test_nonfinite_integrand_is_reported():
    with pytest.raises(NonFinite):
        integrate_halfline(lambda t: np.where(t > 1, np.nan, np.exp(-t)))


def test_subdivision_budget_exhaustion_is_flagged():
    res = integrate_halfline(lambda t: np.sin(50 * t) * np.exp(-t), QuadConfig(max_subdivisions=1))
    assert not res.converged


def test_invalid_config():
    with pytest.raises(ValueError):
        QuadConfig(rel_tol=0)
    with pytest.raises(ValueError):
        QuadConfig(max_subdivisions=0)


_REGRESSION = [
    lambda t: np.exp(-t),
    lambda t: t**-0.5 * np.exp(-t),
    lambda t: 1 / (1 + t**2),
    lambda t: np.sin(5 * t) * np.exp(-t / 3),
    lambda t: t**3 * np.exp(-0.2 * t),
    lambda t: np.log(t) ** 2 * np.exp(-t),
]


@pytest.mark.parametrize("f", _REGRESSION)
def test_halving_tolerance_never_increases_error(f):
    errs = [integrate_halfline(f, QuadConfig(rel_tol=tol, abs_tol=1e-15)).error
            for tol in (1e-6, 5e-7, 2.5e-7, 1.25e-7, 6.25e-8)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))


@given(exppolys(max_terms=3, max_power=3))
def test_halfline_matches_symbolic_moment(f):
    w = WeightExpr.monomial(1.0) + WeightExpr.monomial(2.0, 2.0)
    exact = weighted_moment(f, f, w).real
    res = integrate_halfline(lambda t: np.abs(f(t)) ** 2 * w(t), CFG, real=True)
    assert res.converged
    assert abs(res.value - exact) <= max(CFG.abs_tol, CFG.rel_tol * abs(exact))

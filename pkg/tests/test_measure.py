import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from halfplane import EmptyGrid, InvalidSpec, MeasureSpec, delta2_check
from halfplane.measure import cumulative, default_grid, tail_ratio_bound


def test_cumulative_examples():
    assert cumulative(MeasureSpec.atom(0, 1), 1.0) == 1.0
    assert cumulative(MeasureSpec.power(1, 0), 2.0) == 2.0
    assert cumulative(MeasureSpec.power(1, 0.5), 2.25) == pytest.approx(2.25, rel=1e-15)
    assert cumulative(MeasureSpec.atom(0, 1), 0.0) == 0.0


def test_cumulative_interval_is_half_open():
    mu = MeasureSpec.atom(1.0, 2.0)
    assert cumulative(mu, 1.0) == 0.0
    assert cumulative(mu, 1.0 + 1e-12) == 2.0


def test_cumulative_rejects_negative_radius():
    with pytest.raises(ValueError):
        cumulative(MeasureSpec.atom(0, 1), -0.5)


@pytest.mark.parametrize("kwargs", [
    {"atoms": ((0.0, 0.0),)},
    {"atoms": ((-1.0, 1.0),)},
    {"atoms": ((0.0, math.nan),)},
    {"powers": ((0.0, 1.0),)},
    {"powers": ((1.0, -1.0),)},
    {"powers": ((1.0, math.inf),)},
    {},
])
def test_invalid_measures(kwargs):
    with pytest.raises(InvalidSpec):
        MeasureSpec(**kwargs)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.5])
def test_delta2_power_ratio_is_constant(alpha):
    rep = delta2_check(MeasureSpec.power(3.0, alpha), default_grid())
    assert rep.holds
    assert rep.value == pytest.approx(2.0 ** (alpha + 1), rel=1e-13)
    assert rep.details["tail_bound"] == pytest.approx(2.0 ** (alpha + 1))


def test_delta2_atom_at_origin():
    rep = delta2_check(MeasureSpec.atom(0, 1), default_grid())
    assert rep.holds and rep.value == 1.0


def test_delta2_atom_away_from_origin_hit_by_grid():
    rep = delta2_check(MeasureSpec.atom(5.0, 1.0), [1.0, 2.0, 4.0, 8.0])
    assert rep.verdict == "fails"
    assert rep.witness == 4.0
    assert rep.margin < 0


def test_delta2_atom_missed_by_grid_is_exact_failure():
    rep = delta2_check(MeasureSpec.atom(0.01, 1.0), [1.0, 2.0])
    assert rep.verdict == "fails" and rep.method == "exact"
    assert rep.witness == 0.01


def test_delta2_grid_validation():
    with pytest.raises(EmptyGrid):
        delta2_check(MeasureSpec.atom(0, 1), [])
    with pytest.raises(ValueError):
        delta2_check(MeasureSpec.atom(0, 1), [2.0, 1.0])
    with pytest.raises(ValueError):
        delta2_check(MeasureSpec.atom(0, 1), [0.0, 1.0])


measures = st.builds(
    lambda m0, ps: MeasureSpec(atoms=((0.0, m0),), powers=tuple(ps)),
    st.floats(0.01, 10),
    st.lists(st.tuples(st.floats(0.01, 10), st.floats(-0.9, 3.0)), max_size=3),
)


@given(measures)
def test_delta2_bounded_by_componentwise_ratio(mu):
    rep = delta2_check(mu, default_grid())
    assert rep.holds
    assert rep.value <= tail_ratio_bound(mu) * (1 + 1e-12)


@given(measures, st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_cumulative_is_monotone(mu, r1, r2):
    lo, hi = sorted((r1, r2))
    assert cumulative(mu, lo) <= cumulative(mu, hi)


@given(st.floats(0.1, 5), st.floats(-0.9, 3.0), st.floats(0.01, 50))
def test_cumulative_matches_quadrature(c, alpha, r):
    # scipy's algebraic-weight rule integrates r**alpha exactly at the endpoint
    ref, _ = integrate.quad(lambda x: c, 0, r, weight="alg", wvar=(alpha, 0), epsabs=0, epsrel=1e-13)
    assert cumulative(MeasureSpec.power(c, alpha), r) == pytest.approx(ref, rel=1e-12)


def test_laplace_stieltjes_matches_quadrature():
    mu = MeasureSpec(atoms=((0.5, 2.0),), powers=((1.5, 0.5),))
    for t in (0.1, 1.0, 7.0):
        dens, _ = integrate.quad(lambda r: 1.5 * r**0.5 * np.exp(-2 * r * t), 0, np.inf,
                                 epsabs=0, epsrel=1e-12)
        expect = 2.0 * math.exp(-t) + dens
        assert mu.laplace_stieltjes(t) == pytest.approx(expect, rel=1e-10)


def test_json_roundtrip():
    mu = MeasureSpec(atoms=((0.0, 1.0), (2.0, 0.5)), powers=((1.0, -0.5),))
    assert MeasureSpec.from_json(mu.to_json()) == mu

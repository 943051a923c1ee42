import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import exp1

from halfplane import (AnalyticFn, CarlesonMeasureSpec, ExpPoly, NotMultiplier,
                       carleson_constant_estimate, hinf_norm, kernel_eigen_check, l2w_norm,
                       multiplier_lower_bound, preset, quasi_carleson_exact,
                       quasi_carleson_integral, total_weight)
from halfplane.corpus import random_exppolys, random_multipliers, random_points

E = ExpPoly.exp
RES = AnalyticFn(E(1.0))  # 1/(z+1)

# |h'|^2 dnu_1 on the Dirichlet space, h = 1/(z+1), tested at z = 1; scipy
# double integral of |h' k_z|^2 with k_z(s) = e^s E1(s), frozen
DIRICHLET_CARLESON_Z1 = 0.11768821828109204


def test_hinf_examples():
    assert hinf_norm(2.5) == 2.5
    assert hinf_norm(RES) == pytest.approx(1.0)
    assert hinf_norm(AnalyticFn(E(1.0) * 2.0, -1.0)) == pytest.approx(1.0, rel=1e-9)


def test_multiplier_lower_bound_examples():
    sp = preset("hardy")
    assert multiplier_lower_bound(2.0, sp, [E(1.0), E(2.0)]) == pytest.approx(2.0)
    # ||t e^-t|| / ||e^-t|| = (1/4)^(1/2) / (1/2)^(1/2)
    assert multiplier_lower_bound(RES, sp, [E(1.0)]) == pytest.approx(math.sqrt(0.5), rel=1e-14)


def test_not_multiplier_carries_witness():
    h = AnalyticFn(ExpPoly.one())  # 1/z blows up at the boundary point 0
    f = E(1.0)
    with pytest.raises(NotMultiplier) as info:
        multiplier_lower_bound(h, preset("hardy"), [f])
    assert info.value.witness == f


def test_hardy_multiplier_bound_below_sup_norm():
    # on an order-zero space the multiplier norm equals the sup norm
    sp = preset("hardy")
    fs = random_exppolys(4, 20, space=sp)
    for h in random_multipliers(1, 20):
        assert multiplier_lower_bound(h, sp, fs) <= hinf_norm(h) * (1 + 1e-9)


def test_kernel_eigen_identity_example():
    rep = kernel_eigen_check(RES, E(2.0), preset("dirichlet"), 1.0 + 0.5j)
    assert rep.holds and rep.value < 1e-10
    assert rep.details["product_of_values"] == pytest.approx(1 / ((2 + 0.5j) * (3 + 0.5j)))


def test_quasi_carleson_worked_value():
    sp = preset("dirichlet")
    assert quasi_carleson_integral(RES, RES, sp, 1) == pytest.approx(3 / 32, abs=1e-12)
    assert quasi_carleson_exact(RES, RES, sp, 1) == pytest.approx(3 / 32, abs=1e-15)


def test_quasi_carleson_trivial_cases():
    sp = preset("dirichlet")
    assert quasi_carleson_integral(3.0, RES, sp, 1) == 0.0
    assert quasi_carleson_integral(RES, AnalyticFn(), sp, 1) == 0.0
    with pytest.raises(ValueError):
        quasi_carleson_integral(RES, RES, sp, 2)


def test_quasi_carleson_numeric_matches_exact():
    sp = preset("dirichlet")
    for h, f in zip(random_multipliers(5, 4), random_exppolys(6, 4, space=sp)):
        F = AnalyticFn(f)
        assert quasi_carleson_integral(h, F, sp, 1) == pytest.approx(
            quasi_carleson_exact(h, F, sp, 1), rel=1e-8, abs=1e-14)


def test_multiplier_bound_within_carleson_constant():
    sp = preset("dirichlet")
    fs = random_exppolys(8, 12, space=sp)
    w = total_weight(sp)
    for h in random_multipliers(9, 6):
        c1 = max(quasi_carleson_exact(h, AnalyticFn(f), sp, 1) / l2w_norm(f, w) ** 2 for f in fs)
        bound = 2 * math.sqrt(hinf_norm(h) ** 2 + c1)
        assert multiplier_lower_bound(h, sp, fs) <= bound


def test_carleson_identity_measure_is_one():
    for name in ("hardy", "bergman(0)"):
        sp = preset(name)
        mu = CarlesonMeasureSpec(space=sp, n=0, k=0, h=AnalyticFn(ExpPoly(), 1.0))
        vals = carleson_constant_estimate(mu, sp, [1.0, 0.5 + 2j, 0.2 - 1j], return_all=True)
        assert np.allclose(vals, 1.0, rtol=1e-8)


def test_carleson_zero_measure():
    assert carleson_constant_estimate(CarlesonMeasureSpec(), preset("hardy"), [1.0]) == 0.0


def test_carleson_point_mass():
    # |k_z(z0)|^2 / ||k_z||^2 at z = z0 is ||k_{z0}||^2 = 1 / (2 Re z0) in Hardy
    mu = CarlesonMeasureSpec(point_masses=((2.0, 1.0),))
    assert carleson_constant_estimate(mu, preset("hardy"), [2.0]) == pytest.approx(0.25, rel=1e-10)
    mu = CarlesonMeasureSpec(point_masses=((1.0 + 1j, 1.0),))
    assert carleson_constant_estimate(mu, preset("hardy"), [1.0 + 1j]) == pytest.approx(0.5, rel=1e-10)


def _dirichlet_density_oracle(z=1.0):
    kz = lambda zeta: np.exp(zeta + np.conj(z)) * exp1(zeta + np.conj(z))
    hp = lambda zeta: -1 / (zeta + 1) ** 2
    inner = lambda r: quad(lambda s: abs(hp(r + 1j * s) * kz(r + 1j * s)) ** 2, -np.inf, np.inf,
                           epsabs=1e-13, epsrel=1e-11, limit=500)[0]
    num = quad(inner, 0, np.inf, epsrel=1e-10, limit=500)[0] / np.pi
    den = quad(lambda t: np.exp(-2 * z * t) / (1 + t), 0, np.inf, epsrel=1e-12)[0]
    return num / den


def test_carleson_density_against_brute_force():
    sp = preset("dirichlet")
    mu = CarlesonMeasureSpec(space=sp, n=1, k=1, h=RES)
    est = carleson_constant_estimate(mu, sp, [1.0])
    assert est == pytest.approx(DIRICHLET_CARLESON_Z1, rel=1e-10)
    assert _dirichlet_density_oracle() == pytest.approx(DIRICHLET_CARLESON_Z1, rel=1e-12)


def test_carleson_spec_validation():
    with pytest.raises(ValueError):
        CarlesonMeasureSpec(space=preset("hardy"), n=1, k=0, h=RES)
    with pytest.raises(ValueError):
        CarlesonMeasureSpec(h=RES)
    with pytest.raises(ValueError):
        CarlesonMeasureSpec(point_masses=((-1.0, 1.0),))


def test_order_zero_multipliers_never_leave_space():
    sp = preset("hardy")
    fs = random_exppolys(12, 20, space=sp)
    for h in random_multipliers(13, 20):
        multiplier_lower_bound(h, sp, fs)  # must not raise


def test_eigen_identity_random_dirichlet():
    sp = preset("dirichlet")
    triples = zip(random_multipliers(1, 10), random_exppolys(2, 10, space=sp), random_points(3, 10))
    assert max(kernel_eigen_check(h, f, sp, z).value for h, f, z in triples) < 1e-8

"""Reproducing kernels of A^2_(m).

    k_z(zeta) = int_0^inf exp(-t (zeta + conj z)) / w_(m)(t) dt

Since ``1/w`` is not an exponential polynomial the kernel is always
evaluated by quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentKernel, NotInSpace, ToleranceNotMet
from .exppoly import ExpPoly, WeightExpr, laplace
from .quad import QuadConfig, integrate_halfline
from .report import FAILS, HOLDS, INCONCLUSIVE, CheckReport
from .spaces import l2w_norm
from .weight import total_weight


def check_reciprocal_integrable(w: WeightExpr, sigma: float):
    """Raise DivergentKernel unless ``exp(-sigma t) / w(t)`` is integrable on (0, inf)."""
    c, beta, rho = w.at_infinity()
    if sigma < rho or (sigma == rho and beta <= 1):
        raise DivergentKernel(
            f"exp(-{sigma:g} t)/w(t) is not integrable at infinity "
            f"(w ~ {c:g} t^{beta:g} exp(-{rho:g} t))")
    _, beta0, _ = w.at_zero()
    if beta0 >= 1:
        raise DivergentKernel(f"1/w(t) ~ t^{-beta0:g} is not integrable at 0")


def _ensure(res, what):
    if not res.converged:
        raise ToleranceNotMet(f"{what}: quadrature did not converge", res.value, res.error)
    return res.value


def kernel_eval(space, z: complex, zeta: complex, cfg: QuadConfig = QuadConfig()) -> complex:
    """``k_z(zeta)`` for z, zeta in the open right half-plane."""
    z, zeta = complex(z), complex(zeta)
    if z.real <= 0 or zeta.real <= 0:
        raise ValueError("kernel points must lie in Re z > 0")
    w = total_weight(space)
    s = zeta + z.conjugate()
    check_reciprocal_integrable(w, s.real)
    res = integrate_halfline(lambda t: np.exp(-s * t) / w(t), cfg)
    return complex(_ensure(res, "kernel"))


def kernel_matrix(space, points, cfg: QuadConfig = QuadConfig()) -> np.ndarray:
    """Gram matrix ``K[i, j] = k_{z_j}(z_i)`` in one batched quadrature."""
    pts = np.asarray(points, dtype=complex)
    if np.any(pts.real <= 0):
        raise ValueError("kernel points must lie in Re z > 0")
    w = total_weight(space)
    s = (pts[:, None] + pts[None, :].conj()).ravel()
    check_reciprocal_integrable(w, float(s.real.min()))
    res = integrate_halfline(lambda t: np.exp(-s[:, None] * t[None, :]) / w(t)[None, :], cfg)
    return np.asarray(_ensure(res, "kernel matrix")).reshape(len(pts), len(pts))


def kernel_norm_sq(space, a, cfg: QuadConfig = QuadConfig()):
    """``||k_z||^2 = k_z(z) = int exp(-2 a t)/w dt`` for ``Re z = a`` (a may be an array)."""
    a_arr = np.atleast_1d(np.asarray(a, dtype=float))
    if np.any(a_arr <= 0):
        raise ValueError("a must be positive")
    w = total_weight(space)
    check_reciprocal_integrable(w, 2 * float(a_arr.min()))
    if np.ndim(a) == 0:
        res = integrate_halfline(lambda t: np.exp(-2 * a_arr[0] * t) / w(t), cfg, real=True)
    else:
        res = integrate_halfline(
            lambda t: np.exp(-2 * a_arr[:, None] * t[None, :]) / w(t)[None, :], cfg, real=True)
    return _ensure(res, "kernel norm")


def reciprocal_integral(space, cfg: QuadConfig = QuadConfig()) -> float:
    """``int_0^inf dt / w(t)`` (raises DivergentKernel when infinite)."""
    w = total_weight(space)
    check_reciprocal_integrable(w, 0.0)
    return float(_ensure(integrate_halfline(lambda t: 1.0 / w(t), cfg, real=True), "1/w integral"))


@dataclass
class KernelSup:
    a_grid: np.ndarray
    values: np.ndarray
    extrapolated: float
    direct: float | None


def _extrapolation_basis(w: WeightExpr, a: np.ndarray) -> np.ndarray:
    """Columns of the small-a model of ``int exp(-2at)/w``.

    With ``1/w ~ C t**-p`` at infinity the defect ``K(0) - K(a)`` behaves
    like ``a**(p-1)`` (times ``log a`` when p is an integer) plus a regular
    part in powers of a.
    """
    _, beta, rho = w.at_infinity()
    cols = [np.ones_like(a), a]
    if rho < 0 or beta > 3:
        cols.append(a**2)
    elif abs(beta - round(beta)) < 1e-12:
        cols.append(a ** (round(beta) - 1) * np.log(a))
    else:
        cols.append(a ** (beta - 1))
    return np.column_stack(cols)


def kernel_sup(space, cfg: QuadConfig = QuadConfig(), a_min: float = 1e-6, a_max: float = 1.0,
               n: int = 25, n_fit: int = 6) -> KernelSup:
    """Supremum over the half-plane of ``||k_z||^2`` as the limit ``Re z -> 0+``.

    ``||k_z||^2`` is nonincreasing in ``Re z``; the limit is extrapolated by
    least squares on the smallest grid values (see :func:`_extrapolation_basis`).
    The direct integral of ``1/w`` is returned alongside for comparison.
    """
    w = total_weight(space)
    a_grid = np.geomspace(a_max, a_min, n)
    values = np.asarray(kernel_norm_sq(space, a_grid, cfg), dtype=float)
    a_fit, k_fit = a_grid[-n_fit:], values[-n_fit:]
    coef, *_ = np.linalg.lstsq(_extrapolation_basis(w, a_fit), k_fit, rcond=None)
    try:
        direct = reciprocal_integral(space, cfg)
    except DivergentKernel:
        direct = None
    return KernelSup(a_grid, values, float(coef[0]), direct)


def reproducing_check(space, f: ExpPoly, z: complex, cfg: QuadConfig = QuadConfig(),
                      tol: float = 1e-8) -> CheckReport:
    """Compare ``<f, exp(-t conj z)/w>_{L^2_w}`` (by quadrature) with ``L[f](z)``."""
    z = complex(z)
    w = total_weight(space)
    l2w_norm(f, w)  # raises NotInSpace
    kern = lambda t: np.exp(-t * z.conjugate()) / w(t)
    res = integrate_halfline(lambda t: f(t) * np.conj(kern(t)) * w(t), cfg.tighter(1e-2))
    lhs = complex(res.value)
    rhs = complex(laplace(f)(z))
    diff = abs(lhs - rhs)
    if not res.converged:
        verdict = INCONCLUSIVE
    else:
        verdict = HOLDS if diff < tol else FAILS
    return CheckReport(verdict, "quadrature", margin=tol - diff, value=diff,
                       witness=None if verdict != FAILS else z, check="reproducing",
                       details={"inner_product": lhs, "point_value": rhs})

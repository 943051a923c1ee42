"""Multipliers of A^2_(m) and Carleson-measure estimates.

Multiplier candidates are ``h = offset + L[g]`` with g an exponential
polynomial, so for ``F = L[f]`` the product is exactly ``L[offset*f + g*f]``.
Only lower bounds for multiplier norms are produced (finitely many test
functions); Carleson constants are likewise lower bounds from kernel test
functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import hinf_estimate
from .errors import NotInSpace, NotMultiplier, ToleranceNotMet
from .exppoly import AnalyticFn, ExpPoly, laplace
from .kernel import check_reciprocal_integrable, kernel_norm_sq
from .quad import QuadConfig, convolve_numeric, integrate_halfline
from .report import FAILS, HOLDS, INCONCLUSIVE, CheckReport
from .spaces import l2w_norm, measure_sq_integral
from .weight import SpaceSpec, measure_weight, total_weight


def _as_fn(h) -> AnalyticFn:
    if isinstance(h, AnalyticFn):
        return h
    if isinstance(h, ExpPoly):
        return laplace(h)
    return AnalyticFn(ExpPoly(), complex(h))


def hinf_norm(h) -> float:
    """Grid estimate of ``||h||_{H^inf}`` (raises UnboundedDetected for axis poles)."""
    return hinf_estimate(_as_fn(h)).value


def multiplier_lower_bound(h, space, testset: Sequence[ExpPoly]) -> float:
    """``max_f ||h L[f]|| / ||L[f]||`` over the test set.

    Raises NotMultiplier, carrying the offending test function, when a
    product leaves the space.
    """
    h = _as_fn(h)
    w = total_weight(space)
    best = 0.0
    for f in testset:
        nf = l2w_norm(f, w)  # NotInSpace propagates
        if nf == 0:
            continue
        try:
            nhf = l2w_norm(h.times(f), w)
        except NotInSpace as exc:
            raise NotMultiplier(f"h*F leaves the space: {exc}", witness=f) from exc
        best = max(best, nhf / nf)
    return best


def kernel_eigen_check(h, f: ExpPoly, space, z: complex, cfg: QuadConfig = QuadConfig(),
                       tol: float = 1e-8) -> CheckReport:
    """``<h F, k_z> = h(z) F(z)``: k_z is an eigenvector of the adjoint of M_h.

    The left side is a quadrature of the time-side inner product of the
    exact product ``h.times(f)`` with ``exp(-t conj z)/w``; the right side
    multiplies two point evaluations.
    """
    h = _as_fn(h)
    z = complex(z)
    w = total_weight(space)
    hf = h.times(f)
    l2w_norm(hf, w)  # NotInSpace if the product leaves the space
    zc = z.conjugate()
    res = integrate_halfline(lambda t: hf(t) * np.conj(np.exp(-t * zc) / w(t)) * w(t),
                             cfg.tighter(1e-2))
    lhs = complex(res.value)
    rhs = complex(h(z)) * complex(laplace(f)(z))
    diff = abs(lhs - rhs)
    verdict = INCONCLUSIVE if not res.converged else (HOLDS if diff < tol else FAILS)
    return CheckReport(verdict, "quadrature", margin=tol - diff, value=diff,
                       witness=z if verdict == FAILS else None, check="kernel_eigen",
                       details={"inner_product": lhs, "product_of_values": rhs})


def _quasi_carleson_fn(h: AnalyticFn, F: AnalyticFn, n: int) -> AnalyticFn:
    G = AnalyticFn()
    for k in range(1, n + 1):
        G = G + math.comb(n, k) * (F.derivative(n - k) * h.derivative(k))
    return G


def _check_index(space: SpaceSpec, n: int):
    if not 1 <= n <= space.m:
        raise ValueError(f"need 1 <= n <= m = {space.m}, got n = {n}")


def quasi_carleson_integral(h, F, space: SpaceSpec, n: int,
                            cfg: QuadConfig = QuadConfig()) -> float:
    """``int |sum_{k=1}^n C(n,k) F^(n-k) h^(k)|^2 dnu_n`` on the half-plane side."""
    _check_index(space, n)
    G = _quasi_carleson_fn(_as_fn(h), _as_fn(F), n)
    if not G.part:
        return 0.0
    res = measure_sq_integral(G, space.measures[n], cfg)
    if not res.converged:
        raise ToleranceNotMet("quasi-Carleson quadrature did not converge", res.value, res.error)
    return float(res.value)


def quasi_carleson_exact(h, F, space: SpaceSpec, n: int) -> float:
    """Same integral through the time side: ``||g||^2`` in ``L^2`` of the order-0 weight of nu_n."""
    _check_index(space, n)
    G = _quasi_carleson_fn(_as_fn(h), _as_fn(F), n)
    return l2w_norm(G.part, measure_weight(space.measures[n], 0)) ** 2


@dataclass(frozen=True)
class CarlesonMeasureSpec:
    """``|h^(k)|^2 dnu_n`` on the half-plane plus optional point masses.

    ``h=None`` drops the density part; ``point_masses`` holds ``(z, mass)``.
    """

    space: SpaceSpec | None = None
    n: int = 0
    k: int = 0
    h: AnalyticFn | None = None
    point_masses: tuple = field(default=())

    def __post_init__(self):
        if self.h is not None:
            if self.space is None:
                raise ValueError("a density part needs a base space")
            if not 0 <= self.k <= self.n <= self.space.m:
                raise ValueError("need 0 <= k <= n <= m")
            object.__setattr__(self, "h", _as_fn(self.h))
        pm = tuple((complex(z), float(c)) for z, c in self.point_masses)
        for z, c in pm:
            if z.real <= 0 or c < 0:
                raise ValueError("point masses need Re z > 0 and mass >= 0")
        object.__setattr__(self, "point_masses", pm)


def _density_integral(mu: CarlesonMeasureSpec, target_w, z: complex, cfg: QuadConfig) -> float:
    """``int |h^(k) k_z|^2 dnu_n`` via the time side.

    On ``Re = r`` the product ``h^(k) k_z`` is the Fourier transform of
    ``exp(-r t) p(t)`` with ``p = c psi + g * psi`` and
    ``psi = exp(-t conj z)/w``, so integrating over r against nu_n leaves
    ``int |p|^2 W_n`` with ``W_n`` the order-0 weight of nu_n.
    """
    hk = mu.h.derivative(mu.k)
    c, g = hk.offset, hk.part
    zc = z.conjugate()
    psi = lambda t: np.exp(-t * zc) / target_w(t)
    W = measure_weight(mu.space.measures[mu.n], 0)
    inner_cfg = cfg.nested()
    ok = [True]

    def integrand(t):
        t = np.asarray(t, dtype=float)
        p = c * psi(t)
        if g:
            pos = t > 0
            conv = np.zeros(t.shape, dtype=complex)
            if np.any(pos):
                res = convolve_numeric(g, psi, t[pos], inner_cfg)
                ok[0] &= res.converged
                conv[pos] = res.value
            p = p + conv
        return np.abs(p) ** 2 * W(t)

    res = integrate_halfline(integrand, cfg, real=True)
    if not (res.converged and ok[0]):
        raise ToleranceNotMet("Carleson density quadrature did not converge", res.value, res.error)
    return float(res.value)


def carleson_constant_estimate(mu: CarlesonMeasureSpec, target: SpaceSpec,
                               z_grid: Sequence[complex], cfg: QuadConfig = QuadConfig(),
                               return_all: bool = False):
    """Lower bound ``max_z int |k_z|^2 dmu / ||k_z||^2`` for the Carleson constant."""
    w = total_weight(target)
    out = []
    for z in z_grid:
        z = complex(z)
        if z.real <= 0:
            raise ValueError("grid points must lie in Re z > 0")
        check_reciprocal_integrable(w, 2 * z.real)
        num = 0.0
        if mu.h is not None:
            num += _density_integral(mu, w, z, cfg)
        if mu.point_masses:
            pts = np.array([p for p, _ in mu.point_masses])
            masses = np.array([c for _, c in mu.point_masses])
            # k_z(zeta) for every point mass in one batched quadrature
            s = pts + z.conjugate()
            res = integrate_halfline(lambda t: np.exp(-s[:, None] * t[None, :]) / w(t)[None, :], cfg)
            if not res.converged:
                raise ToleranceNotMet("kernel quadrature did not converge", res.value, res.error)
            num += float(np.sum(masses * np.abs(np.atleast_1d(res.value)) ** 2))
        out.append(num / float(kernel_norm_sq(target, z.real, cfg)))
    out = np.asarray(out)
    if return_all:
        return out
    return float(out.max()) if out.size else 0.0


__all__ = [
    "hinf_norm", "multiplier_lower_bound", "kernel_eigen_check", "quasi_carleson_integral", "quasi_carleson_exact",
    "CarlesonMeasureSpec", "carleson_constant_estimate",
]

"""Norms and inner products on L^2_w(0, inf) and on the Laplace image A^2_(m).

The time side is exact (Gamma-function moments of exponential polynomials);
the half-plane side integrates ``|F^(n)|^2`` over vertical lines against the
measures ``nu_n`` numerically.  Agreement of the two is the isometry check.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import Divergent, NotInSpace, ToleranceNotMet
from .exppoly import AnalyticFn, ExpPoly, WeightExpr, laplace, weighted_moment
from .measure import MeasureSpec
from .quad import QuadConfig, QuadResult, integrate_halfline, integrate_vertical
from .report import FAILS, HOLDS, CheckReport
from .weight import SpaceSpec, derive_weights, total_weight

__all__ = [
    "AnalyticFn", "l2w_norm", "inner_product", "in_space", "a2m_norm_numeric",
    "measure_sq_integral", "index_norms", "isometry_check", "resolvent_norm",
]


def l2w_norm(f: ExpPoly, w: WeightExpr) -> float:
    try:
        m = weighted_moment(f, f, w)
    except Divergent as exc:
        raise NotInSpace(f"function is not in L^2_w: {exc}") from exc
    return math.sqrt(max(m.real, 0.0))


def inner_product(f: ExpPoly, g: ExpPoly, space) -> complex:
    """``<L f, L g>`` in A^2_(m), computed as the L^2_w inner product of f and g."""
    w = total_weight(space)
    try:
        return weighted_moment(f, g, w)
    except Divergent as exc:
        raise NotInSpace(str(exc)) from exc


def in_space(f: ExpPoly, space) -> bool:
    try:
        l2w_norm(f, total_weight(space))
    except NotInSpace:
        return False
    return True


def measure_sq_integral(G, mu: MeasureSpec, cfg: QuadConfig = QuadConfig()) -> QuadResult:
    """``int_[0,inf) int_R |G(r + i s)|^2 ds dmu(r)`` by quadrature.

    Atoms reduce to single vertical-line integrals; each power density
    needs an outer r-integral whose integrand is a batch of vertical-line
    integrals.
    """
    inner_cfg = cfg.nested()
    total = 0.0
    err = 0.0
    ok = True
    for a in mu.atoms:
        res = integrate_vertical(G, a.r, inner_cfg)
        total += a.mass * res.value
        err += a.mass * res.error
        ok &= res.converged
    for p in mu.powers:
        inner_ok = [True]

        def outer(r, p=p):
            r = np.asarray(r, dtype=float)
            res = integrate_vertical(G, r, inner_cfg)
            inner_ok[0] &= res.converged
            return p.c * r**p.alpha * res.value

        res = integrate_halfline(outer, cfg, real=True)
        total += res.value
        err += res.error
        ok &= res.converged and inner_ok[0]
    return QuadResult(float(total), float(err), bool(ok))


def _require_member(F: AnalyticFn, space: SpaceSpec):
    if F.offset != 0:
        raise NotInSpace("nonzero constant offset: constants are never in A^2_(m)")
    l2w_norm(F.part, derive_weights(space).total)


def a2m_norm_numeric(F: AnalyticFn, space: SpaceSpec, cfg: QuadConfig = QuadConfig()) -> float:
    """``sqrt(sum_n int |F^(n)|^2 dnu_n)`` evaluated on the half-plane side.

    The supremum over shifts is attained in the limit of zero shift for
    Laplace transforms, so the integrals are taken on the lines ``Re z = r``
    themselves.
    """
    if isinstance(F, ExpPoly):
        F = laplace(F)
    _require_member(F, space)
    total, err, ok = 0.0, 0.0, True
    for n, mu in enumerate(space.measures):
        res = measure_sq_integral(F.derivative(n), mu, cfg)
        total += res.value
        err += res.error
        ok &= res.converged
    if not ok:
        raise ToleranceNotMet("half-plane norm quadrature did not converge",
                              math.sqrt(max(total, 0.0)), err)
    return math.sqrt(max(total, 0.0))


def index_norms(f: ExpPoly, space: SpaceSpec) -> list[float]:
    """Exact ``||F^(n)||_{A^2_{nu_n}} = ||f||_{L^2_{w_n}}`` for each index n."""
    return [l2w_norm(f, w) for w in derive_weights(space).per_index]


def isometry_check(f: ExpPoly, space: SpaceSpec, cfg: QuadConfig = QuadConfig(),
                   rtol: float = 1e-6) -> CheckReport:
    exact = l2w_norm(f, derive_weights(space).total)
    numeric = a2m_norm_numeric(laplace(f), space, cfg)
    if exact == 0:
        rel = abs(numeric)
    else:
        rel = abs(exact - numeric) / exact
    verdict = HOLDS if rel < rtol else FAILS
    return CheckReport(
        verdict, "quadrature", margin=rtol - rel, value=rel,
        witness=None if verdict == HOLDS else f.to_json(),
        check="isometry",
        details={"l2w_norm": exact, "a2m_norm": numeric, "rtol": rtol},
    )


def resolvent_norm(alpha: complex, space) -> float:
    """Exact norm of ``1/(z + alpha)`` (the transform of ``exp(-alpha t)``)."""
    alpha = complex(alpha)
    if alpha.real <= 0:
        raise ValueError("resolvent needs Re(alpha) > 0")
    return l2w_norm(ExpPoly.exp(alpha), total_weight(space))

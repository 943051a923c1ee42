"""When is A^2_(m) a Banach algebra under pointwise multiplication?

Four conditions are checked, each returning a :class:`CheckReport`:

* ``necessary_condition``    int_0^inf dt / w_(m)  <=  1
* ``sufficient_convolution`` (1/w * 1/w)(t)  <=  1/w(t)   on a t-grid
* ``measure_domination``     Laplace-Stieltjes transforms decrease with the index
* ``truncated_bound``        int_0^inf dt / (w_(m-1) + w_m)  <=  1

plus the two auxiliary algebra norms (``intersection`` and ``alg_m``) and a
finite-sample submultiplicativity trial.  Grid verdicts carry
``method="grid"`` and are never promoted to proofs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NotInSpace, ToleranceNotMet, UnboundedDerivative
from .exppoly import AnalyticFn, ExpPoly, WeightExpr, convolve, laplace
from .quad import QuadConfig, convolve_numeric, integrate_halfline
from .report import FAILS, HOLDS, INCONCLUSIVE, CheckReport
from .spaces import index_norms, l2w_norm
from .weight import SpaceSpec, derive_weights, total_weight

SUBMULT_TOL = 1e-12


def default_t_grid() -> list[float]:
    return list(np.geomspace(1e-3, 1e3, 49))


# ---------------------------------------------------------------------------
# integral conditions


def reciprocal_divergence(w: WeightExpr):
    """Symbolic test for ``int_0^inf dt / w = inf``.

    Returns ``None`` when the integral converges, otherwise a witness dict
    naming the end point and the dominant weight term responsible.
    """
    c, beta, rho = w.at_infinity()
    if rho > 0 or (rho == 0 and beta <= 1):
        return {"t": math.inf, "dominant_term": {"coeff": c, "power": beta, "rate": rho}}
    c0, beta0, _ = w.at_zero()
    if beta0 >= 1:
        return {"t": 0.0, "dominant_term": {"coeff": c0, "power": beta0, "rate": 0.0}}
    return None


def _reciprocal_bound(w: WeightExpr, cfg: QuadConfig, check: str) -> CheckReport:
    witness = reciprocal_divergence(w)
    if witness is not None:
        return CheckReport(FAILS, "exact", margin=-math.inf, value=math.inf,
                           witness=witness, check=check, details={"divergent": True})
    res = integrate_halfline(lambda t: 1.0 / w(t), cfg, real=True)
    value = float(res.value)
    details = {"error_estimate": res.error, "rel_tol": cfg.rel_tol}
    if not res.converged:
        return CheckReport(INCONCLUSIVE, "quadrature", margin=1.0 - value, value=value,
                           check=check, details=details)
    verdict = HOLDS if value <= 1.0 else FAILS
    return CheckReport(verdict, "quadrature", margin=1.0 - value, value=value,
                       witness=None if verdict == HOLDS else {"integral": value},
                       check=check, details=details)


def necessary_condition(space, cfg: QuadConfig = QuadConfig()) -> CheckReport:
    """``int_0^inf dt / w_(m) <= 1``; divergence is decided symbolically."""
    return _reciprocal_bound(total_weight(space), cfg, "necessary")


def truncated_bound(space: SpaceSpec, cfg: QuadConfig = QuadConfig()) -> CheckReport:
    """``int_0^inf dt / (w_(m-1) + w_m) <= 1`` (needs m >= 1)."""
    if space.m < 1:
        raise ValueError("truncated_bound needs m >= 1")
    per = derive_weights(space).per_index
    return _reciprocal_bound(per[-2] + per[-1], cfg, "truncated_bound")


# ---------------------------------------------------------------------------
# grid conditions


def sufficient_convolution(space, t_grid: Sequence[float] | None = None,
                           cfg: QuadConfig = QuadConfig()) -> CheckReport:
    """Compare ``(1/w * 1/w)(t)`` with ``1/w(t)`` at every grid point.

    The margin is ``1 - max_t w(t) (1/w * 1/w)(t)``.
    """
    t = np.asarray(default_t_grid() if t_grid is None else t_grid, dtype=float)
    if t.size == 0:
        raise ValueError("t_grid must be nonempty")
    if np.any(t <= 0):
        raise ValueError("t_grid must be positive")
    w = total_weight(space)
    recip = lambda s: 1.0 / w(s)
    res = convolve_numeric(recip, recip, t, cfg)
    conv = np.atleast_1d(np.real(res.value))
    ratio = conv * w(t)
    worst = int(np.argmax(ratio))
    margin = float(1.0 - ratio[worst])
    details = {"grid_min": float(t[0]), "grid_max": float(t[-1]), "grid_size": int(t.size),
               "worst_t": float(t[worst]), "max_ratio": float(ratio[worst])}
    if not res.converged:
        return CheckReport(INCONCLUSIVE, "grid", margin=margin, value=float(ratio[worst]),
                           check="sufficient_convolution", details=details)
    # ratios within the quadrature tolerance of 1 are not counted as violations
    bad = np.nonzero(ratio > 1.0 + 10 * cfg.rel_tol)[0]
    if bad.size:
        return CheckReport(FAILS, "grid", margin=margin, value=float(ratio[worst]),
                           witness=float(t[bad[0]]), check="sufficient_convolution",
                           details=details)
    return CheckReport(HOLDS, "grid", margin=margin, value=float(ratio[worst]),
                       check="sufficient_convolution", details=details)


def measure_domination(space: SpaceSpec, t_grid: Sequence[float] | None = None,
                       literal_range: bool = False) -> CheckReport:
    """``int exp(-2rt) dnu_n <= int exp(-2rt) dnu_{n-k}`` for ``1 <= k < n``.

    By default n runs up to m; ``literal_range=True`` stops at m - 1.  The
    smallest K with ``LS_n <= K LS_{n-k}`` on the grid is reported, so a
    failure that disappears after rescaling is visible.
    """
    t = np.asarray(default_t_grid() if t_grid is None else t_grid, dtype=float)
    if t.size == 0:
        raise ValueError("t_grid must be nonempty")
    top = space.m - 1 if literal_range else space.m
    pairs = [(n, k) for n in range(2, top + 1) for k in range(1, n)]
    if not pairs:
        return CheckReport(HOLDS, "exact", margin=0.0, value=1.0, check="measure_domination",
                           details={"K": 1.0, "vacuous": True, "n_max": top})
    ls = [mu.laplace_stieltjes(t) for mu in space.measures]
    K, margin, witness = 0.0, math.inf, None
    for n, k in pairs:
        ratio = ls[n] / ls[n - k]
        i = int(np.argmax(ratio))
        if ratio[i] > K:
            K = float(ratio[i])
        slack = ls[n - k] - ls[n]
        j = int(np.argmin(slack))
        if slack[j] < margin:
            margin = float(slack[j])
            witness = {"t": float(t[j]), "n": n, "k": k}
    details = {"K": K, "n_max": top, "grid_min": float(t[0]), "grid_max": float(t[-1]),
               "grid_size": int(t.size)}
    if margin >= 0:
        return CheckReport(HOLDS, "grid", margin=margin, value=K, check="measure_domination",
                           details=details)
    details["rescaling_hint"] = f"holds on the grid after scaling lower-index measures by {K:.6g}"
    return CheckReport(FAILS, "grid", margin=margin, value=K, witness=witness,
                       check="measure_domination", details=details)


def banach_checks(space: SpaceSpec, cfg: QuadConfig = QuadConfig(),
                  t_grid: Sequence[float] | None = None) -> list[CheckReport]:
    """All four conditions, sorted by check name."""
    reports = [
        _guard("necessary", lambda: necessary_condition(space, cfg)),
        _guard("sufficient_convolution", lambda: sufficient_convolution(space, t_grid, cfg)),
        _guard("measure_domination", lambda: measure_domination(space, t_grid)),
    ]
    if space.m >= 1:
        reports.append(_guard("truncated_bound", lambda: truncated_bound(space, cfg)))
    return sorted(reports, key=lambda r: r.check)


def _guard(name, fn) -> CheckReport:
    try:
        return fn()
    except ToleranceNotMet as exc:
        return CheckReport(INCONCLUSIVE, "quadrature", margin=math.nan, value=exc.estimate,
                           check=name, details={"error": str(exc)})


# ---------------------------------------------------------------------------
# submultiplicativity


def submultiplicativity_trial(space, pairs) -> CheckReport:
    """Worst ``||f*g|| / (||f|| ||g||)`` over ``pairs``, all in exact arithmetic.

    A finite sample can only refute, so a pass is labelled ``grid``.
    """
    w = total_weight(space)
    ratios = []
    for f, g in pairs:
        nf, ng = l2w_norm(f, w), l2w_norm(g, w)
        if nf == 0 or ng == 0:
            ratios.append(0.0)
            continue
        ratios.append(l2w_norm(convolve(f, g), w) / (nf * ng))
    if not ratios:
        raise ValueError("no pairs given")
    worst = int(np.argmax(ratios))
    value = float(ratios[worst])
    details = {"n_pairs": len(ratios), "worst_index": worst}
    if value <= 1.0 + SUBMULT_TOL:
        return CheckReport(HOLDS, "grid", margin=1.0 - value, value=value,
                           check="submultiplicativity", details=details)
    f, g = pairs[worst]
    return CheckReport(FAILS, "grid", margin=1.0 - value, value=value,
                       witness={"index": worst, "f": f.to_json(), "g": g.to_json()},
                       check="submultiplicativity", details=details)


# ---------------------------------------------------------------------------
# H-infinity estimates and auxiliary norms


@dataclass(frozen=True)
class HinfEstimate:
    value: float
    argmax: complex
    n_points: int
    s_range: tuple[float, float]


def hinf_estimate(F: AnalyticFn, s_min: float = 1e-4, s_max: float = 1e4, n: int = 81,
                  r_offsets: Sequence[float] = (0.0, 1e-3, 1e-1, 1.0)) -> HinfEstimate:
    """Grid estimate of ``sup |F|`` over the closed right half-plane.

    For ``offset + L[ExpPoly]`` with every pole strictly in the left
    half-plane, ``F`` is continuous up to the boundary and tends to the
    offset at infinity, so by the maximum principle the supremum is a
    boundary value.  The best grid point is refined by a bounded 1-d search.
    """
    if isinstance(F, ExpPoly):
        F = laplace(F)
    if not F.is_bounded:
        axis = [p for p in F.poles if p.real == 0]
        raise UnboundedDerivative(f"pole on the imaginary axis at {axis[0]}")
    pos = np.geomspace(s_min, s_max, n)
    s = np.concatenate([-pos[::-1], [0.0], pos, [p.imag for p in F.poles]])
    s = np.unique(s)
    r = np.asarray(r_offsets, dtype=float)
    vals = np.abs(F(r[:, None] + 1j * s[None, :]))
    if not np.all(np.isfinite(vals)):
        raise UnboundedDerivative("non-finite values on the evaluation grid")
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best, arg = float(vals[i, j]), complex(r[i] + 1j * s[j])
    # local refinement along the boundary line through the best point
    lo, hi = s[max(j - 1, 0)], s[min(j + 1, s.size - 1)]
    if hi > lo:
        opt = minimize_scalar(lambda x: -abs(F(complex(r[i], x))), bounds=(lo, hi),
                              method="bounded", options={"xatol": 1e-12})
        if -opt.fun > best:
            best, arg = float(-opt.fun), complex(r[i], opt.x)
    if abs(F.offset) > best:
        best, arg = abs(F.offset), complex(math.inf)
    return HinfEstimate(best, arg, int(vals.size), (s_min, s_max))


def _variant(name: str) -> str:
    key = name.lower().replace("-", "_").replace(" ", "")
    if key in ("intersection", "intersectionhinf", "intersectionh∞", "intersection_hinf"):
        return "intersection"
    if key in ("alg_m", "algm", "alg"):
        return "alg_m"
    raise ValueError(f"unknown variant {name!r}; use 'intersection' or 'alg_m'")


def auxiliary_algebra_norm(F, space: SpaceSpec, variant: str = "intersection",
                           cfg: QuadConfig = QuadConfig()) -> float:
    """Norm of ``F`` in ``A^2 cap H^inf`` or in ``Alg_m``.

    intersection:  ||F||_inf + ||F||_{A^2_(m)}
    alg_m:         sum_{n<m} ||F^(n)||_inf / n!  +  sum_{n<=m} ||F^(n)||_{A^2_{nu_n}} / n!

    The A^2 parts are exact (time-side Gamma moments); the sup norms are
    grid estimates.  ``cfg`` is accepted for interface symmetry.
    """
    if isinstance(F, ExpPoly):
        F = laplace(F)
    if F.offset != 0:
        raise NotInSpace("constants are not in A^2_(m)")
    v = _variant(variant)
    if v == "intersection":
        return hinf_estimate(F).value + l2w_norm(F.part, total_weight(space))
    per_index = index_norms(F.part, space)
    total = math.fsum(nrm / math.factorial(n) for n, nrm in enumerate(per_index))
    for n in range(space.m):
        total += hinf_estimate(F.derivative(n)).value / math.factorial(n)
    return total


__all__ = [
    "necessary_condition", "truncated_bound", "sufficient_convolution", "measure_domination",
    "banach_checks", "submultiplicativity_trial", "auxiliary_algebra_norm", "hinf_estimate",
    "HinfEstimate", "reciprocal_divergence", "default_t_grid",
]

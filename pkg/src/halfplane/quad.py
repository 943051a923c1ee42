"""Adaptive numerical integration: the independent oracle for symbolic results.

Everything funnels into one globally adaptive Gauss-Kronrod (10/21) engine
that works on *vectorised* integrands: an integrand receives a 1-d array of
abscissae and returns either an array of the same length or a 2-d array of
shape ``(batch, n)``, in which case a whole family of integrals is computed
on a common partition.  Nested integrals (a vertical-line integral for every
outer node of an r-integral, a convolution for every outer t) are therefore
evaluated with a handful of numpy calls instead of Python loops.

Unbounded and endpoint-singular ranges are reduced to finite ones by
substitution:

* (0, 1] uses ``t = exp(-x)`` so that integrable ``t**beta`` singularities
  become exponentially decaying in x,
* [1, inf) uses ``t = exp(x)`` which turns algebraic decay into
  exponential decay,
* infinite x-ranges are folded onto [0, 1) by ``x = u / (1 - u)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NonFinite

# 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21)
_XGK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0,
])
_WGK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525634006, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])            # ascending, 21 nodes
KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_g = np.zeros(11)
_g[1::2] = _WG                                               # Gauss nodes are xgk[1,3,...,9]
GAUSS = np.concatenate([_g[:-1], _g[::-1]])

_EPS = np.finfo(float).eps
_XMAX = 150.0  # [1, inf) substitution stops at t = exp(150); keeps t**4 finite


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")

    def tighter(self, factor: float = 1e-2) -> "QuadConfig":
        return QuadConfig(self.rel_tol * factor, self.abs_tol * factor, self.max_subdivisions)

    def nested(self) -> "QuadConfig":
        """Config for an inner integral feeding an outer one.

        Inner values are rescaled by outer Jacobians (at most about
        ``exp(_XMAX) * _XMAX**2``), so they get a relative tolerance one decade
        tighter than the outer one and an absolute floor far below anything
        such a Jacobian can lift to visible size, yet above the subnormal range.
        """
        return QuadConfig(self.rel_tol * 0.1, 1e-250, self.max_subdivisions)


@dataclass
class QuadResult:
    value: complex | float | np.ndarray
    error: float
    converged: bool
    n_intervals: int = 0
    meta: dict = field(default_factory=dict)

    def __float__(self):
        return float(np.real(self.value))

    def __complex__(self):
        return complex(self.value)


def _rule(f, a, b):
    """Apply the 21-point rule on intervals [a_i, b_i]; returns (K, err)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c[:, None] + h[:, None] * NODES[None, :]
    y = np.asarray(f(x.ravel()))
    batched = y.ndim == 2
    y = y.reshape((-1, len(a), 21))
    if not np.all(np.isfinite(y)):
        raise NonFinite("integrand returned a non-finite value")
    k = (y @ KRONROD) * h
    g = (y @ GAUSS) * h
    mean = k / (2 * h)
    resasc = (np.abs(y - mean[..., None]) @ KRONROD) * np.abs(h)
    resabs = (np.abs(y) @ KRONROD) * np.abs(h)
    err = np.abs(k - g)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    err = np.maximum(err, 50 * _EPS * resabs)
    return k, err, batched


def gauss_kronrod(f, breakpoints: Sequence[float], cfg: QuadConfig) -> QuadResult:
    """Globally adaptive integration of ``f`` over ``[breakpoints[0], breakpoints[-1]]``.

    The refinement rule (bisect every interval whose error exceeds the mean)
    does not depend on the tolerance, so tightening ``cfg`` only extends the
    same sequence of partitions.
    """
    bp = np.asarray(breakpoints, dtype=float)
    a, b = bp[:-1].copy(), bp[1:].copy()
    vals, errs, batched = _rule(f, a, b)
    converged = False
    while True:
        # every batch member is held to its own relative tolerance
        total = vals.sum(axis=-1)
        toterr = errs.sum(axis=-1)
        goal = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(total))
        if np.all(toterr <= goal):
            converged = True
            break
        if len(a) >= cfg.max_subdivisions:
            break
        score = (errs / goal[:, None]).max(axis=0)
        sel = score > score.mean()
        sel[np.argmax(score)] = True
        idx = np.flatnonzero(sel)
        room = cfg.max_subdivisions - len(a)
        if len(idx) > room:
            idx = idx[np.argsort(score[idx])[::-1][:room]]
        keep = np.ones(len(a), bool)
        keep[idx] = False
        mid = 0.5 * (a[idx] + b[idx])
        na = np.concatenate([a[idx], mid])
        nb = np.concatenate([mid, b[idx]])
        nv, ne, _ = _rule(f, na, nb)
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        vals = np.concatenate([vals[..., keep], nv], axis=-1)
        errs = np.concatenate([errs[..., keep], ne], axis=-1)
    total = vals.sum(axis=-1)
    if not batched:
        total = complex(total[0])
    return QuadResult(total, float(toterr.max()), converged, len(a))


# ---------------------------------------------------------------------------
# substitutions; each maps u in [0, 1] onto part of the original range


def _unfold(u):
    """x = u / (1 - u) and dx/du."""
    one_minus = 1.0 - u
    return u / one_minus, 1.0 / one_minus**2


def _piece_small(f, scale=1.0, origin=0.0, sign=1.0):
    """int over t = origin + sign*scale*exp(-x), x >= 0 (singular end at origin)."""
    def g(u):
        x, dx = _unfold(u)
        e = np.exp(-x)
        t = origin + sign * scale * e
        y = np.asarray(f(t)) * (scale * e * dx)
        # beyond x = _XMAX the integrand may over/underflow (e.g. t**-2 / t**-2),
        # and near a nonzero origin t rounds onto the origin itself; such
        # points carry no weight at double precision
        far = (e == 0) | (((x > _XMAX) | (t == origin)) & ~np.isfinite(y))
        return np.where(far, 0.0, y)
    return g


def _piece_large(f):
    """int over t = exp(x), x >= 0."""
    def g(u):
        x, dx = _unfold(u)
        xc = np.minimum(x, _XMAX)
        t = np.exp(xc)
        y = np.asarray(f(t))
        return np.where(x < _XMAX, y * t * dx, 0.0)
    return g


def _piece_tail(f, origin, sign):
    """int over t = origin + sign * x, x >= 0 (algebraic fold)."""
    def g(u):
        x, dx = _unfold(u)
        return np.asarray(f(origin + sign * x)) * dx
    return g


def _piece_finite(f, lo, hi):
    def g(u):
        return np.asarray(f(lo + (hi - lo) * u)) * (hi - lo)
    return g


def _stitch(pieces):
    """Concatenate piece integrands on [0,1], [1,2], ... into one function."""
    @np.errstate(all="ignore")
    def g(v):
        v = np.asarray(v)
        idx = np.minimum(v.astype(int), len(pieces) - 1)
        out = None
        for i, piece in enumerate(pieces):
            mask = idx == i
            if not mask.any():
                continue
            y = np.asarray(piece(v[mask] - i), dtype=complex)
            if out is None:
                shape = y.shape[:-1] + v.shape
                out = np.zeros(shape, dtype=complex)
            out[..., mask] = y
        return out
    return g, np.arange(len(pieces) + 1, dtype=float)


def _finish(res: QuadResult, real: bool) -> QuadResult:
    if real:
        res.value = np.real(res.value) if isinstance(res.value, np.ndarray) else float(np.real(res.value))
    return res


def integrate_halfline(f: Callable, cfg: QuadConfig = QuadConfig(), real: bool = False) -> QuadResult:
    """``int_0^inf f(t) dt`` for integrands that may carry a ``t**beta`` (beta > -1)
    singularity at 0 and decay algebraically (faster than 1/t) or exponentially."""
    g, bp = _stitch([_piece_small(f), _piece_large(f)])
    return _finish(gauss_kronrod(g, bp, cfg), real)


def integrate_interval(f: Callable, a: float, b: float, cfg: QuadConfig = QuadConfig(),
                       real: bool = False) -> QuadResult:
    """``int_a^b f``, tolerating integrable algebraic singularities at both ends.

    An endpoint ``c != 0`` is only resolved down to ``|t - c| ~ eps |c|``, so a
    ``|t - c|**beta`` singularity there loses about ``(eps |c|)**(beta + 1)``.
    """
    if b <= a:
        return QuadResult(0.0 if real else 0j, 0.0, True, 0)
    half = 0.5 * (b - a)
    g, bp = _stitch([_piece_small(f, half, a, 1.0), _piece_small(f, half, b, -1.0)])
    return _finish(gauss_kronrod(g, bp, cfg), real)


def integrate_real_line(f: Callable, cfg: QuadConfig = QuadConfig(), points: Sequence[float] = (),
                        real: bool = False) -> QuadResult:
    """``int_R f(s) ds`` with optional interior break points (e.g. near-poles)."""
    pts = sorted({float(p) for p in points} | {0.0})
    pieces = [_piece_tail(f, pts[0], -1.0)]
    pieces += [_piece_finite(f, lo, hi) for lo, hi in zip(pts, pts[1:])]
    pieces.append(_piece_tail(f, pts[-1], 1.0))
    g, bp = _stitch(pieces)
    return _finish(gauss_kronrod(g, bp, cfg), real)


def integrate_vertical(F: Callable, r, cfg: QuadConfig = QuadConfig(), points: Sequence[float] | None = None) -> QuadResult:
    """``int_R |F(r + i s)|**2 ds``; ``r`` may be an array (batched result).

    When ``F`` exposes ``poles`` (an :class:`~halfplane.exppoly.AnalyticFn`),
    their imaginary parts become break points.
    """
    if points is None:
        points = [p.imag for p in getattr(F, "poles", [])]
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    scalar = np.ndim(r) == 0

    # for r > 1 the mass of |F|^2 sits at |s| ~ r; measuring s in units of r
    # keeps every batch member resolvable
    scale = np.maximum(1.0, r_arr)[:, None]

    def integrand(s):
        z = r_arr[:, None] + 1j * scale * np.asarray(s)[None, :]
        v = np.abs(np.asarray(F(z))) ** 2 * scale
        return v[0] if scalar else v

    return integrate_real_line(integrand, cfg, points, real=True)


def convolve_numeric(u: Callable, v: Callable, t, cfg: QuadConfig = QuadConfig()) -> QuadResult:
    """``int_0^t u(tau) v(t - tau) dtau``; ``t`` may be an array (batched).

    Both endpoints get the exponential substitution, so integrable power
    singularities of ``u`` at 0 or of ``v`` at 0 are handled.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr <= 0):
        raise ValueError("convolution needs t > 0")
    scalar = np.ndim(t) == 0
    half = 0.5 * t_arr[:, None]

    def left(w):
        x, dx = _unfold(w)
        e = np.exp(-x)[None, :]
        tau = half * e
        y = u(tau) * v(t_arr[:, None] - tau) * half * e * dx[None, :]
        return np.where(e > 0, y, 0.0)

    def right(w):
        x, dx = _unfold(w)
        e = np.exp(-x)[None, :]
        tau = t_arr[:, None] - half * e
        y = u(tau) * v(half * e) * half * e * dx[None, :]
        return np.where(e > 0, y, 0.0)

    g, bp = _stitch([left, right])
    res = gauss_kronrod(lambda w: g(w)[0] if scalar else g(w), bp, cfg)
    return res


def riemann_midpoint(f: Callable, a: float, b: float, n: int = 1_000_000) -> float:
    """Fixed-step midpoint sum; a deliberately naive reference."""
    h = (b - a) / n
    x = a + h * (np.arange(n) + 0.5)
    return float(np.sum(f(x)) * h)

"""Exact algebra of exponential polynomials ``sum c * t**k * exp(-a t)``.

The class is closed under addition, pointwise product, Laplace convolution
and multiplication by powers of t, and every function in it integrates in
closed form against the weights produced by :mod:`halfplane.weight`.  That
makes it the exact reference side of every numerical cross-check.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property
from numbers import Number
from typing import Iterable, NamedTuple

import numpy as np
from scipy.special import digamma, gamma

from .errors import Divergent, DomainViolation, InvalidSpec, NonPositiveArgument

_EPS = np.finfo(float).eps
RATE_TOL = 1e-12  # rates closer than this are treated as equal
_POLE_TOL = 1e-12
_CANCEL_RTOL = 1e-9
_FAR = 2.0  # |z| beyond _FAR * max|rate| uses the expansion in 1/z
_FAR_EXTRA = 60  # extra expansion orders past the top power; 2**-60 < eps


class Term(NamedTuple):
    coeff: complex
    power: int
    rate: complex


def _rate_key(a: complex):
    return (a.real, a.imag)


def _cluster_rates(rates):
    """Map each rate to a representative, merging rates within RATE_TOL.

    Rates are visited in sorted order so the result does not depend on the
    order in which they were produced.
    """
    reps: list[complex] = []
    mapping = {}
    for a in sorted(set(rates), key=_rate_key):
        for r in reps:
            if abs(a - r) < RATE_TOL:
                mapping[a] = r
                break
        else:
            reps.append(a)
            mapping[a] = a
    return mapping


def _fsum_complex(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _canonical(terms: Iterable[Term]) -> tuple[Term, ...]:
    terms = [Term(complex(c), int(k), complex(a)) for c, k, a in terms]
    mapping = _cluster_rates(t.rate for t in terms)
    buckets: dict[tuple, list[complex]] = {}
    for c, k, a in terms:
        buckets.setdefault((mapping[a], k), []).append(c)
    out = []
    for (a, k), cs in buckets.items():
        c = _fsum_complex(cs)
        if c != 0:
            out.append(Term(c, k, a))
    out.sort(key=lambda t: (t.rate.real, t.rate.imag, t.power))
    return tuple(out)


@dataclass(frozen=True)
class ExpPoly:
    """Finite sum of ``coeff * t**power * exp(-rate * t)`` with Re(rate) >= 0.

    Terms are stored canonically: like terms merged, zero coefficients
    dropped, sorted by rate then power.  Two ExpPolys compare equal iff their
    canonical term lists are equal.
    """

    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        # validate before canonicalization drops zero coefficients
        terms = tuple(Term(*t) for t in self.terms)
        for t in terms:
            if t.power < 0:
                raise InvalidSpec(f"powers must be nonnegative integers, got {t.power}")
            if t.rate.real < 0:
                raise InvalidSpec(f"rates need Re(a) >= 0, got {t.rate}")
        object.__setattr__(self, "terms", _canonical(terms))

    # construction -------------------------------------------------------
    @classmethod
    def term(cls, coeff=1.0, power: int = 0, rate=0.0) -> "ExpPoly":
        return cls((Term(coeff, power, rate),))

    @classmethod
    def exp(cls, rate, coeff=1.0) -> "ExpPoly":
        return cls.term(coeff, 0, rate)

    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls(())

    @classmethod
    def one(cls) -> "ExpPoly":
        return cls.term(1.0, 0, 0.0)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Number):
            other = ExpPoly.term(other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return ExpPoly(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly(tuple(Term(-c, k, a) for c, k, a in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return ExpPoly(tuple(Term(c * other, k, a) for c, k, a in self.terms))
        if isinstance(other, ExpPoly):
            return multiply(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for c, k, a in self.terms:
            out = out + c * t**k * np.exp(-a * t)
        return out

    def convolve(self, other: "ExpPoly") -> "ExpPoly":
        return convolve(self, other)

    def times_power(self, n: int) -> "ExpPoly":
        """Multiply by ``t**n``."""
        return ExpPoly(tuple(Term(c, k + n, a) for c, k, a in self.terms))

    def derivative_kernel(self, n: int) -> "ExpPoly":
        """``(-t)**n f``: the time-domain counterpart of the n-th derivative of L[f]."""
        return self.times_power(n) * ((-1) ** n)

    def diff(self) -> "ExpPoly":
        """Time derivative d/dt."""
        out = []
        for c, k, a in self.terms:
            if k:
                out.append(Term(c * k, k - 1, a))
            out.append(Term(-a * c, k, a))
        return ExpPoly(tuple(out))

    def conj(self) -> "ExpPoly":
        """Complex conjugate as a function of real t."""
        return ExpPoly(tuple(Term(c.conjugate(), k, a.conjugate()) for c, k, a in self.terms))

    def isclose(self, other: "ExpPoly", rtol: float = 1e-12, atol: float = 1e-14) -> bool:
        """Term-list equality up to floating-point roundoff in coefficients."""
        if len(self) != len(other):
            return False
        for (c1, k1, a1), (c2, k2, a2) in zip(self.terms, other.terms):
            if k1 != k2 or abs(a1 - a2) >= RATE_TOL:
                return False
            if abs(c1 - c2) > atol + rtol * max(abs(c1), abs(c2)):
                return False
        return True

    def to_json(self) -> list[dict]:
        return [
            {"coeff_re": c.real, "coeff_im": c.imag, "power": k,
             "rate_re": a.real, "rate_im": a.imag}
            for c, k, a in self.terms
        ]

    @classmethod
    def from_json(cls, items) -> "ExpPoly":
        return cls(tuple(
            Term(complex(d.get("coeff_re", 0.0), d.get("coeff_im", 0.0)),
                 int(d.get("power", 0)),
                 complex(d.get("rate_re", 0.0), d.get("rate_im", 0.0)))
            for d in items
        ))

    def __repr__(self):
        if not self.terms:
            return "ExpPoly(0)"
        parts = [f"({c:.6g})*t^{k}*exp(-({a:.6g})t)" for c, k, a in self.terms]
        return "ExpPoly(" + " + ".join(parts) + ")"


def multiply(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    """Pointwise product."""
    return ExpPoly(tuple(
        Term(c1 * c2, k1 + k2, a1 + a2)
        for c1, k1, a1 in f.terms for c2, k2, a2 in g.terms
    ))


def _convolve_terms(s1: Term, s2: Term) -> list[Term]:
    (c1, j, a), (c2, k, b) = s1, s2
    scale = (c1 * c2) * (math.factorial(j) * math.factorial(k))
    if abs(a - b) < RATE_TOL:
        rate = (a + b) / 2
        return [Term(scale / math.factorial(j + k + 1), j + k + 1, rate)]
    # partial fractions of 1 / ((s+a)^p (s+b)^q), then invert term by term
    p, q = j + 1, k + 1
    out = []
    for l in range(p):
        A = math.comb(q + l - 1, l) * (-1) ** l * (b - a) ** (-(q + l))
        i = p - l
        out.append(Term(scale * A / math.factorial(i - 1), i - 1, a))
    for l in range(q):
        B = math.comb(p + l - 1, l) * (-1) ** l * (a - b) ** (-(p + l))
        i = q - l
        out.append(Term(scale * B / math.factorial(i - 1), i - 1, b))
    return out


def convolve(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    """Laplace convolution ``(f*g)(t) = int_0^t f(s) g(t-s) ds``, exactly."""
    out: list[Term] = []
    for s1 in f.terms:
        for s2 in g.terms:
            out.extend(_convolve_terms(s1, s2))
    return ExpPoly(tuple(out))


# ---------------------------------------------------------------------------
# Analytic functions on the right half-plane


@dataclass(frozen=True)
class AnalyticFn:
    """``F(z) = offset + L[part](z)``.

    Elements of the Hilbert spaces have ``offset == 0``; a nonzero offset is
    only meaningful for multiplier candidates.
    """

    part: ExpPoly = ExpPoly()
    offset: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "offset", complex(self.offset))

    @cached_property
    def _expansion(self):
        """Radius and coefficients ``g^(j)(0)`` of ``L[g](z) = sum_j g^(j)(0) / z**(j+1)``.

        Partial fractions whose leading orders cancel lose all relative
        accuracy at large |z|; the Taylor coefficients are summed exactly
        once, and those that vanish to roundoff are set to zero.
        """
        terms = self.part.terms
        if not terms:
            return math.inf, np.zeros(0, dtype=complex)
        top = max(k for _, k, _ in terms) + _FAR_EXTRA
        coeffs = np.zeros(top + 1, dtype=complex)
        for j in range(top + 1):
            contrib = [c * math.perm(j, k) * (-a) ** (j - k) for c, k, a in terms if k <= j]
            total = _fsum_complex(contrib)
            if abs(total) <= 64 * _EPS * sum(abs(x) for x in contrib):
                total = 0j
            coeffs[j] = total
        return _FAR * max(abs(a) for _, _, a in terms), coeffs

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.offset, dtype=complex)
        radius, coeffs = self._expansion
        far = np.abs(z) > radius
        near = ~far
        zn = z[near]
        acc = np.zeros(zn.shape, dtype=complex)
        for c, k, a in self.part.terms:
            w = zn + a
            if np.any(w.real <= 0):
                raise DomainViolation(f"Re(z + {a}) <= 0: Laplace transform undefined")
            acc = acc + c * math.factorial(k) * (1.0 / w) ** (k + 1)
        out[near] += acc
        if np.any(far):
            inv = 1.0 / z[far]
            acc = np.zeros(inv.shape, dtype=complex)
            for d in coeffs[::-1]:  # Horner in 1/z
                acc = (acc + d) * inv
            out[far] += acc
        return out if out.ndim else complex(out)

    def derivative(self, n: int = 1) -> "AnalyticFn":
        if n == 0:
            return self
        return AnalyticFn(self.part.derivative_kernel(n), 0j)

    def __mul__(self, other):
        if isinstance(other, Number):
            return AnalyticFn(self.part * other, self.offset * other)
        if not isinstance(other, AnalyticFn):
            return NotImplemented
        part = (self.part * other.offset + other.part * self.offset
                + convolve(self.part, other.part))
        return AnalyticFn(part, self.offset * other.offset)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, Number):
            return AnalyticFn(self.part, self.offset + other)
        if not isinstance(other, AnalyticFn):
            return NotImplemented
        return AnalyticFn(self.part + other.part, self.offset + other.offset)

    __radd__ = __add__

    def __neg__(self):
        return AnalyticFn(-self.part, -self.offset)

    def __sub__(self, other):
        return self + (-other)

    @property
    def poles(self) -> list[complex]:
        return sorted({-a for _, _, a in self.part.terms}, key=_rate_key)

    @property
    def is_bounded(self) -> bool:
        """Bounded on the closed half-plane iff no pole lies on the imaginary axis."""
        return all(a.real > 0 for _, _, a in self.part.terms)

    def times(self, f: ExpPoly) -> ExpPoly:
        """Time-domain representative of ``self * L[f]``: ``offset*f + part*f``."""
        return f * self.offset + convolve(self.part, f)


def laplace(f: ExpPoly) -> AnalyticFn:
    return AnalyticFn(f, 0j)


# ---------------------------------------------------------------------------
# Weights and weighted moments


class WTerm(NamedTuple):
    coeff: float
    power: float
    rate: float


@dataclass(frozen=True)
class WeightExpr:
    """Positive weight ``sum c * t**beta * exp(-rho t)`` on (0, inf).

    Weights derived from measures always have ``rho >= 0``; negative rates
    are accepted for hand-built synthetic weights such as ``4 exp(t)``.
    """

    terms: tuple[WTerm, ...]

    def __post_init__(self):
        merged: dict[tuple, list[float]] = {}
        for c, b, r in self.terms:
            merged.setdefault((float(b), float(r)), []).append(float(c))
        terms = tuple(sorted(
            (WTerm(math.fsum(cs), b, r) for (b, r), cs in merged.items()),
            key=lambda w: (w.rate, w.power),
        ))
        if not terms:
            raise InvalidSpec("a weight needs at least one term")
        for w in terms:
            if not (math.isfinite(w.coeff) and w.coeff > 0):
                raise InvalidSpec(f"weight coefficients must be positive, got {w.coeff}")
            if not (math.isfinite(w.power) and math.isfinite(w.rate)):
                raise InvalidSpec("weight exponents must be finite")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def monomial(cls, coeff: float, power: float = 0.0, rate: float = 0.0) -> "WeightExpr":
        return cls((WTerm(coeff, power, rate),))

    def __add__(self, other: "WeightExpr") -> "WeightExpr":
        return WeightExpr(self.terms + other.terms)

    def scaled(self, k: float) -> "WeightExpr":
        return WeightExpr(tuple(WTerm(c * k, b, r) for c, b, r in self.terms))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        for c, b, r in self.terms:
            out = out + c * t**b * np.exp(-r * t)
        return out

    def at_infinity(self) -> WTerm:
        """The term dominating as t -> inf (smallest rate, then largest power)."""
        rho = min(w.rate for w in self.terms)
        return max((w for w in self.terms if w.rate == rho), key=lambda w: w.power)

    def at_zero(self) -> WTerm:
        """The term dominating as t -> 0+ (smallest power)."""
        beta = min(w.power for w in self.terms)
        return WTerm(math.fsum(w.coeff for w in self.terms if w.power == beta), beta, 0.0)

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "power": b, "rate": r} for c, b, r in self.terms]

    def __repr__(self):
        return "WeightExpr(" + " + ".join(
            f"{c:.6g}*t^{b:g}*exp(-{r:g}t)" for c, b, r in self.terms) + ")"


def eval_weight(w: WeightExpr, t: float) -> float:
    if not t > 0:
        raise NonPositiveArgument(f"weights are defined for t > 0, got {t}")
    return float(w(t))


def _gamma_moment(p: float, sigma: complex) -> complex:
    """``int_0^inf t**p exp(-sigma t) dt`` (Hadamard finite part when p <= -1)."""
    s = p + 1.0
    n = round(-s)
    if s <= 0 and abs(s + n) < _POLE_TOL:
        # pole of Gamma: finite part (-sigma)^n/n! * (psi(n+1) - log sigma)
        return (-sigma) ** n / math.factorial(n) * (digamma(n + 1) - cmath.log(sigma))
    return complex(gamma(s)) * cmath.exp(-s * cmath.log(sigma))


def weighted_moment(f: ExpPoly, g: ExpPoly, w: WeightExpr) -> complex:
    """``int_0^inf f(t) conj(g(t)) w(t) dt`` in closed form.

    Raises :class:`Divergent` when the integral does not converge.  Terms
    that are individually non-integrable at 0 are admitted when their
    singular parts cancel; the finite parts then sum to the true value.
    """
    raw: dict[tuple, list[complex]] = {}
    for cf, j, a in f.terms:
        for cg, k, b in g.terms:
            for d, beta, rho in w.terms:
                sigma = a + b.conjugate() + rho
                raw.setdefault((j + k + beta, sigma), []).append(cf * cg.conjugate() * d)
    terms = []
    for (p, sigma), cs in raw.items():
        c = _fsum_complex(cs)
        if c != 0:
            terms.append((c, p, sigma))
    for c, p, sigma in terms:
        if sigma.real <= 0:
            raise Divergent(
                f"term t^{p:g} exp(-({sigma})t) does not decay at infinity", (c, p, sigma))

    # singular exponents at 0 must cancel across terms
    singular: dict[float, list[complex]] = {}
    for c, p, sigma in terms:
        l = 0
        while p + l <= -1 + _POLE_TOL:
            e = round(p + l, 9)
            singular.setdefault(e, []).append(c * (-sigma) ** l / math.factorial(l))
            l += 1
    for e, cs in singular.items():
        total = _fsum_complex(cs)
        scale = sum(abs(x) for x in cs)
        if abs(total) > _CANCEL_RTOL * scale:
            raise Divergent(f"non-integrable t^{e:g} singularity at 0", (total, e, None))

    return _fsum_complex(c * _gamma_moment(p, sigma) for c, p, sigma in terms)

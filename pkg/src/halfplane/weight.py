"""Weights making the Laplace transform an isometry.

For a sequence of measures ``nu_0, ..., nu_m`` on [0, inf) the n-th weight is

    w_n(t) = 2 pi t**(2n) int_0^inf exp(-2 r t) dnu_n(r)

and the space weight is ``w_(m) = w_0 + ... + w_m``.  Both are computed in
closed form: an atom ``(r0, mass)`` contributes ``2 pi mass t**(2n) exp(-2 r0 t)``
and a density ``c r**alpha dr`` contributes
``2 pi c Gamma(alpha+1) 2**-(alpha+1) t**(2n - alpha - 1)``.

Presets
-------
The classical spaces come in two flavours.  The *normalized* presets carry
the constants that reproduce the textbook norms exactly (``hardy`` gives
``w = 1``, ``bergman(alpha)`` gives ``w = t**-(alpha+1)``, ``dirichlet``
gives ``w = 1 + t``).  The *literal* presets use the bare measures
(``delta_0``, ``r**alpha dr``) and differ from the normalized ones by a
constant factor.  ``hardy_sobolev`` uses ``nu_0 = nu_1 = delta_0`` and so
``w = 2 pi (1 + t**2)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence

from scipy.special import gamma

from .errors import InvalidSpec, NonPositiveArgument
from .exppoly import WeightExpr, WTerm, eval_weight
from .measure import MeasureSpec, delta2_check, default_grid

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SpaceSpec:
    """Measures ``(nu_0, ..., nu_m)``; ``m = len(measures) - 1``."""

    measures: tuple[MeasureSpec, ...]
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        measures = tuple(self.measures)
        if not measures:
            raise InvalidSpec("a space needs at least one measure")
        for i, mu in enumerate(measures):
            if not isinstance(mu, MeasureSpec):
                raise InvalidSpec(f"measures[{i}] is not a MeasureSpec")
        object.__setattr__(self, "measures", measures)

    @property
    def m(self) -> int:
        return len(self.measures) - 1

    def delta2_reports(self, grid: Sequence[float] | None = None):
        grid = default_grid() if grid is None else grid
        return [delta2_check(mu, grid) for mu in self.measures]

    def to_json(self) -> dict:
        return {"m": self.m, "measures": [mu.to_json() for mu in self.measures]}


@dataclass(frozen=True)
class DerivedWeights:
    per_index: tuple[WeightExpr, ...]
    total: WeightExpr


def measure_weight(mu: MeasureSpec, n: int = 0) -> WeightExpr:
    """``2 pi t**(2n) int exp(-2 r t) dmu(r)`` as a WeightExpr."""
    terms = [WTerm(TWO_PI * a.mass, 2.0 * n, 2.0 * a.r) for a in mu.atoms]
    terms += [
        WTerm(TWO_PI * p.c * gamma(p.alpha + 1.0) * 2.0 ** (-(p.alpha + 1.0)),
              2.0 * n - p.alpha - 1.0, 0.0)
        for p in mu.powers
    ]
    return WeightExpr(tuple(terms))


def derive_weights(space: SpaceSpec) -> DerivedWeights:
    per_index = tuple(measure_weight(mu, n) for n, mu in enumerate(space.measures))
    total = WeightExpr(tuple(t for w in per_index for t in w.terms))
    return DerivedWeights(per_index, total)


def total_weight(space_or_weight) -> WeightExpr:
    """Accept either a SpaceSpec or a bare WeightExpr."""
    if isinstance(space_or_weight, WeightExpr):
        return space_or_weight
    return derive_weights(space_or_weight).total


# ---------------------------------------------------------------------------
# presets


def hardy() -> SpaceSpec:
    return SpaceSpec((MeasureSpec.atom(0.0, 1.0 / TWO_PI),), name="hardy")


def hardy_literal() -> SpaceSpec:
    return SpaceSpec((MeasureSpec.atom(0.0, 1.0),), name="hardy_literal")


def bergman(alpha: float = 0.0) -> SpaceSpec:
    """Weighted Bergman space normalized so that ``w(t) = t**-(alpha+1)``."""
    c = 2.0 ** (alpha + 1.0) / (TWO_PI * gamma(alpha + 1.0))
    return SpaceSpec((MeasureSpec.power(c, alpha),), name=f"bergman({alpha:g})")


def bergman_literal(alpha: float = 0.0) -> SpaceSpec:
    return SpaceSpec((MeasureSpec.power(1.0, alpha),), name=f"bergman_literal({alpha:g})")


def dirichlet() -> SpaceSpec:
    return SpaceSpec(
        (MeasureSpec.atom(0.0, 1.0 / TWO_PI), MeasureSpec.power(1.0 / math.pi, 0.0)),
        name="dirichlet",
    )


def hardy_sobolev() -> SpaceSpec:
    return SpaceSpec((MeasureSpec.atom(0.0, 1.0), MeasureSpec.atom(0.0, 1.0)),
                     name="hardy_sobolev")


def hardy_sobolev_bergman(alpha: float = -0.5) -> SpaceSpec:
    """``nu_0 = delta_0``, ``nu_1 = r**alpha dr`` with ``-1 < alpha < 0``."""
    return SpaceSpec((MeasureSpec.atom(0.0, 1.0), MeasureSpec.power(1.0, alpha)),
                     name=f"hardy_sobolev_bergman({alpha:g})")


def synthetic_algebra() -> SpaceSpec:
    """m = 1 space with ``w(t) = 4 (1 + t)**2``; integral of 1/w is 1/4."""
    return SpaceSpec(
        (MeasureSpec.atom(0.0, 2.0 / math.pi),
         MeasureSpec.atom(0.0, 2.0 / math.pi) + MeasureSpec.power(8.0 / math.pi, 0.0)),
        name="synthetic_algebra",
    )


_PRESETS = {
    "hardy": hardy,
    "hardy_literal": hardy_literal,
    "bergman": bergman,
    "bergman_literal": bergman_literal,
    "dirichlet": dirichlet,
    "hardy_sobolev": hardy_sobolev,
    "hardy_sobolev_bergman": hardy_sobolev_bergman,
    "synthetic_algebra": synthetic_algebra,
}
PRESET_NAMES = tuple(_PRESETS)

_PRESET_RE = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*([-+0-9.eE]+)\s*\))?\s*$")


def preset(name: str) -> SpaceSpec:
    """Look up a preset by name, e.g. ``"dirichlet"`` or ``"bergman(0.5)"``."""
    m = _PRESET_RE.match(name)
    if not m or m.group(1) not in _PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    factory = _PRESETS[m.group(1)]
    if m.group(2) is not None:
        try:
            return factory(float(m.group(2)))
        except TypeError:
            raise KeyError(f"preset {m.group(1)!r} takes no parameter") from None
    return factory()


__all__ = [
    "SpaceSpec", "DerivedWeights", "derive_weights", "measure_weight", "total_weight",
    "eval_weight", "preset", "PRESET_NAMES", "NonPositiveArgument",
    "hardy", "hardy_literal", "bergman", "bergman_literal", "dirichlet",
    "hardy_sobolev", "hardy_sobolev_bergman", "synthetic_algebra",
]

"""Seeded random exponential polynomials and named test corpora."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exppoly import AnalyticFn, ExpPoly, Term
from .weight import total_weight


@dataclass(frozen=True)
class RandomConfig:
    max_terms: int = 3
    max_power: int = 3
    rate_re: tuple[float, float] = (0.2, 3.0)
    rate_im: float = 2.0  # imaginary parts drawn from [-rate_im, rate_im]
    complex_coeffs: bool = True
    min_power: int = 0


def min_power_for(space) -> int:
    """Smallest t-power keeping ``|t**k|**2 w`` integrable at 0.

    Needs ``2k + beta_0 > -1`` where ``beta_0`` is the lowest weight power.
    """
    beta0 = total_weight(space).at_zero().power
    if beta0 > -1:
        return 0
    return int(math.floor((-1.0 - beta0) / 2.0)) + 1


def random_exppoly(rng: np.random.Generator, cfg: RandomConfig = RandomConfig()) -> ExpPoly:
    n = int(rng.integers(1, cfg.max_terms + 1))
    terms = []
    for _ in range(n):
        c = complex(rng.normal(), rng.normal() if cfg.complex_coeffs else 0.0)
        k = int(rng.integers(cfg.min_power, max(cfg.max_power, cfg.min_power) + 1))
        a = complex(rng.uniform(*cfg.rate_re), rng.uniform(-cfg.rate_im, cfg.rate_im))
        terms.append(Term(c, k, a))
    f = ExpPoly(tuple(terms))
    # cancellation is improbable but would leave the zero function
    return f if f else ExpPoly.exp(1.0)


def random_exppolys(seed: int, count: int, space=None, **kw) -> list[ExpPoly]:
    if space is not None and "min_power" not in kw:
        kw["min_power"] = min_power_for(space)
    cfg = RandomConfig(**kw)
    rng = np.random.default_rng(seed)
    return [random_exppoly(rng, cfg) for _ in range(count)]


def random_points(seed: int, count: int, re=(0.05, 3.0), im=3.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(*re, count) + 1j * rng.uniform(-im, im, count)


def random_multipliers(seed: int, count: int) -> list[AnalyticFn]:
    """``offset + L[g]`` candidates with poles strictly left of the axis."""
    rng = np.random.default_rng(seed)
    cfg = RandomConfig(max_terms=2, max_power=2)
    return [AnalyticFn(random_exppoly(rng, cfg), complex(rng.normal(), rng.normal()))
            for _ in range(count)]


def builtin_corpora() -> dict[str, list[ExpPoly]]:
    return {
        "resolvents": [ExpPoly.exp(a) for a in (0.5, 1.0, 2.0, 1.0 + 1.0j, 1.0 - 1.0j)],
        "monomials": [ExpPoly.term(1.0, k, 1.0) for k in range(1, 5)],
        "mixed": [
            ExpPoly.exp(1.0) - ExpPoly.exp(2.0),
            ExpPoly.term(1.0, 1, 0.5) + ExpPoly.exp(3.0, 2.0j),
            ExpPoly.term(1.0, 2, 1.0 + 2.0j) + ExpPoly.term(1.0, 2, 1.0 - 2.0j),
        ],
    }


__all__ = ["RandomConfig", "min_power_for", "random_exppoly", "random_exppolys",
           "random_points", "random_multipliers", "builtin_corpora"]

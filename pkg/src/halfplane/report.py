"""Verdict records returned by every certification routine."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"

VERDICTS = (HOLDS, FAILS, INCONCLUSIVE)
METHODS = ("exact", "grid", "quadrature")


@dataclass
class CheckReport:
    """Outcome of a single condition check.

    ``margin`` is the signed slack at the worst point examined: nonnegative
    when the condition holds there, negative when it is violated.  ``value``
    is the headline number of the check (an integral, a ratio, ...).
    """

    verdict: str
    method: str
    margin: float = 0.0
    value: Any = None
    witness: Any = None
    check: str = ""
    details: dict = field(default_factory=dict)
    runtime_ms: float | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.verdict == FAILS and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "verdict": self.verdict,
            "value": jsonable(self.value),
            "margin": jsonable(self.margin),
            "witness": jsonable(self.witness),
            "method": self.method,
            "runtime_ms": self.runtime_ms,
        }
        if self.details:
            out["details"] = jsonable(self.details)
        return out


def jsonable(x):
    """Convert numbers (incl. complex and non-finite) into JSON-safe values."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "tolist") and getattr(x, "ndim", 0) > 0:
        return jsonable(x.tolist())
    if isinstance(x, complex):
        if x.imag == 0:
            return jsonable(x.real)
        return {"re": jsonable(x.real), "im": jsonable(x.imag)}
    if isinstance(x, int):
        return x
    try:
        v = float(x)
    except (TypeError, ValueError):
        try:
            c = complex(x)
        except (TypeError, ValueError):
            return str(x)
        return jsonable(c)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v

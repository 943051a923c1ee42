"""JSON run configuration.

Schema (version 1)::

    {
      "schema_version": 1,
      "preset": "hardy_sobolev",          # or give "m" and "measures"
      "m": 1,
      "measures": [{"atoms": [{"r": 0, "mass": 1}], "powers": [{"c": 1, "alpha": 0}]}, ...],
      "quad": {"rel_tol": 1e-10, "abs_tol": 1e-12, "max_subdivisions": 2000},
      "grids": {"t": [...] | {"geom": [lo, hi, n]}, "delta2": ..., "kernel_a": ..., "z": [[re, im], ...]},
      "corpus": {"name": [[{"coeff_re":..,"coeff_im":..,"power":..,"rate_re":..,"rate_im":..}, ...], ...]}
    }

``HALFPLANE_RTOL`` in the environment replaces the default relative
tolerance; an explicit ``quad.rel_tol`` still wins.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .corpus import builtin_corpora
from .errors import ConfigError, HalfplaneError
from .exppoly import ExpPoly
from .measure import MeasureSpec, default_grid
from .quad import QuadConfig
from .weight import SpaceSpec, preset

SCHEMA_VERSION = 1
ENV_RTOL = "HALFPLANE_RTOL"
_KNOWN = {"schema_version", "preset", "m", "measures", "quad", "grids", "corpus"}


@dataclass
class RunConfig:
    space: SpaceSpec
    quad: QuadConfig
    grids: dict
    corpus: dict = field(default_factory=dict)
    source: dict = field(default_factory=dict)
    path: str | None = None

    @property
    def hash(self) -> str:
        blob = json.dumps(self.source, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def corpus_named(self, name: str) -> list[ExpPoly]:
        if name in self.corpus:
            return self.corpus[name]
        builtin = builtin_corpora()
        if name in builtin:
            return builtin[name]
        raise ConfigError(f"unknown corpus {name!r}", self.path, "corpus")


def default_grids() -> dict:
    return {
        "t": list(np.geomspace(1e-3, 1e3, 49)),
        "delta2": default_grid(),
        "kernel_a": list(np.geomspace(1e-3, 10.0, 13)),
        "z": [complex(1.0, 0.0), complex(0.5, 2.0), complex(0.1, -1.0), complex(2.0, 0.5)],
    }


def _grid(value, path, name):
    if isinstance(value, dict) and "geom" in value:
        try:
            lo, hi, n = value["geom"]
            out = list(np.geomspace(float(lo), float(hi), int(n)))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad geom spec: {exc}", path, f"grids.{name}") from None
    elif isinstance(value, list) and value:
        try:
            if name == "z":
                out = [complex(*v) if isinstance(v, list) else complex(v) for v in value]
            else:
                out = [float(v) for v in value]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad grid entry: {exc}", path, f"grids.{name}") from None
    else:
        raise ConfigError("grid must be a nonempty list or {'geom': [lo, hi, n]}", path,
                          f"grids.{name}")
    if name == "z":
        if any(z.real <= 0 for z in out):
            raise ConfigError("z points must have positive real part", path, "grids.z")
    elif any(v <= 0 for v in out):
        raise ConfigError("grid values must be positive", path, f"grids.{name}")
    return out


def default_rel_tol() -> float:
    raw = os.environ.get(ENV_RTOL)
    if raw is None:
        return QuadConfig().rel_tol
    try:
        v = float(raw)
    except ValueError:
        raise ConfigError(f"{ENV_RTOL} must be a number, got {raw!r}", None, ENV_RTOL) from None
    if not v > 0:
        raise ConfigError(f"{ENV_RTOL} must be positive", None, ENV_RTOL)
    return v


def _space(obj, path) -> SpaceSpec:
    if "preset" in obj:
        try:
            return preset(str(obj["preset"]))
        except KeyError as exc:
            raise ConfigError(str(exc.args[0]), path, "preset") from None
    if "measures" not in obj:
        raise ConfigError("need either 'preset' or 'measures'", path, "measures")
    items = obj["measures"]
    if not isinstance(items, list) or not items:
        raise ConfigError("must be a nonempty list", path, "measures")
    measures = []
    for i, item in enumerate(items):
        try:
            measures.append(MeasureSpec.from_json(item))
        except (HalfplaneError, KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ConfigError(str(exc), path, f"measures[{i}]") from None
    if "m" in obj and obj["m"] != len(measures) - 1:
        raise ConfigError(f"m = {obj['m']} but {len(measures)} measures given", path, "m")
    return SpaceSpec(tuple(measures), name="custom")


def parse_config(obj: dict, path: str | None = None, preset_override: str | None = None) -> RunConfig:
    if not isinstance(obj, dict):
        raise ConfigError("top level must be an object", path, None)
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r}", path, "schema_version")
    unknown = sorted(set(obj) - _KNOWN)
    if unknown:
        raise ConfigError(f"unknown field(s) {', '.join(unknown)}", path, unknown[0])
    obj = dict(obj)
    if preset_override is not None:
        obj["preset"] = preset_override
    space = _space(obj, path)

    q = obj.get("quad", {})
    if not isinstance(q, dict):
        raise ConfigError("must be an object", path, "quad")
    try:
        quad = QuadConfig(
            rel_tol=float(q.get("rel_tol", default_rel_tol())),
            abs_tol=float(q.get("abs_tol", QuadConfig().abs_tol)),
            max_subdivisions=int(q.get("max_subdivisions", QuadConfig().max_subdivisions)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), path, "quad") from None

    grids = default_grids()
    for name, value in obj.get("grids", {}).items():
        if name not in grids:
            raise ConfigError(f"unknown grid {name!r}", path, f"grids.{name}")
        grids[name] = _grid(value, path, name)

    corpus = {}
    for name, fns in obj.get("corpus", {}).items():
        try:
            corpus[name] = [ExpPoly.from_json(f) for f in fns]
        except (HalfplaneError, TypeError, ValueError, AttributeError) as exc:
            raise ConfigError(str(exc), path, f"corpus.{name}") from None

    source = {
        "schema_version": SCHEMA_VERSION,
        "space": space.to_json(),
        "quad": {"rel_tol": quad.rel_tol, "abs_tol": quad.abs_tol,
                 "max_subdivisions": quad.max_subdivisions},
        "grids": {k: [[z.real, z.imag] for z in v] if k == "z" else v for k, v in grids.items()},
        "corpus": {k: [f.to_json() for f in v] for k, v in sorted(corpus.items())},
    }
    return RunConfig(space, quad, grids, corpus, source, path)


def load_config(path: str | None = None, preset_name: str | None = None) -> RunConfig:
    if path is None:
        if preset_name is None:
            raise ConfigError("give --config or --preset")
        return parse_config({"preset": preset_name}, None)
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", path, None) from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg} (line {exc.lineno})", path, None) from None
    return parse_config(obj, path, preset_name)


__all__ = ["RunConfig", "SCHEMA_VERSION", "ENV_RTOL", "parse_config", "load_config",
           "default_grids", "default_rel_tol"]

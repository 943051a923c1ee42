"""Command line interface.

    halfplane --preset hardy_sobolev banach check
    halfplane --config run.json isometry check --trials 50 --seed 7
    halfplane --preset dirichlet report --all --seed 7

Every command prints one JSON document.  Exit codes: 0 all checks hold,
1 some check fails, 2 some check is inconclusive (and none fails),
3 configuration or usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .algebra import banach_checks, submultiplicativity_trial
from .config import SCHEMA_VERSION, RunConfig, load_config
from .corpus import random_exppolys, random_points
from .errors import ConfigError, HalfplaneError, NotInSpace, NotMultiplier, ToleranceNotMet
from .exppoly import AnalyticFn, ExpPoly, Term, laplace
from .kernel import kernel_eval, kernel_matrix, kernel_norm_sq, reproducing_check
from .multiplier import CarlesonMeasureSpec, carleson_constant_estimate, hinf_norm, multiplier_lower_bound
from .report import FAILS, HOLDS, INCONCLUSIVE, CheckReport, jsonable
from .spaces import a2m_norm_numeric, in_space, index_norms, isometry_check, l2w_norm
from .weight import derive_weights

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_CONFIG = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument helpers


def parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}") from None


def parse_list(text: str, kind=float) -> list:
    items = [s for s in text.replace(";", ",").split(",") if s.strip()]
    if not items:
        raise UsageError("empty list")
    if kind is complex:
        return [parse_complex(s) for s in items]
    try:
        return [kind(s) for s in items]
    except ValueError:
        raise UsageError(f"bad list {text!r}") from None


def parse_function(text: str) -> AnalyticFn:
    """``"offset; c,k,a; c,k,a"`` -> ``offset + L[sum c t^k exp(-a t)]``.

    A segment with one entry is the offset; the offset may be omitted.
    """
    offset = 0j
    terms = []
    for seg in (s.strip() for s in text.split(";")):
        if not seg:
            continue
        parts = [p.strip() for p in seg.split(",")]
        if len(parts) == 1:
            offset += parse_complex(parts[0])
        elif len(parts) == 3:
            try:
                k = int(parts[1])
            except ValueError:
                raise UsageError(f"power must be an integer in {seg!r}") from None
            terms.append(Term(parse_complex(parts[0]), k, parse_complex(parts[2])))
        else:
            raise UsageError(f"segment {seg!r} must be 'offset' or 'c,k,a'")
    try:
        return AnalyticFn(ExpPoly(tuple(terms)), offset)
    except HalfplaneError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands; each returns (checks, results)


def _timed(fn, timings: bool) -> list[CheckReport]:
    t0 = time.perf_counter()
    reps = fn()
    reps = reps if isinstance(reps, list) else [reps]
    if timings:
        ms = round((time.perf_counter() - t0) * 1e3, 3)
        for r in reps:
            r.runtime_ms = ms
    return reps


def run_checks(thunks, jobs: int = 1, timings: bool = False) -> list[CheckReport]:
    """Evaluate independent checks (optionally in threads); order by check name."""
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            groups = list(pool.map(lambda f: _timed(f, timings), thunks))
    else:
        groups = [_timed(f, timings) for f in thunks]
    return sorted((r for g in groups for r in g), key=lambda r: r.check)


def delta2_reports(cfg: RunConfig) -> list[CheckReport]:
    reps = cfg.space.delta2_reports(cfg.grids["delta2"])
    for n, r in enumerate(reps):
        r.check = f"delta2[{n}]"
    return reps


def isometry_suite(cfg: RunConfig, trials: int, seed: int, rtol: float = 1e-6) -> CheckReport:
    fs = random_exppolys(seed, trials, space=cfg.space)
    worst, worst_f, inconclusive = 0.0, None, 0
    for f in fs:
        try:
            rep = isometry_check(f, cfg.space, cfg.quad, rtol)
        except ToleranceNotMet:
            inconclusive += 1
            continue
        if rep.value >= worst:
            worst, worst_f = rep.value, f
    details = {"trials": trials, "seed": seed, "rtol": rtol, "inconclusive": inconclusive}
    if worst >= rtol:
        return CheckReport(FAILS, "quadrature", margin=rtol - worst, value=worst,
                           witness=worst_f.to_json(), check="isometry", details=details)
    verdict = INCONCLUSIVE if inconclusive else HOLDS
    return CheckReport(verdict, "quadrature", margin=rtol - worst, value=worst,
                       check="isometry", details=details)


def reproducing_suite(cfg: RunConfig, samples: int, seed: int, tol: float = 1e-8) -> CheckReport:
    fs = random_exppolys(seed, samples, space=cfg.space)
    zs = random_points(seed + 1, samples)
    worst, witness, verdict = 0.0, None, HOLDS
    for f, z in zip(fs, zs):
        rep = reproducing_check(cfg.space, f, z, cfg.quad, tol)
        if rep.verdict == INCONCLUSIVE and verdict == HOLDS:
            verdict = INCONCLUSIVE
        if rep.value >= worst:
            worst, witness = rep.value, {"z": complex(z), "f": f.to_json()}
    if worst >= tol:
        return CheckReport(FAILS, "quadrature", margin=tol - worst, value=worst, witness=witness,
                           check="reproducing", details={"samples": samples, "seed": seed})
    return CheckReport(verdict, "quadrature", margin=tol - worst, value=worst,
                       check="reproducing", details={"samples": samples, "seed": seed})


def kernel_psd_check(cfg: RunConfig, tol: float = 1e-8) -> CheckReport:
    K = kernel_matrix(cfg.space, cfg.grids["z"], cfg.quad)
    herm = 0.5 * (K + K.conj().T)
    lam = float(np.linalg.eigvalsh(herm).min())
    asym = float(np.abs(K - K.conj().T).max())
    verdict = HOLDS if lam > -tol else FAILS
    return CheckReport(verdict, "quadrature", margin=lam + tol, value=lam,
                       witness=None if verdict == HOLDS else cfg.grids["z"],
                       check="kernel_psd", details={"hermitian_defect": asym,
                                                    "points": cfg.grids["z"]})


def submult_suite(cfg: RunConfig, pairs: int, seed: int) -> CheckReport:
    fs = random_exppolys(seed, 2 * pairs, space=cfg.space)
    rep = submultiplicativity_trial(cfg.space, list(zip(fs[::2], fs[1::2])))
    rep.details["seed"] = seed
    return rep


def multiplier_report(cfg: RunConfig, h: AnalyticFn, corpus: list[ExpPoly],
                      name: str) -> CheckReport:
    members = [f for f in corpus if in_space(f, cfg.space)]
    details = {"corpus": name, "size": len(members), "skipped_non_members": len(corpus) - len(members)}
    if not members:
        raise UsageError(f"no function of corpus {name!r} lies in the space")
    try:
        details["hinf_estimate"] = hinf_norm(h)
    except HalfplaneError as exc:
        details["hinf_estimate"] = None
        details["hinf_error"] = str(exc)
    try:
        bound = multiplier_lower_bound(h, cfg.space, members)
    except NotMultiplier as exc:
        return CheckReport(FAILS, "exact", margin=-math.inf, value=math.inf,
                           witness=exc.witness.to_json(), check="multiplier", details=details)
    return CheckReport(HOLDS, "grid", margin=0.0, value=bound, check="multiplier", details=details)


def cmd_space_validate(cfg, args):
    return delta2_reports(cfg), {"weights": [w.to_json() for w in derive_weights(cfg.space).per_index]}


def cmd_weight_eval(cfg, args):
    ts = parse_list(args.t)
    if any(t <= 0 for t in ts):
        raise UsageError("weights are defined for t > 0")
    dw = derive_weights(cfg.space)
    rows = [{"t": t, "w": float(dw.total(t)), "per_index": [float(w(t)) for w in dw.per_index]}
            for t in ts]
    return [], {"weight": dw.total.to_json(), "values": rows}


def cmd_norm(cfg, args):
    F = parse_function(args.function)
    if F.offset != 0:
        raise UsageError("a nonzero constant is never in the space")
    w = derive_weights(cfg.space).total
    try:
        exact = l2w_norm(F.part, w)
    except NotInSpace as exc:
        rep = CheckReport(FAILS, "exact", margin=-math.inf, value=math.inf,
                          witness=F.part.to_json(), check="membership", details={"reason": str(exc)})
        return [rep], {}
    results = {"l2w_norm": exact, "index_norms": index_norms(F.part, cfg.space)}
    try:
        results["a2m_norm_quadrature"] = a2m_norm_numeric(F, cfg.space, cfg.quad)
    except ToleranceNotMet as exc:
        results["a2m_norm_quadrature"] = exc.estimate
        return [CheckReport(INCONCLUSIVE, "quadrature", value=exc.estimate, check="membership")], results
    return [CheckReport(HOLDS, "exact", margin=0.0, value=exact, check="membership")], results


def cmd_isometry_check(cfg, args):
    return [isometry_suite(cfg, args.trials, args.seed, args.rtol)], {}


def cmd_kernel_eval(cfg, args):
    z, zeta = parse_complex(args.z), parse_complex(args.zeta)
    if z.real <= 0 or zeta.real <= 0:
        raise UsageError("kernel points must lie in Re z > 0")
    return [], {"z": z, "zeta": zeta, "k_z(zeta)": kernel_eval(cfg.space, z, zeta, cfg.quad)}


def cmd_kernel_norm(cfg, args):
    grid = parse_list(args.a_grid) if args.a_grid else cfg.grids["kernel_a"]
    if any(a <= 0 for a in grid):
        raise UsageError("a-grid must be positive")
    vals = np.atleast_1d(kernel_norm_sq(cfg.space, np.asarray(grid), cfg.quad))
    return [], {"values": [{"a": a, "norm_sq": float(v)} for a, v in zip(grid, vals)]}


def cmd_banach_check(cfg, args):
    return banach_checks(cfg.space, cfg.quad, cfg.grids["t"]), {}


def cmd_multiplier_bound(cfg, args):
    h = parse_function(args.h)
    corpus = cfg.corpus_named(args.corpus)
    return [multiplier_report(cfg, h, corpus, args.corpus)], {}


def _parse_mu(cfg, specs, h_text):
    n = k = 0
    h = None
    points = []
    for spec in specs:
        kind, _, body = spec.partition(":")
        if kind == "density":
            vals = parse_list(body, int) if body else [0, 0]
            if len(vals) != 2:
                raise UsageError("density spec is 'density:n,k'")
            n, k = vals
            h = parse_function(h_text) if h_text else AnalyticFn(ExpPoly(), 1.0)
        elif kind == "point":
            z_text, _, mass = body.rpartition(",")
            points.append((parse_complex(z_text), float(mass)))
        else:
            raise UsageError(f"unknown measure part {spec!r}; use density:n,k or point:z,mass")
    try:
        return CarlesonMeasureSpec(cfg.space if h is not None else None, n, k, h, tuple(points))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_carleson_estimate(cfg, args):
    mu = _parse_mu(cfg, args.mu or ["density:0,0"], args.h)
    grid = parse_list(args.grid, complex) if args.grid else cfg.grids["z"]
    if any(z.real <= 0 for z in grid):
        raise UsageError("grid points must lie in Re z > 0")
    vals = carleson_constant_estimate(mu, cfg.space, grid, cfg.quad, return_all=True)
    return [], {"lower_bound": float(vals.max()),
                "per_point": [{"z": z, "ratio": float(v)} for z, v in zip(grid, vals)]}


def _report_corpus(cfg, seed):
    return random_exppolys(seed + 2, 10, space=cfg.space)


def cmd_report(cfg, args):
    seed = args.seed
    thunks = [
        lambda: isometry_suite(cfg, args.trials, seed),
        lambda: reproducing_suite(cfg, args.samples, seed),
        lambda: kernel_psd_check(cfg),
        lambda: submult_suite(cfg, args.pairs, seed),
        lambda: multiplier_report(cfg, AnalyticFn(ExpPoly.exp(1.0)), _report_corpus(cfg, seed),
                                  "random"),
        lambda: delta2_reports(cfg),
        lambda: banach_checks(cfg.space, cfg.quad, cfg.grids["t"]),
    ]
    return run_checks(thunks, max(args.jobs, 1), args.timings), {}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="halfplane", description="Checks for weighted half-plane spaces A^2_(m).")
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--preset", help="preset space, e.g. hardy_sobolev or 'bergman(0.5)'")
    p.add_argument("--timings", action="store_true", help="record runtime_ms (breaks byte-identity)")
    p.add_argument("--jobs", type=int, default=1, help="threads for independent checks")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("space").add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp.add_parser("validate").set_defaults(func=cmd_space_validate)

    wp = sub.add_parser("weight").add_subparsers(dest="action", required=True, parser_class=_Parser)
    we = wp.add_parser("eval")
    we.add_argument("--t", required=True, help="comma-separated positive t values")
    we.set_defaults(func=cmd_weight_eval)

    nm = sub.add_parser("norm")
    nm.add_argument("--function", required=True, help="'offset; c,k,a; ...'")
    nm.set_defaults(func=cmd_norm)

    ip = sub.add_parser("isometry").add_subparsers(dest="action", required=True, parser_class=_Parser)
    ic = ip.add_parser("check")
    ic.add_argument("--trials", type=int, default=50)
    ic.add_argument("--seed", type=int, default=0)
    ic.add_argument("--rtol", type=float, default=1e-6)
    ic.set_defaults(func=cmd_isometry_check)

    kp = sub.add_parser("kernel").add_subparsers(dest="action", required=True, parser_class=_Parser)
    ke = kp.add_parser("eval")
    ke.add_argument("--z", required=True)
    ke.add_argument("--zeta", required=True)
    ke.set_defaults(func=cmd_kernel_eval)
    kn = kp.add_parser("norm")
    kn.add_argument("--a-grid", help="comma-separated Re z values")
    kn.set_defaults(func=cmd_kernel_norm)

    bp = sub.add_parser("banach").add_subparsers(dest="action", required=True, parser_class=_Parser)
    bp.add_parser("check").set_defaults(func=cmd_banach_check)

    mp = sub.add_parser("multiplier").add_subparsers(dest="action", required=True, parser_class=_Parser)
    mb = mp.add_parser("bound")
    mb.add_argument("--h", required=True, help="'offset; c,k,a; ...'")
    mb.add_argument("--corpus", default="resolvents")
    mb.set_defaults(func=cmd_multiplier_bound)

    cp = sub.add_parser("carleson").add_subparsers(dest="action", required=True, parser_class=_Parser)
    ce = cp.add_parser("estimate")
    ce.add_argument("--mu", action="append", help="density:n,k or point:z,mass (repeatable)")
    ce.add_argument("--h", help="density factor h for density parts (default 1)")
    ce.add_argument("--grid", help="comma-separated complex points")
    ce.set_defaults(func=cmd_carleson_estimate)

    rp = sub.add_parser("report")
    rp.add_argument("--all", action="store_true", required=True)
    rp.add_argument("--seed", type=int, default=0)
    rp.add_argument("--trials", type=int, default=10)
    rp.add_argument("--samples", type=int, default=5)
    rp.add_argument("--pairs", type=int, default=20)
    rp.set_defaults(func=cmd_report)
    return p


def aggregate_exit(checks) -> int:
    verdicts = {c.verdict for c in checks}
    if FAILS in verdicts:
        return EXIT_FAIL
    if INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _emit(doc, out):
    out.write(json.dumps(jsonable(doc), indent=2, sort_keys=True, allow_nan=False) + "\n")


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    command = " ".join(x for x in (args.command, getattr(args, "action", None)) if x)
    try:
        cfg = load_config(args.config, args.preset)
        checks, results = args.func(cfg, args)
    except (ConfigError, UsageError) as exc:
        _emit({"schema_version": SCHEMA_VERSION, "command": command,
               "error": {"type": type(exc).__name__, "message": str(exc),
                         "path": getattr(exc, "path", None), "field": getattr(exc, "field", None)}},
              out)
        return EXIT_CONFIG
    except HalfplaneError as exc:
        _emit({"schema_version": SCHEMA_VERSION, "command": command, "config_hash": cfg.hash,
               "error": {"type": type(exc).__name__, "message": str(exc)}}, out)
        return EXIT_FAIL
    code = aggregate_exit(checks)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config_hash": cfg.hash,
        "space": {"name": cfg.space.name, **cfg.space.to_json()},
        "quad": cfg.source["quad"],
        "grids": cfg.source["grids"],
        "checks": [c.to_json() for c in sorted(checks, key=lambda c: c.check)],
        "results": results,
        "exit_code": code,
    }
    if hasattr(args, "seed"):
        doc["seed"] = args.seed
    _emit(doc, out)
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

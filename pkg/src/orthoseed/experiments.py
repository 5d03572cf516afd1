"""Named numerical experiments and their reports.

Each experiment produces a list of cells, one per (group, algorithm, N),
holding an error value (or ``None`` for a failed run) and an optional mean
wall time. Reports serialize to CSV (17 significant digits, ``---`` for
failures) and JSON (``null`` for failures, plus metadata).
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .algorithms import compute, lanczos_arrays
from .errors import EigenConvergenceError, ParameterError, QuadratureError
from .measure import Atom, Measure, make_catalog_measure, reference_recurrence
from .metrics import ErrorRecord, coeff_error, fixed_n_error, gram_error, time_call
from .quad import AdaptiveConfig, jacobi_rule
from .reference import jacobi_plus_mass_reference
from .rng import DEFAULT_SEED, XorShift64Star

__all__ = [
    "EXPERIMENTS",
    "Cell",
    "Report",
    "run_experiment",
    "ridge_measure",
    "strip_timing",
    "parse_param",
]

FAILURE_MARK = "---"
_RECOVERABLE = (ParameterError, QuadratureError, EigenConvergenceError, FloatingPointError,
                ZeroDivisionError, OverflowError, np.linalg.LinAlgError)


@dataclass(frozen=True)
class Cell:
    group: str
    record: ErrorRecord

    def row(self):
        r = self.record
        return {"group": self.group, "algorithm": r.algorithm, "N": r.N, "metric": r.metric,
                "value": r.value, "wall_time": r.wall_time}


@dataclass
class Report:
    name: str
    params: dict
    seed: int | None
    cells: list = field(default_factory=list)
    series: dict = field(default_factory=dict)

    def spec_hash(self):
        blob = json.dumps({"name": self.name, "params": self.params, "seed": self.seed},
                          sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def lookup(self, group, algorithm, N):
        for c in self.cells:
            if c.group == group and c.record.algorithm == algorithm and c.record.N == N:
                return c.record
        raise KeyError((group, algorithm, N))

    def to_dict(self):
        return {
            "metadata": {"experiment": self.name, "params": self.params, "seed": self.seed,
                         "spec_hash": self.spec_hash(), "version": __version__},
            "cells": [c.row() for c in self.cells],
            "series": {k: [_json_num(v) for v in vals] for k, vals in self.series.items()},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self):
        lines = ["group,algorithm,N,metric,value,wall_time"]
        for c in self.cells:
            r = c.record
            lines.append(",".join([c.group, r.algorithm, str(r.N), r.metric,
                                   _fmt(r.value), _fmt(r.wall_time, blank=True)]))
        return "\n".join(lines) + "\n"

    def series_csv(self):
        """Long-format ``series,n,value`` rows, or None when there are no series."""
        if not self.series:
            return None
        lines = ["series,n,value"]
        for key in sorted(self.series):
            for n, v in enumerate(self.series[key]):
                lines.append(f"{key},{n},{_fmt(v)}")
        return "\n".join(lines) + "\n"


def _fmt(v, blank=False):
    if v is None:
        return "" if blank else FAILURE_MARK
    return f"{v:.17g}"


def _json_num(v):
    return None if v is None or not math.isfinite(v) else float(v)


def strip_timing(report_dict):
    """Copy of a report dict with every ``wall_time`` removed."""
    out = json.loads(json.dumps(report_dict))
    for row in out["cells"]:
        row.pop("wall_time", None)
    return out


def parse_param(text):
    """``key=value`` with the value read as JSON when possible."""
    if "=" not in text:
        raise ParameterError(f"parameter {text!r} must look like key=value")
    key, raw = text.split("=", 1)
    key = key.strip()
    if not key:
        raise ParameterError(f"parameter {text!r} has an empty key")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def _int_list(v):
    if isinstance(v, (int, float)):
        return [int(v)]
    if isinstance(v, str):
        v = [s for s in v.replace(";", ",").split(",") if s.strip()]
    out = [int(s) for s in v]
    if not out or min(out) < 1:
        raise ParameterError(f"expected a list of positive integers, got {v!r}")
    return out


def _has(table, N, fixed=False):
    if fixed:
        return len(table.a) >= N and len(table.b) >= N + 1
    return len(table.b) >= N and len(table.a) >= N - 1


def _safe(fn):
    try:
        return fn()
    except _RECOVERABLE:
        return None


def _record(algo, N, metric, value, wall=None):
    if value is not None and not math.isfinite(value):
        value = None
    return ErrorRecord(algo, N, metric, value, wall)


def _timed(fn, repeats):
    if repeats <= 0:
        return None, _safe(fn)
    try:
        return time_call(fn, repeats=repeats)
    except _RECOVERABLE:
        return None, None


# ---------------------------------------------------------------------------
# Freud weights
# ---------------------------------------------------------------------------

def _freud(alpha, params):
    Ns = _int_list(params["N"])
    repeats = int(params["repeats"])
    cfg = AdaptiveConfig(max_order=int(params["max_order"]))
    Nmax = max(Ns)
    measure = make_catalog_measure("freud", (alpha, 0.0))
    report = Report(f"freud{alpha}", params, None)
    full = {}
    for algo in ("dp", "hd", "apc", "mc", "sp", "pc"):
        full[algo] = _safe(lambda: compute(algo, measure, Nmax, cfg))
        t = full[algo]
        if t is not None:
            report.series[f"b_{algo}"] = [float(v) for v in t.b[:Nmax + 1]]
    const = 12.0 if alpha == 4 else 60.0
    report.series["b_conjecture"] = [0.0] + [(n / const) ** (1.0 / alpha) for n in range(1, Nmax + 1)]
    pc_ref, sp_ref = full["pc"], full["sp"]
    for N in Ns:
        for algo in ("dp", "hd", "apc", "mc", "sp", "pc"):
            ref = sp_ref if algo == "pc" else pc_ref
            wall = None
            if algo in ("sp", "pc"):
                wall, _ = _timed(lambda: compute(algo, measure, N, cfg), repeats)
            t = full[algo]
            val = None
            if t is not None and ref is not None and _has(t, N) and _has(ref, N):
                val = coeff_error(t, ref, N)
            report.cells.append(Cell("cross" if algo in ("sp", "pc") else "vs_pc",
                                     _record(algo, N, "e_N", val, wall)))
    return report


# ---------------------------------------------------------------------------
# piecewise smooth weight
# ---------------------------------------------------------------------------

def _pws(params):
    Ns = _int_list(params["N"])
    repeats = int(params["repeats"])
    xi = float(params["xi"])
    measure = make_catalog_measure("pws", (1.0, -0.5, -0.5, xi))
    ref = reference_recurrence("pws", (1.0, -0.5, -0.5, xi), max(Ns))
    report = Report("pws", params, None)
    for algo in ("hd", "apc", "mc", "sp", "pc"):
        for N in Ns:
            wall, t = _timed(lambda: compute(algo, measure, N), repeats)
            val = coeff_error(t, ref, N) if t is not None and _has(t, N) else None
            report.cells.append(Cell(f"xi={xi:g}", _record(algo, N, "e_N", val, wall)))
    return report


# ---------------------------------------------------------------------------
# discrete Chebyshev
# ---------------------------------------------------------------------------

def _discrete_cheb(params):
    Ms = _int_list(params["M"])
    Ns = _int_list(params["N"])
    report = Report("discrete_cheb", params, None)
    for M in Ms:
        measure = make_catalog_measure("discrete_chebyshev", (M,))
        for N in (n for n in Ns if n <= M):
            ref = reference_recurrence("discrete_chebyshev", (M,), N)
            for algo in ("sp", "lz", "pc"):
                t = _safe(lambda: compute(algo, measure, N))
                val = coeff_error(t, ref, N) if t is not None and _has(t, N) else None
                report.cells.append(Cell(f"M={M}", _record(algo, N, "e_N", val)))
    return report


# ---------------------------------------------------------------------------
# ridge (discrete convolution) measure
# ---------------------------------------------------------------------------

def ridge_measure(M, seed=DEFAULT_SEED, dim=25):
    """Equal masses at projections of ``M`` uniform points of ``[-1, 1]^dim``.

    The direction is drawn first (entrywise uniform on [-1, 1], then scaled
    to unit length), so every ``M`` shares it; points follow row by row.
    Returns ``(measure, direction)``.
    """
    gen = XorShift64Star(seed)
    direction = gen.uniform(dim, -1.0, 1.0)
    direction /= np.linalg.norm(direction)
    X = gen.uniform((M, dim), -1.0, 1.0)
    tau = X @ direction
    return Measure(atoms=[Atom(float(t), 1.0 / M) for t in tau]), direction


def _discrete_convolution(params, seed):
    Ms = _int_list(params["M"])
    Ns = _int_list(params["N"])
    report = Report("discrete_convolution", params, seed)
    for M in Ms:
        measure, direction = ridge_measure(M, seed)
        report.series[f"direction_M={M}"] = [float(v) for v in direction]
        for algo in ("hd", "apc", "mc", "sp", "lz", "pc"):
            for N in (n for n in Ns if n <= M):
                t = _safe(lambda: compute(algo, measure, N))
                val = None
                if t is not None and _has(t, N):
                    val = _safe(lambda: gram_error(t, measure, N))
                report.cells.append(Cell(f"M={M}", _record(algo, N, "f_N", val)))
    return report


# ---------------------------------------------------------------------------
# Jacobi weight plus a point mass
# ---------------------------------------------------------------------------

def discretized_lanczos(alpha, beta, atoms, N):
    """LZ on an ``N+1``-point Gauss-Jacobi rule of the normalized weight plus atoms.

    Returns a table with ``a_1..a_{N+1}`` and ``b_0..b_{N+1}`` where available.
    """
    u, w = jacobi_rule(N + 1, alpha, beta)
    nodes = np.concatenate([u, [t for t, _ in atoms]])
    masses = np.concatenate([w / w.sum(), [nu for _, nu in atoms]])
    return lanczos_arrays(nodes, masses, N + 1)


def _multi_component(params):
    Ns = _int_list(params["N"])
    alpha, beta = float(params["alpha"]), float(params["beta"])
    cases = params["cases"]
    report = Report("multi_component", params, None)
    Nmax = max(Ns)
    for tau, nu in cases:
        group = f"tau={tau:g},nu={nu:g}"
        ref = jacobi_plus_mass_reference(alpha, beta, [(tau, nu)], Nmax + 1)
        measure = make_catalog_measure("jacobi_plus_mass", (alpha, beta, tau, nu))
        for algo in ("hd", "apc", "mc", "sp", "lz", "pc"):
            for N in Ns:
                if algo == "lz":
                    t = _safe(lambda: discretized_lanczos(alpha, beta, [(tau, nu)], N))
                else:
                    t = _safe(lambda: compute(algo, measure, N + 1))
                val = fixed_n_error(t, ref, N) if t is not None and _has(t, N, fixed=True) else None
                report.cells.append(Cell(group, _record(algo, N, "e_N^fixed", val)))
    return report


# ---------------------------------------------------------------------------
# half-range Hermite plus discrete Chebyshev
# ---------------------------------------------------------------------------

def _gmulti(params):
    Ms = _int_list(params["M"])
    Ns = _int_list(params["N"])
    report = Report("gmulti", params, None)
    for M in Ms:
        measure = make_catalog_measure("half_hermite_plus_discrete_chebyshev", (M,))
        for variant, adaptive in (("fixed", False), ("adaptive", True)):
            for N in Ns:
                t = _safe(lambda: compute("pcl", measure, N, adaptive=adaptive))
                val = None
                if t is not None and _has(t, N):
                    val = _safe(lambda: gram_error(t, measure, N))
                report.cells.append(Cell(f"M={M},{variant}", _record("pcl", N, "f_N", val)))
    return report


_STEPS = "20,40,60,80,100"

EXPERIMENTS = {
    "freud4": ({"N": _STEPS, "repeats": 100, "max_order": 2048}, lambda p, s: _freud(4, p)),
    "freud6": ({"N": _STEPS, "repeats": 100, "max_order": 2048}, lambda p, s: _freud(6, p)),
    "pws": ({"N": _STEPS, "repeats": 100, "xi": 0.1}, lambda p, s: _pws(p)),
    "discrete_cheb": ({"M": "40,80,160,320", "N": "10,20,40,80,100,160,320"},
                      lambda p, s: _discrete_cheb(p)),
    "discrete_convolution": ({"M": "100,300", "N": _STEPS}, _discrete_convolution),
    "multi_component": ({"N": "1,7,18,40", "alpha": -0.6, "beta": 0.4,
                         "cases": [[-1.0, 0.5], [2.0, 1.0]]}, lambda p, s: _multi_component(p)),
    "gmulti": ({"M": "20,40,80,160", "N": _STEPS}, lambda p, s: _gmulti(p)),
}

_SEEDED = ("discrete_convolution",)


def run_experiment(name, seed=None, params=None):
    """Run a named experiment; ``params`` override the defaults."""
    if name not in EXPERIMENTS:
        raise ParameterError(f"unknown experiment {name!r}; expected one of {tuple(EXPERIMENTS)}")
    defaults, fn = EXPERIMENTS[name]
    params = dict(params or {})
    unknown = set(params) - set(defaults)
    if unknown:
        raise ParameterError(f"unknown parameters for {name}: {sorted(unknown)}")
    merged = {**defaults, **params}
    if name in _SEEDED:
        seed = DEFAULT_SEED if seed is None else int(seed)
    else:
        seed = None
    with np.errstate(all="ignore"):
        return fn(merged, seed)

"""Error metrics and the timing harness used by the experiments."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from threadpoolctl import threadpool_limits

from .errors import ParameterError, QuadratureError
from .poly import eval_orthonormal
from .quad import AdaptiveConfig, order_sequence, piece_rule

__all__ = [
    "ErrorRecord",
    "coeff_error",
    "fixed_n_error",
    "gram_matrix",
    "gram_error",
    "time_call",
    "METRIC_KINDS",
]

METRIC_KINDS = ("e_N", "f_N", "e_N^fixed")


@dataclass(frozen=True)
class ErrorRecord:
    """One (algorithm, N) cell; ``value`` is None for a failed computation."""

    algorithm: str
    N: int
    metric: str
    value: float | None
    wall_time: float | None = None

    def __post_init__(self):
        if self.metric not in METRIC_KINDS:
            raise ParameterError(f"unknown metric {self.metric!r}")
        if self.value is not None and not (self.value >= 0 and math.isfinite(self.value)):
            raise ParameterError("error values must be finite and nonnegative")

    @property
    def failed(self):
        return self.value is None


def coeff_error(computed, reference, N):
    """``e_N``: l2 distance over ``a_1..a_{N-1}`` and ``b_0..b_{N-1}``."""
    for name, t in (("computed", computed), ("reference", reference)):
        if len(t.b) < N or len(t.a) < N - 1:
            raise ParameterError(f"{name} table has fewer than {N} coefficients")
    da = computed.a[:N - 1] - reference.a[:N - 1]
    db = computed.b[:N] - reference.b[:N]
    return float(math.sqrt(np.sum(da * da) + np.sum(db * db)))


def fixed_n_error(computed, reference, n):
    """``((a_n - a^_n)^2 + (b_n - b^_n)^2)^(1/2)``."""
    for name, t in (("computed", computed), ("reference", reference)):
        if len(t.a) < n or len(t.b) < n + 1:
            raise ParameterError(f"{name} table lacks a_{n} or b_{n}")
    return float(math.hypot(computed.a[n - 1] - reference.a[n - 1], computed.b[n] - reference.b[n]))


def _piece_gram(piece, table, N, cfg):
    prev = None
    for K in order_sequence(cfg):
        if K < N and K != cfg.max_order:
            # a K-point rule cannot be exact below this order for a polynomial weight
            continue
        x, W = piece_rule(piece, K)
        with np.errstate(all="ignore"):
            P = eval_orthonormal(table, x, N - 1)
            G = (P * W) @ P.T
            S = (np.abs(P) * W) @ np.abs(P).T
        if not np.all(np.isfinite(G)):
            raise QuadratureError("Gram matrix entries are not finite")
        if prev is not None and np.all(np.abs(G - prev) <= cfg.rel_tol * np.maximum(np.abs(G), S)):
            return G
        prev = G
    raise QuadratureError(f"Gram matrix on {piece.interval} did not converge by order {cfg.max_order}")


def gram_matrix(table, measure, N, cfg=None):
    """``A_{ij} = int p_i p_j dmu`` for ``i, j < N``."""
    cfg = cfg or AdaptiveConfig()
    if len(table.b) < N or len(table.a) < N - 1:
        raise ParameterError(f"table has fewer than {N} coefficients")
    A = np.zeros((N, N))
    if measure.atoms:
        with np.errstate(all="ignore"):
            P = eval_orthonormal(table, measure.atom_locations, N - 1)
            A += (P * measure.atom_masses) @ P.T
    for piece in measure.pieces:
        A += _piece_gram(piece, table, N, cfg)
    return A


def gram_error(table, measure, N, cfg=None):
    """``f_N = ||A - I||_F`` for the Gram matrix of ``p_0..p_{N-1}``.

    Atoms are summed exactly; continuous pieces use the adaptive rules.
    Returns ``inf`` if the polynomials overflow at the atoms.
    """
    A = gram_matrix(table, measure, N, cfg)
    if not np.all(np.isfinite(A)):
        return math.inf
    return float(np.linalg.norm(A - np.eye(N)))


def time_call(fn, repeats=100, warmup=1):
    """Mean wall time of ``fn()`` over ``repeats`` runs on a single thread.

    Returns ``(mean_seconds, last_result)``; warm-up runs are not timed.
    """
    if repeats < 1:
        raise ParameterError("repeats must be positive")
    with threadpool_limits(limits=1):
        result = None
        for _ in range(warmup):
            result = fn()
        t0 = time.perf_counter()
        for _ in range(repeats):
            result = fn()
        elapsed = time.perf_counter() - t0
    return elapsed / repeats, result

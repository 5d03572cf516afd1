"""Integration of polynomials and other smooth functions against a Measure.

Compact pieces are mapped affinely onto [-1, 1] and integrated with the
Gauss-Jacobi rule whose exponents match the declared endpoint behaviour
of the weight, so only the smooth factor ``omega`` is sampled. Unbounded
pieces use a rational map onto (-1, 1) composed with a Gauss-Legendre
(or Gauss-Jacobi, for a finite singular endpoint) rule.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ParameterError, QuadratureError
from .measure import jacobi_recurrence
from .poly import eval_orthonormal, gauss_quadrature

__all__ = [
    "AdaptiveConfig",
    "jacobi_rule",
    "piece_rule",
    "piece_integral",
    "piece_integral_unbounded",
    "adaptive_piece_integral",
    "adaptive_piece_integrals",
    "measure_moment",
    "measure_moments",
    "monomial_moments",
    "modified_moments",
    "total_mass",
    "order_sequence",
    "ENV_MAX_ORDER",
]

ENV_MAX_ORDER = "ORTHOSEED_MAX_ORDER"
_DEFAULT_MAX_ORDER = 1024


def _env_max_order():
    raw = os.environ.get(ENV_MAX_ORDER)
    if raw is None or raw.strip() == "":
        return _DEFAULT_MAX_ORDER
    try:
        val = int(raw)
    except ValueError:
        raise ParameterError(f"{ENV_MAX_ORDER} must be a positive integer, got {raw!r}") from None
    if val < 1:
        raise ParameterError(f"{ENV_MAX_ORDER} must be a positive integer, got {raw!r}")
    return val


@dataclass(frozen=True)
class AdaptiveConfig:
    """Order schedule of the adaptive quadrature loop.

    Orders run ``K0, K0*growth, K0*growth^2, ...`` capped at ``max_order``;
    ``max_order`` defaults to the ``ORTHOSEED_MAX_ORDER`` environment
    variable, or 1024.
    """

    initial_order: int = 10
    growth: float = 2.0
    rel_tol: float = 1e-12
    max_order: int = field(default_factory=_env_max_order)

    def __post_init__(self):
        if int(self.initial_order) != self.initial_order or self.initial_order < 1:
            raise ParameterError("initial_order must be a positive integer")
        if not self.growth > 1:
            raise ParameterError("growth must exceed 1")
        if not 0 < self.rel_tol < 1:
            raise ParameterError("rel_tol must lie in (0, 1)")
        if self.max_order < self.initial_order:
            raise ParameterError("max_order must be at least initial_order")


def order_sequence(cfg):
    """The orders visited by the adaptive loop, ending at ``max_order``."""
    orders = []
    k = float(cfg.initial_order)
    while True:
        K = min(int(round(k)), cfg.max_order)
        if orders and K <= orders[-1]:
            K = min(orders[-1] + 1, cfg.max_order)
        if not orders or K > orders[-1]:
            orders.append(K)
        if K >= cfg.max_order:
            return orders
        k *= cfg.growth


@lru_cache(maxsize=128)
def jacobi_rule(K, alpha=0.0, beta=0.0):
    """K-point Gauss rule for ``(1 - u)^alpha (1 + u)^beta`` on [-1, 1]."""
    rule = gauss_quadrature(jacobi_recurrence(K, alpha, beta), K)
    rule.nodes.flags.writeable = False
    rule.weights.flags.writeable = False
    return rule.nodes, rule.weights


def _compact_rule(piece, K):
    lo, hi = piece.interval
    alpha, beta = piece.right_exponent, piece.left_exponent
    u, lam = jacobi_rule(K, alpha, beta)
    h = 0.5 * (hi - lo)
    x = h * u + 0.5 * (hi + lo)
    with np.errstate(all="ignore"):
        w = piece.evaluate_weight(x, dl=h * (1 + u), dr=h * (1 - u))
        omega = w * np.power(1 - u, -alpha) * np.power(1 + u, -beta)
    return x, h * lam * omega


def _unbounded_rule(piece, K):
    lo, hi = piece.interval
    c = piece.map_scale
    if math.isinf(lo) and math.isinf(hi):
        u, lam = jacobi_rule(K, 0.0, 0.0)
        s = 1 - u * u
        x = c * u / s
        jac = c * (1 + u * u) / (s * s)
        with np.errstate(all="ignore"):
            w = piece.evaluate_weight(x)
        return x, lam * jac * w
    # half line: t = distance from the finite endpoint, singular exponent at u = -1
    finite_left = math.isfinite(lo)
    expo = piece.left_exponent if finite_left else piece.right_exponent
    u, lam = jacobi_rule(K, 0.0, expo)
    t = c * (1 + u) / (1 - u)
    jac = 2 * c / ((1 - u) * (1 - u))
    if finite_left:
        x = lo + t
        offsets = {"dl": t}
    else:
        x = hi - t
        offsets = {"dr": t}
    with np.errstate(all="ignore"):
        w = piece.evaluate_weight(x, **offsets)
        eff = lam * jac * w * np.power(1 + u, -expo)
    return x, eff


@lru_cache(maxsize=512)
def piece_rule(piece, K):
    """Nodes ``x_k`` and weights ``W_k`` with ``sum W_k f(x_k) ~ int f w``.

    Nodes whose weight underflows to zero are dropped. Repeated calls return
    the same (read-only) arrays.
    """
    if K < 1:
        raise ParameterError("quadrature order must be positive")
    x, W = _compact_rule(piece, K) if piece.bounded else _unbounded_rule(piece, K)
    if not np.all(np.isfinite(W)):
        bad = x[~np.isfinite(W)][0]
        raise QuadratureError(
            f"weight factor is not finite at node x={bad!r} on {piece.interval}; "
            "check the declared endpoint exponents")
    keep = W != 0
    if not np.all(keep):
        x, W = x[keep], W[keep]
    x = np.ascontiguousarray(x)
    W = np.ascontiguousarray(W)
    x.flags.writeable = False
    W.flags.writeable = False
    return x, W


def _apply(x, W, f):
    with np.errstate(all="ignore"):
        vals = np.asarray(f(x), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("integrand is not finite at an interior quadrature node")
    terms = vals * W
    return terms.sum(axis=-1), np.abs(terms).sum(axis=-1)


def piece_integral(piece, f, K):
    """K-point Jacobi-weighted Gauss approximation on a compact piece."""
    if not piece.bounded:
        raise ParameterError("piece_integral needs a compact piece; use piece_integral_unbounded")
    x, W = piece_rule(piece, K)
    return float(_apply(x, W, f)[0])


def piece_integral_unbounded(piece, f, K):
    """K-point mapped-rule approximation on a piece with an infinite endpoint."""
    if piece.bounded:
        raise ParameterError("piece_integral_unbounded needs an infinite endpoint")
    x, W = piece_rule(piece, K)
    return float(_apply(x, W, f)[0])


def adaptive_piece_integrals(piece, f, cfg=None, start_order=None):
    """Adaptive integration of a vector-valued ``f`` over one piece.

    ``f(x)`` returns an array whose last axis runs over the nodes. The order
    grows until every component of two successive approximations differs by
    at most ``rel_tol`` relative to ``max(|I|, sum |W f|)``; the second scale
    keeps integrals that cancel to zero from demanding absolute accuracy
    below roundoff. ``start_order`` skips orders below a known-good value.

    Returns ``(values, order)``.
    """
    cfg = cfg or AdaptiveConfig()
    orders = order_sequence(cfg)
    j0 = 0
    if start_order is not None:
        # begin one step below the hint so the first comparison lands on it
        while j0 + 2 < len(orders) and orders[j0 + 1] < start_order:
            j0 += 1
    prev = val = None
    for K in orders[j0:]:
        prev = val
        x, W = piece_rule(piece, K)
        val, scale = _apply(x, W, f)
        if prev is not None:
            gap = np.abs(val - prev)
            if np.all(gap <= cfg.rel_tol * np.maximum(np.abs(val), scale)):
                return val, K
    gap = np.max(np.abs(val - prev)) if prev is not None else float("nan")
    raise QuadratureError(
        f"adaptive quadrature on {piece.interval} did not converge by order {cfg.max_order}: "
        f"last approximations {np.ravel(prev)[:3]} and {np.ravel(val)[:3]} differ by {gap:.3e}")


def adaptive_piece_integral(piece, f, cfg=None, start_order=None):
    val, _ = adaptive_piece_integrals(piece, f, cfg, start_order)
    return float(val)


def _atom_sum(measure, f):
    if not measure.atoms:
        return 0.0
    vals = np.asarray(f(measure.atom_locations), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("integrand is not finite at an atom")
    return vals @ measure.atom_masses


def measure_moments(measure, f, cfg=None):
    """Vector-valued version of :func:`measure_moment`."""
    cfg = cfg or AdaptiveConfig()
    total = _atom_sum(measure, f)
    for piece in measure.pieces:
        total = total + adaptive_piece_integrals(piece, f, cfg)[0]
    return total


def measure_moment(measure, f, cfg=None):
    """``int f dmu``: adaptive piece integrals plus the atom sum."""
    return float(measure_moments(measure, f, cfg))


def total_mass(measure, cfg=None):
    return measure_moment(measure, np.ones_like, cfg)


def _monomials(count):
    def f(x):
        out = np.empty((count,) + np.shape(x))
        out[0] = 1.0
        for k in range(1, count):
            out[k] = out[k - 1] * x
        return out
    return f


def monomial_moments(measure, count, cfg=None):
    """Moments ``m_0..m_{count-1}`` of ``x^k``."""
    if count < 1:
        raise ParameterError("count must be positive")
    return np.asarray(measure_moments(measure, _monomials(count), cfg), dtype=float)


def modified_moments(measure, aux, count, cfg=None):
    """Moments ``int q_k dmu``, k < count, of the orthonormal family of ``aux``."""
    if count < 1:
        raise ParameterError("count must be positive")
    return np.asarray(
        measure_moments(measure, lambda x: eval_orthonormal(aux, x, count - 1), cfg),
        dtype=float)

"""Coefficient recovery from moment sequences: Hankel determinants, aPC, modified Chebyshev."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from ..measure import (
    RecurrenceTable,
    hermite_recurrence,
    laguerre_recurrence,
    legendre_on_interval,
)
from ..quad import AdaptiveConfig, modified_moments, monomial_moments

__all__ = [
    "hankel_coeffs",
    "apc_coeffs",
    "modified_chebyshev",
    "MixedMomentRow",
    "default_auxiliary",
    "hankel_from_measure",
    "apc_from_measure",
    "mc_from_measure",
]


def _check_moments(moments, N):
    m = np.asarray(moments, dtype=float)
    if N < 1:
        raise ParameterError("N must be positive")
    if len(m) < 2 * N:
        raise ParameterError(f"{2 * N} moments are needed for N={N}, got {len(m)}")
    if not m[0] > 0:
        raise ParameterError("m_0 must be positive")
    return m


def _table(a, b, N, index=None, message=""):
    k = min(len(a), len(b))
    if k >= N:
        return RecurrenceTable(a[:N], b[:N])
    return RecurrenceTable(a[:k], b[:k], index, message)


def hankel_coeffs(moments, N):
    """Recurrence coefficients from Hankel determinants of ``m_0..m_{2N-1}``.

    ``Delta_n = det[m_{i+j}]_{i,j<n}`` and ``Delta'_n`` is the same with the
    last column shifted by one; determinants come from LU with partial
    pivoting in double precision, so the method breaks down for moderate
    ``N`` on purpose. Stops at the first zero or non-finite determinant or
    nonpositive radicand.
    """
    m = _check_moments(moments, N)
    H = np.array([[m[i + j] for j in range(N + 1)] for i in range(N)])
    delta = [1.0, m[0]]
    dprime = [0.0, m[1]]
    a, b = [], [math.sqrt(m[0])]
    for n in range(1, N + 1):
        if n > 1:
            cols = list(range(n - 1)) + [n]
            dprime.append(np.linalg.det(H[:n, cols]))
        if delta[n] == 0 or not math.isfinite(delta[n]) or not math.isfinite(dprime[n]):
            return _table(a, b, N, n, f"Hankel determinant of order {n} is {float(delta[n]):.6g}")
        a.append(dprime[n] / delta[n] - dprime[n - 1] / delta[n - 1])
        if n == N:
            break
        # b_n needs Delta_{n+1}, which uses moments up to m_{2n}
        dn1 = np.linalg.det(H[:n + 1, :n + 1])
        rad = dn1 * delta[n - 1] / (delta[n] * delta[n])
        if not rad > 0 or not math.isfinite(rad):
            return _table(a, b, N, n, f"radicand for b_{n} is {float(rad):.6g}")
        b.append(math.sqrt(rad))
        delta.append(dn1)
    return _table(a, b, N)


def apc_coeffs(moments, N):
    """Recurrence coefficients from monic expansion coefficients (aPC).

    For each ``n`` the ``(n+1) x (n+1)`` system ``[H_n-rows; e_n] c = e_n``
    gives the monomial coefficients of the monic ``pi_n``; normalising by
    ``sqrt(c^T H c)`` gives ``p_n``. With ``k_n`` the leading coefficient
    of ``p_n``, ``b_n = k_{n-1} / k_n`` and ``a_n`` follows from comparing
    the ``x^{n-1}`` coefficients of the recurrence. Only moments through
    ``m_{2N-1}`` are touched.
    """
    m = _check_moments(moments, N)
    a, b = [], [math.sqrt(m[0])]
    prev_c = np.array([1.0])
    prev_norm = m[0]
    for n in range(1, N + 1):
        A = np.zeros((n + 1, n + 1))
        for k in range(n):
            A[k] = m[k:k + n + 1]
        A[n, n] = 1.0
        rhs = np.zeros(n + 1)
        rhs[n] = 1.0
        try:
            c = np.linalg.solve(A, rhs)
        except np.linalg.LinAlgError:
            return _table(a, b, N, n, f"singular moment system at n={n}")
        if not np.all(np.isfinite(c)):
            return _table(a, b, N, n, f"non-finite solution at n={n}")
        # monic form: x^{n-1} coefficient of x*pi_{n-1} is c_{n-2}^{(n-1)}
        a.append((prev_c[-2] if n > 1 else 0.0) - c[n - 1])
        if n == N:
            break
        Hn = np.array([[m[i + j] for j in range(n + 1)] for i in range(n + 1)])
        norm = float(c @ Hn @ c)
        if not norm > 0 or not math.isfinite(norm):
            return _table(a, b, N, n, f"quadratic form for p_{n} is {float(norm):.6g}")
        b.append(math.sqrt(norm / prev_norm))
        prev_c, prev_norm = c, norm
    return _table(a, b, N)


@dataclass(frozen=True)
class MixedMomentRow:
    """``sigma_{n,k}`` for ``k = k_start, ..., k_start + len(values) - 1``."""

    n: int
    k_start: int
    values: np.ndarray


def modified_chebyshev(modified_moments, aux, N):
    """Modified Chebyshev algorithm.

    ``modified_moments[k] = int q_k dmu`` for the orthonormal family ``q_k``
    of the auxiliary table ``aux`` (coefficients ``c_k = aux.a[k-1]``,
    ``d_k = aux.b[k]``). ``2N`` moments yield ``a_1..a_N`` and ``b_0..b_{N-1}``;
    ``aux`` must hold ``c_1..c_{2N}`` and ``d_0..d_{2N-1}``.

    The returned table's ``info["sigma"]`` holds the mixed-moment rows.
    """
    mt = np.asarray(modified_moments, dtype=float)
    if N < 1:
        raise ParameterError("N must be positive")
    if len(mt) < 2 * N:
        raise ParameterError(f"{2 * N} modified moments are needed for N={N}, got {len(mt)}")
    if len(aux.a) < 2 * N or len(aux.b) < 2 * N:
        raise ParameterError("auxiliary table too short: needs c_1..c_{2N} and d_0..d_{2N-1}")
    L = 2 * N
    c = np.concatenate([[0.0], aux.a[:L]])      # c[k] = c_k
    d = np.concatenate([aux.b[:L], [0.0]])       # d[k] = d_k, d_L unused (sigma_{.,L} = 0)
    rad0 = d[0] * mt[0]
    if not rad0 > 0:
        raise ParameterError("d_0 * m~_0 must be positive")
    a, b = [], [math.sqrt(rad0)]
    rows = [MixedMomentRow(0, 0, mt[:L].copy())]
    s_prev2 = np.zeros(L + 1)                    # sigma_{n-2, k}
    s_prev = np.zeros(L + 1)                     # sigma_{n-1, k}
    s_prev[:L] = mt[:L]

    def fail(n, msg):
        t = _table(a, b, N, n, msg)
        return t.with_status(t.failure_index, t.message, True, sigma=rows)

    for n in range(1, N + 1):
        piv = s_prev[n - 1]
        if piv == 0 or not math.isfinite(piv):
            return fail(n, f"zero pivot sigma_{n - 1},{n - 1}")
        an = c[n] + d[n] * s_prev[n] / piv
        if n > 1:
            an -= d[n - 1] * s_prev2[n - 1] / s_prev2[n - 2]
        a.append(an)
        if n == N:
            break
        # sigma_{n,k} for k = n .. L-n-1
        s = np.zeros(L + 1)
        bsq = b[n - 1] ** 2 if n > 1 else 0.0
        for k in range(n, L - n):
            s[k] = (d[k] * s_prev[k - 1] + (c[k + 1] - an) * s_prev[k]
                    + d[k + 1] * s_prev[k + 1] - bsq * s_prev2[k])
        rows.append(MixedMomentRow(n, n, s[n:L - n].copy()))
        rad = d[n] * s[n] / piv
        if not rad > 0 or not math.isfinite(rad):
            return fail(n, f"radicand for b_{n} is {float(rad):.6g}")
        b.append(math.sqrt(rad))
        s_prev2, s_prev = s_prev, s
    t = _table(a, b, N)
    return t.with_status(None, "", True, sigma=rows)


def default_auxiliary(measure, count):
    """Auxiliary family used when none is given.

    Legendre on the support hull if it is bounded, Hermite on the real line,
    Laguerre shifted (or reflected) onto a half line.
    """
    lo, hi = measure.support_hull
    if math.isfinite(lo) and math.isfinite(hi):
        if hi == lo:
            lo, hi = lo - 1.0, hi + 1.0
        return legendre_on_interval(count, lo, hi)
    if math.isinf(lo) and math.isinf(hi):
        return hermite_recurrence(count)
    base = laguerre_recurrence(count, 0.0)
    if math.isfinite(lo):
        return RecurrenceTable(base.a + lo, base.b)
    return RecurrenceTable(hi - base.a, base.b)


def hankel_from_measure(measure, N, cfg=None):
    measure.check_supports(N)
    return hankel_coeffs(monomial_moments(measure, 2 * N, cfg), N)


def apc_from_measure(measure, N, cfg=None):
    measure.check_supports(N)
    return apc_coeffs(monomial_moments(measure, 2 * N, cfg), N)


def mc_from_measure(measure, N, cfg=None, aux=None):
    measure.check_supports(N)
    aux = aux if aux is not None else default_auxiliary(measure, 2 * N)
    mt = modified_moments(measure, aux, 2 * N, cfg)
    return modified_chebyshev(mt, aux, N)

"""Freud-weight recurrences from discrete Painleve equations."""
from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterError
from ..measure import RecurrenceTable, freud_moments
from ..special import log_gamma

__all__ = ["dp_freud", "dp_freud_squares"]


def _g(x):
    return math.exp(log_gamma(x))


def _rhs(n, rho):
    # the |x|^rho term contributes at odd n
    return n + 0.5 * rho * (1 - (-1) ** n)


def dp_freud_squares(alpha, rho, N):
    """Raw iterates ``s_1..s_N`` with ``b_n^2 = s_n / 2`` (alpha=4) or ``s_n`` (alpha=6).

    Iteration continues through nonpositive values so the full trajectory
    can be inspected; entries after an overflow are NaN.
    """
    if alpha not in (4, 6):
        raise ParameterError(f"Painleve recursions are implemented for alpha in (4, 6), got {alpha}")
    if not rho > -1:
        raise ParameterError(f"rho must be > -1, got {rho}")
    s = np.full(N + 1, np.nan)
    s[0] = 0.0
    with np.errstate(all="ignore"):
        if alpha == 4:
            if N >= 1:
                s[1] = 2 * _g((3 + rho) / 4) / _g((1 + rho) / 4)
            for n in range(1, N):
                s[n + 1] = _rhs(n, rho) / s[n] - s[n] - s[n - 1]
        else:
            g1, g3, g5, g7 = (_g((k + rho) / 6) for k in (1, 3, 5, 7))
            y1 = g3 / g1
            y2 = g5 / g3 - y1
            y3 = (g7 - 2 * (y1 + y2) * g5 + (y1 + y2) ** 2 * g3) / (y2 * y1 * g1)
            s[1:min(N, 3) + 1] = [y1, y2, y3][:min(N, 3)]
            for n in range(2, N - 1):
                ym2, ym1, y, yp1 = s[n - 2], s[n - 1], s[n], s[n + 1]
                rest = (ym2 * ym1 + ym1 * ym1 + 2 * ym1 * y + ym1 * yp1
                        + y * y + 2 * y * yp1 + yp1 * yp1)
                s[n + 2] = (_rhs(n, rho) / (6 * y) - rest) / yp1
    return s[1:]


def dp_freud(alpha, rho, N):
    """Recurrence coefficients of ``|x|^rho exp(-|x|^alpha)``, alpha in {4, 6}.

    Returns ``a_1..a_N`` (all zero) and ``b_0..b_{N-1}`` plus ``b_N``; ``b_0``
    comes from the exact total mass. The iteration is unstable: the table is
    cut at the first ``b_n`` whose square is not positive and finite, and
    ``failure_index`` records that ``n``.
    """
    if N < 1:
        raise ParameterError("N must be positive")
    s = dp_freud_squares(alpha, rho, N)
    bsq = s / 2 if alpha == 4 else s
    b0 = math.sqrt(freud_moments(alpha, rho, 1)[0])
    bad = np.nonzero(~(np.isfinite(bsq) & (bsq > 0)))[0]
    if len(bad) == 0:
        return RecurrenceTable(np.zeros(N), np.concatenate([[b0], np.sqrt(bsq)]))
    n_fail = int(bad[0]) + 1
    b = np.concatenate([[b0], np.sqrt(bsq[:n_fail - 1])])
    if n_fail == N:
        # only the optional b_N is missing
        return RecurrenceTable(np.zeros(N), b)
    return RecurrenceTable(np.zeros(n_fail), b, n_fail,
                           f"b_{n_fail}^2 = {float(bsq[n_fail - 1]):.6g} lost positivity")

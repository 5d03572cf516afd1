"""High-precision reference coefficients for Jacobi weights with point masses.

The normalized Jacobi weight is replaced by a Gauss-Jacobi rule computed in
extended precision (Newton-polished nodes, Christoffel weights); the atoms
are appended and a Stieltjes sweep runs in the same precision. The rule is
exact for every moment the sweep touches, so the only error left is
rounding at ``dps`` digits.
"""
from __future__ import annotations

import mpmath

from .errors import ParameterError
from .measure import RecurrenceTable
from .quad import jacobi_rule

__all__ = ["jacobi_recurrence_mp", "gauss_jacobi_mp", "stieltjes_mp", "jacobi_plus_mass_reference"]


def jacobi_recurrence_mp(K, alpha, beta, normalized=True):
    """Orthonormal Jacobi recurrence (``a_1..a_K``, ``b_0..b_K``) as mpf lists."""
    al, be = mpmath.mpf(alpha), mpmath.mpf(beta)
    s = al + be
    if normalized:
        b = [mpmath.mpf(1)]
    else:
        b = [mpmath.sqrt(2 ** (s + 1) * mpmath.gamma(al + 1) * mpmath.gamma(be + 1) / mpmath.gamma(s + 2))]
    a = []
    for n in range(1, K + 1):
        if n == 1:
            a.append((be - al) / (s + 2))
        else:
            a.append((be * be - al * al) / ((2 * n + s - 2) * (2 * n + s)))
        if n == 1:
            b.append(mpmath.sqrt(4 * (al + 1) * (be + 1) / ((s + 2) ** 2 * (s + 3))))
        else:
            b.append(mpmath.sqrt(4 * n * (n + al) * (n + be) * (n + s)
                                 / ((2 * n + s) ** 2 * (2 * n + s + 1) * (2 * n + s - 1))))
    return a, b


def _eval(a, b, x, K):
    # p_0..p_K and p_K' at x
    p_prev, p = mpmath.mpf(0), 1 / b[0]
    d_prev, d = mpmath.mpf(0), mpmath.mpf(0)
    vals = [p]
    for n in range(K):
        p_next = ((x - a[n]) * p - b[n] * p_prev) / b[n + 1]
        d_next = ((x - a[n]) * d + p - b[n] * d_prev) / b[n + 1]
        p_prev, p = p, p_next
        d_prev, d = d, d_next
        vals.append(p)
    return vals, d


def gauss_jacobi_mp(K, alpha, beta, normalized=True):
    """K-point Gauss-Jacobi rule in the current mpmath precision."""
    a, b = jacobi_recurrence_mp(K, alpha, beta, normalized)
    x0, _ = jacobi_rule(K, float(alpha), float(beta))
    nodes, weights = [], []
    tol = mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
    for guess in x0:
        x = mpmath.mpf(guess)
        for _ in range(50):
            vals, d = _eval(a, b, x, K)
            step = vals[K] / d
            x -= step
            if abs(step) < tol:
                break
        vals, _ = _eval(a, b, x, K)
        nodes.append(x)
        weights.append(1 / mpmath.fsum(v * v for v in vals[:K]))
    return nodes, weights


def stieltjes_mp(nodes, weights, N):
    """Stieltjes sweep on a discrete measure: ``a_1..a_N``, ``b_0..b_N``."""
    m0 = mpmath.fsum(weights)
    b = [mpmath.sqrt(m0)]
    a = []
    prev = [mpmath.mpf(0)] * len(nodes)
    cur = [1 / b[0]] * len(nodes)
    for n in range(N):
        an = mpmath.fsum(w * x * p * p for w, x, p in zip(weights, nodes, cur))
        a.append(an)
        nxt = [(x - an) * p - b[n] * q for x, p, q in zip(nodes, cur, prev)]
        bn = mpmath.sqrt(mpmath.fsum(w * v * v for w, v in zip(weights, nxt)))
        b.append(bn)
        prev, cur = cur, [v / bn for v in nxt]
    return a, b


def jacobi_plus_mass_reference(alpha, beta, atoms, N, dps=50, extra_nodes=16):
    """``N`` coefficients plus ``b_N`` of the normalized Jacobi weight plus atoms.

    ``atoms`` is a sequence of ``(tau, nu)`` pairs.
    """
    if N < 1:
        raise ParameterError("N must be positive")
    K = N + 1 + extra_nodes
    with mpmath.workdps(dps):
        nodes, weights = gauss_jacobi_mp(K, alpha, beta, normalized=True)
        for tau, nu in atoms:
            nodes.append(mpmath.mpf(tau))
            weights.append(mpmath.mpf(nu))
        a, b = stieltjes_mp(nodes, weights, N)
        return RecurrenceTable([float(v) for v in a], [float(v) for v in b])

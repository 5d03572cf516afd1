"""Lanczos tridiagonalization of a discrete measure."""
from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterError
from ..measure import Atom, RecurrenceTable

__all__ = ["lanczos", "lanczos_arrays"]

# relative size of b_n (against the spread of the nodes) treated as breakdown
_BREAKDOWN = 1e-14


def lanczos_arrays(nodes, weights, N):
    """Lanczos on ``diag(nodes)`` started from ``sqrt(weights)``.

    Every new basis vector is orthogonalised against all previous ones,
    twice. Returns ``N`` coefficients plus ``b_N`` when ``N`` is smaller than
    the number of nodes.
    """
    x = np.asarray(nodes, dtype=float)
    w = np.asarray(weights, dtype=float)
    M = len(x)
    if N < 1:
        raise ParameterError("N must be positive")
    if N > M:
        raise ParameterError(
            f"a discrete measure with {M} atoms supports at most {M} orthonormal "
            f"polynomials; {N} requested")
    if np.any(w <= 0):
        raise ParameterError("masses must be positive")
    steps = min(N + 1, M)
    Q = np.zeros((M, steps))
    b0 = math.sqrt(w.sum())
    Q[:, 0] = np.sqrt(w) / b0
    a, b = [], [b0]
    scale = max(np.max(np.abs(x)), np.ptp(x), np.finfo(float).tiny)
    for j in range(steps):
        q = Q[:, j]
        v = x * q
        aj = float(q @ v)
        a.append(aj)
        if j + 1 == steps or len(a) == N and j + 1 >= M:
            break
        v -= aj * q
        if j > 0:
            v -= b[j] * Q[:, j - 1]
        for _ in range(2):
            v -= Q[:, :j + 1] @ (Q[:, :j + 1].T @ v)
        bn = float(np.linalg.norm(v))
        if not bn > _BREAKDOWN * scale:
            if j + 1 < N:
                return RecurrenceTable(a, b, j + 1, f"breakdown: b_{j + 1} = {bn:.3e}")
            break
        b.append(bn)
        Q[:, j + 1] = v / bn
    a = a[:N]
    return RecurrenceTable(a, b[:N + 1])


def lanczos(atoms, N):
    """Recurrence coefficients of the discrete measure ``sum nu_j delta_{tau_j}``."""
    atoms = list(atoms)
    locs = [t.tau if isinstance(t, Atom) else t[0] for t in atoms]
    masses = [t.nu if isinstance(t, Atom) else t[1] for t in atoms]
    if len(set(locs)) != len(locs):
        raise ParameterError("atom locations must be pairwise distinct")
    return lanczos_arrays(locs, masses, N)

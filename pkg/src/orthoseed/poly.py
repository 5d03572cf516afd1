"""Recurrence evaluation, Jacobi matrices and Gauss rules."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import EigenConvergenceError, ParameterError

__all__ = [
    "JacobiMatrix",
    "QuadratureRule",
    "eval_orthonormal",
    "jacobi_matrix",
    "tridiag_eigen",
    "gauss_quadrature",
    "MAX_SWEEPS",
]

MAX_SWEEPS = 50


@dataclass(frozen=True)
class JacobiMatrix:
    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self):
        d = np.array(self.diagonal, dtype=float).ravel()
        e = np.array(self.off_diagonal, dtype=float).ravel()
        if len(d) < 1 or len(e) != len(d) - 1:
            raise ParameterError("Jacobi matrix of order n needs n diagonal and n-1 off-diagonal entries")
        if np.any(e <= 0):
            raise ParameterError("off-diagonal entries must be positive")
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "off_diagonal", e)

    @property
    def order(self):
        return len(self.diagonal)

    def dense(self):
        return np.diag(self.diagonal) + np.diag(self.off_diagonal, 1) + np.diag(self.off_diagonal, -1)


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self):
        return len(self.nodes)

    def integrate(self, f):
        return float(np.dot(self.weights, f(self.nodes)))


def eval_orthonormal(table, x, n_max):
    """Values ``p_0(x), ..., p_{n_max}(x)``.

    Returns an array of shape ``(n_max + 1,) + np.shape(x)``.
    """
    if n_max < 0:
        raise ParameterError("n_max must be nonnegative")
    if len(table.a) < n_max or len(table.b) < n_max + 1:
        raise ParameterError(
            f"table too short for n_max={n_max}: needs a_1..a_{n_max} and b_0..b_{n_max}")
    a, b = table.a, table.b
    x = np.asarray(x, dtype=float)
    p = np.empty((n_max + 1,) + x.shape)
    p[0] = 1.0 / b[0]
    if n_max >= 1:
        p[1] = (x - a[0]) * p[0] / b[1]
    for n in range(1, n_max):
        p[n + 1] = ((x - a[n]) * p[n] - b[n] * p[n - 1]) / b[n + 1]
    return p


def jacobi_matrix(table, n):
    if n < 1:
        raise ParameterError("Jacobi matrix order must be positive")
    if len(table.a) < n or len(table.b) < n:
        raise ParameterError(f"table too short for a Jacobi matrix of order {n}")
    return JacobiMatrix(table.a[:n], table.b[1:n])


@numba.njit(cache=True)
def _tql(d, e, z, maxit):
    # implicit QL with shifts; rotations applied to the row vector z only
    n = d.shape[0]
    eps = 2.220446049250313e-16
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > maxit:
                return l
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                bb = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * bb
                p = s * r
                d[i + 1] = g + p
                g = c * r - bb
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def tridiag_eigen(J):
    """Eigenvalues (ascending) and first eigenvector components of ``J``.

    First components are returned with nonnegative sign.
    """
    d = J.diagonal.copy()
    e = np.zeros(J.order)
    e[:-1] = J.off_diagonal
    z = np.zeros(J.order)
    z[0] = 1.0
    failed = _tql(d, e, z, MAX_SWEEPS)
    if failed >= 0:
        raise EigenConvergenceError(
            f"eigenvalue {failed} did not converge within {MAX_SWEEPS} sweeps")
    order = np.argsort(d, kind="stable")
    return d[order], np.abs(z[order])


def gauss_quadrature(table, K):
    """K-point Gauss rule of the measure that generated ``table``."""
    nodes, first = tridiag_eigen(jacobi_matrix(table, K))
    weights = table.b[0] ** 2 * first ** 2
    return QuadratureRule(nodes, weights)

"""Measures built from continuous weight pieces and point masses.

A :class:`Measure` is the common input of every algorithm in the package:

    dmu(x) = sum_j w_j(x) 1_{I_j}(x) dx + sum_j nu_j delta_{tau_j}

Each continuous piece declares the power-law exponents of its weight at
its finite endpoints; the quadrature code folds those exponents into
Gauss-Jacobi rules.

Recurrence coefficients are stored in a :class:`RecurrenceTable` with the
convention ``table.a[k] = a_{k+1}`` and ``table.b[k] = b_k``, i.e. the
orthonormal polynomials satisfy

    x p_n = b_n p_{n-1} + a_{n+1} p_n + b_{n+1} p_{n+1},  p_0 = 1 / b_0.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import ParameterError
from .special import log_gamma

__all__ = [
    "ParameterError",
    "ContinuousPiece",
    "Atom",
    "Measure",
    "RecurrenceTable",
    "ConstantWeight",
    "JacobiWeight",
    "FreudWeight",
    "LaguerreWeight",
    "PiecewiseSmoothWeight",
    "CATALOG_KINDS",
    "REFERENCE_KINDS",
    "make_catalog_measure",
    "reference_recurrence",
    "jacobi_recurrence",
    "hermite_recurrence",
    "laguerre_recurrence",
    "legendre_on_interval",
    "freud_moments",
    "measure_from_spec",
    "measure_to_spec",
    "load_measure",
    "log_gamma",
]


# ---------------------------------------------------------------------------
# weight families
# ---------------------------------------------------------------------------

def _distance(x, point, interval, dl, dr):
    # |x - point|, taken from the exact endpoint offsets when they apply
    if interval is not None:
        if dl is not None and point == interval[0]:
            return dl
        if dr is not None and point == interval[1]:
            return dr
    return np.abs(x - point)


class _Weight:
    """Built-in weights: a product of ``|x - s|^e`` factors and a smooth part.

    ``evaluate`` accepts the distances of ``x`` to the enclosing piece's
    endpoints; factors singular at those endpoints are then computed from the
    distances instead of from ``x`` itself, which avoids cancellation for
    nodes clustered at an endpoint.
    """

    kind = ""

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x, interval=None, dl=None, dr=None):
        x = np.asarray(x, dtype=float)
        val = self.factor * self._smooth(x)
        for point, expo in self._singular_factors():
            if expo != 0.0:
                val = val * np.power(_distance(x, point, interval, dl, dr), expo)
        return val

    def _smooth(self, x):
        return np.ones_like(x)

    def _singular_factors(self):
        return ()

    def to_spec(self):
        spec = {"kind": self.kind, "params": list(self.params)}
        if self.factor != 1.0:
            spec["factor"] = self.factor
        return spec


@dataclass(frozen=True)
class ConstantWeight(_Weight):
    factor: float = 1.0
    kind = "constant"

    @property
    def params(self):
        return ()


@dataclass(frozen=True)
class JacobiWeight(_Weight):
    """``factor * (1 - x)^alpha (1 + x)^beta``."""

    alpha: float = 0.0
    beta: float = 0.0
    factor: float = 1.0
    kind = "jacobi"

    @property
    def params(self):
        return (self.alpha, self.beta)

    def _singular_factors(self):
        return ((1.0, self.alpha), (-1.0, self.beta))


@dataclass(frozen=True)
class FreudWeight(_Weight):
    """``factor * |x|^rho exp(-|x|^alpha)``; ``alpha=2, rho=0`` is Hermite."""

    alpha: float = 2.0
    rho: float = 0.0
    factor: float = 1.0
    kind = "freud"

    @property
    def params(self):
        return (self.alpha, self.rho)

    def _smooth(self, x):
        return np.exp(-np.power(np.abs(x), self.alpha))

    def _singular_factors(self):
        return ((0.0, self.rho),)


@dataclass(frozen=True)
class LaguerreWeight(_Weight):
    """``factor * |x|^rho exp(-x)``."""

    rho: float = 0.0
    factor: float = 1.0
    kind = "laguerre"

    @property
    def params(self):
        return (self.rho,)

    def _smooth(self, x):
        return np.exp(-x)

    def _singular_factors(self):
        return ((0.0, self.rho),)


@dataclass(frozen=True)
class PiecewiseSmoothWeight(_Weight):
    """``factor * |x|^gamma |x^2 - xi^2|^p |1 - x^2|^q``.

    Meant to be supported on ``[-1, -xi]`` and ``[xi, 1]``.
    """

    gamma: float = 1.0
    p: float = -0.5
    q: float = -0.5
    xi: float = 0.1
    factor: float = 1.0
    kind = "pws"

    @property
    def params(self):
        return (self.gamma, self.p, self.q, self.xi)

    def _singular_factors(self):
        return (
            (0.0, self.gamma),
            (self.xi, self.p),
            (-self.xi, self.p),
            (1.0, self.q),
            (-1.0, self.q),
        )


_WEIGHT_KINDS = {
    "constant": (ConstantWeight, 0),
    "jacobi": (JacobiWeight, 2),
    "freud": (FreudWeight, 2),
    "hermite": (lambda factor=1.0: FreudWeight(2.0, 0.0, factor), 0),
    "laguerre": (LaguerreWeight, 1),
    "pws": (PiecewiseSmoothWeight, 4),
}


def _weight_from_spec(spec):
    try:
        kind = spec["kind"]
    except (KeyError, TypeError):
        raise ParameterError("weight entry needs a 'kind' field") from None
    if kind not in _WEIGHT_KINDS:
        raise ParameterError(
            f"unknown weight kind {kind!r}; expected one of {sorted(_WEIGHT_KINDS)}")
    ctor, nparams = _WEIGHT_KINDS[kind]
    params = [float(v) for v in spec.get("params", [])]
    if len(params) != nparams:
        raise ParameterError(f"weight kind {kind!r} takes {nparams} params, got {len(params)}")
    factor = float(spec.get("factor", 1.0))
    if not factor > 0:
        raise ParameterError("weight factor must be positive")
    return ctor(*params, factor=factor)


# ---------------------------------------------------------------------------
# measure data model
# ---------------------------------------------------------------------------

def _interior_samples(lo, hi, count=9):
    u = np.linspace(-1.0, 1.0, count + 2)[1:-1]
    if math.isfinite(lo) and math.isfinite(hi):
        return 0.5 * (hi - lo) * u + 0.5 * (hi + lo)
    if math.isfinite(lo):
        return lo + (1 + u) / (1 - u)
    if math.isfinite(hi):
        return hi - (1 + u) / (1 - u)
    return u / (1 - u * u)


@dataclass(frozen=True)
class ContinuousPiece:
    """One weight ``w`` on an interval ``(left, right)``.

    ``left_exponent`` (beta) and ``right_exponent`` (alpha) describe the
    power-law behaviour of ``w`` at finite endpoints; they are ignored at
    infinite endpoints. ``map_scale`` is the scale ``c`` of the rational map
    used to integrate over unbounded intervals.
    """

    interval: tuple
    weight: Callable
    left_exponent: float = 0.0
    right_exponent: float = 0.0
    map_scale: float = 1.0

    def __post_init__(self):
        lo, hi = (float(v) for v in self.interval)
        object.__setattr__(self, "interval", (lo, hi))
        if math.isnan(lo) or math.isnan(hi) or not lo < hi:
            raise ParameterError(f"piece interval must satisfy left < right, got {self.interval}")
        if math.isfinite(lo) and not self.left_exponent > -1:
            raise ParameterError(
                f"left endpoint exponent must be > -1, got {self.left_exponent}")
        if math.isfinite(hi) and not self.right_exponent > -1:
            raise ParameterError(
                f"right endpoint exponent must be > -1, got {self.right_exponent}")
        if not self.map_scale > 0:
            raise ParameterError("map_scale must be positive")
        with np.errstate(all="ignore"):
            vals = np.asarray(self.weight(_interior_samples(lo, hi)), dtype=float)
        if np.any(vals < 0) or np.any(np.isnan(vals)):
            raise ParameterError("weight must be nonnegative on the open interval")

    @property
    def bounded(self):
        return all(math.isfinite(v) for v in self.interval)

    def evaluate_weight(self, x, dl=None, dr=None):
        """Weight values, using endpoint offsets when the weight supports it."""
        if isinstance(self.weight, _Weight):
            return self.weight.evaluate(x, self.interval, dl, dr)
        return np.asarray(self.weight(x), dtype=float)


@dataclass(frozen=True)
class Atom:
    tau: float
    nu: float

    def __post_init__(self):
        if not math.isfinite(self.tau):
            raise ParameterError(f"atom location must be finite, got {self.tau}")
        if not self.nu > 0 or not math.isfinite(self.nu):
            raise ParameterError(f"atom mass must be positive, got {self.nu}")


@dataclass(frozen=True)
class Measure:
    pieces: tuple = ()
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if not self.pieces and not self.atoms:
            raise ParameterError("a measure needs at least one piece or atom")
        locs = [a.tau for a in self.atoms]
        if len(set(locs)) != len(locs):
            raise ParameterError("atom locations must be pairwise distinct")

    @property
    def is_discrete(self):
        return not self.pieces

    @cached_property
    def atom_locations(self):
        arr = np.array([a.tau for a in self.atoms], dtype=float)
        arr.flags.writeable = False
        return arr

    @cached_property
    def atom_masses(self):
        arr = np.array([a.nu for a in self.atoms], dtype=float)
        arr.flags.writeable = False
        return arr

    @property
    def support_hull(self):
        """Smallest closed interval containing the support."""
        ends = [v for p in self.pieces for v in p.interval] + list(self.atom_locations)
        return min(ends), max(ends)

    def check_supports(self, n):
        """Raise unless ``n`` orthonormal polynomials exist for this measure."""
        if self.is_discrete and n > len(self.atoms):
            raise ParameterError(
                f"a discrete measure with {len(self.atoms)} atoms supports at most "
                f"{len(self.atoms)} orthonormal polynomials; {n} requested")


@dataclass(frozen=True)
class RecurrenceTable:
    """Recurrence coefficients ``a_1..a_N`` and ``b_0..b_{N-1}`` (``b_N`` optional).

    ``failure_index`` marks the first coefficient index an algorithm could
    not produce; the stored arrays are then the valid prefix. ``converged``
    is cleared by iterative procedures that ran out of budget.
    """

    a: np.ndarray
    b: np.ndarray
    failure_index: int | None = None
    message: str = ""
    converged: bool = True
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        a = np.array(self.a, dtype=float).ravel()
        b = np.array(self.b, dtype=float).ravel()
        if len(b) not in (len(a), len(a) + 1):
            raise ParameterError(
                f"table needs len(b) == len(a) or len(a) + 1, got {len(a)} and {len(b)}")
        if not np.all(np.isfinite(a)) or not np.all(np.isfinite(b)):
            raise ParameterError("recurrence coefficients must be finite")
        if np.any(b <= 0):
            raise ParameterError("b coefficients must be positive")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __len__(self):
        return len(self.a)

    @property
    def flagged(self):
        return self.failure_index is not None or not self.converged

    def truncated(self, n):
        if n > len(self):
            raise ParameterError(f"table has {len(self)} coefficients, {n} requested")
        return RecurrenceTable(self.a[:n], self.b[:n], None, "", True)

    def with_status(self, failure_index=None, message="", converged=True, **info):
        return RecurrenceTable(self.a, self.b, failure_index, message, converged, info)


# ---------------------------------------------------------------------------
# closed-form recurrences
# ---------------------------------------------------------------------------

def jacobi_recurrence(N, alpha=0.0, beta=0.0):
    """Orthonormal recurrence for ``(1 - x)^alpha (1 + x)^beta`` on [-1, 1]."""
    if not (alpha > -1 and beta > -1):
        raise ParameterError(f"Jacobi exponents must be > -1, got ({alpha}, {beta})")
    s = alpha + beta
    logm0 = (s + 1) * math.log(2.0) + log_gamma(alpha + 1) + log_gamma(beta + 1) \
        - log_gamma(s + 2)
    if N == 0:
        return RecurrenceTable([], [math.exp(0.5 * logm0)])
    a = np.empty(N)
    b = np.empty(N)
    b[0] = math.exp(0.5 * logm0)
    a[0] = (beta - alpha) / (s + 2)
    n = np.arange(1, N, dtype=float)
    a[1:] = (beta * beta - alpha * alpha) / ((2 * n + s) * (2 * n + s + 2))
    if N > 1:
        b[1] = math.sqrt(4 * (alpha + 1) * (beta + 1) / ((s + 2) ** 2 * (s + 3)))
    n = np.arange(2, N, dtype=float)
    b[2:] = np.sqrt(4 * n * (n + alpha) * (n + beta) * (n + s)
                    / ((2 * n + s) ** 2 * (2 * n + s + 1) * (2 * n + s - 1)))
    return RecurrenceTable(a, b)


def hermite_recurrence(N):
    """Orthonormal recurrence for ``exp(-x^2)`` on the real line."""
    b = np.sqrt(np.arange(N) / 2.0)
    if N:
        b[0] = math.pi ** 0.25
    return RecurrenceTable(np.zeros(N), b if N else [math.pi ** 0.25])


def laguerre_recurrence(N, rho=0.0):
    """Orthonormal recurrence for ``x^rho exp(-x)`` on [0, inf)."""
    if not rho > -1:
        raise ParameterError(f"Laguerre exponent must be > -1, got {rho}")
    n = np.arange(N, dtype=float)
    b = np.sqrt(n * (n + rho))
    b0 = math.exp(0.5 * log_gamma(rho + 1))
    if N:
        b[0] = b0
    return RecurrenceTable(2 * n + 1 + rho, b if N else [b0])


def legendre_on_interval(N, lo, hi):
    """Orthonormal recurrence for ``dx`` on the finite interval [lo, hi]."""
    h = 0.5 * (hi - lo)
    base = jacobi_recurrence(N, 0.0, 0.0)
    b = base.b * h
    if N:
        b[0] = math.sqrt(hi - lo)
    return RecurrenceTable(base.a + 0.5 * (hi + lo), b)


def _pws_reference(N, xi):
    eta = (1 - xi) / (1 + xi)
    b = np.empty(N)
    if N > 0:
        b[0] = math.sqrt(math.pi)
    if N > 1:
        b[1] = math.sqrt((1 + xi * xi) / 2)
    for k in range(2, N):
        m = k // 2
        if k % 2 == 0:
            b[k] = math.sqrt((1 - xi) ** 2 * (1 + eta ** (2 * m - 2)) / (4 * (1 + eta ** (2 * m))))
        else:
            b[k] = math.sqrt((1 + xi) ** 2 * (1 + eta ** (2 * m + 2)) / (4 * (1 + eta ** (2 * m))))
    return RecurrenceTable(np.zeros(N), b if N else [math.sqrt(math.pi)])


def _discrete_chebyshev_reference(N, M):
    if N > M:
        raise ParameterError(f"discrete Chebyshev with M={M} has only {M} coefficients")
    n = np.arange(N, dtype=float)
    r = n / M
    with np.errstate(divide="ignore"):
        b = np.sqrt((1 - r * r) / (4 * (4 - 1 / (n * n))))
    if N:
        b[0] = 1.0
    return RecurrenceTable(np.full(N, (M - 1) / (2 * M)), b if N else [1.0])


REFERENCE_KINDS = ("jacobi", "legendre", "hermite", "laguerre", "pws", "discrete_chebyshev")


def reference_recurrence(kind, params=(), N=1):
    """Exact recurrence coefficients for the catalog cases that have them.

    ``pws`` is supported for ``gamma=1, p=q=-1/2`` only; ``params`` are
    ``(gamma, p, q, xi)`` as for :func:`make_catalog_measure`.
    """
    params = tuple(float(v) for v in params)
    if N < 0:
        raise ParameterError("N must be nonnegative")
    if kind == "jacobi":
        _expect(kind, params, 2)
        return jacobi_recurrence(N, *params)
    if kind == "legendre":
        _expect(kind, params, 0)
        return jacobi_recurrence(N, 0.0, 0.0)
    if kind == "hermite":
        _expect(kind, params, 0)
        return hermite_recurrence(N)
    if kind == "laguerre":
        _expect(kind, params, 1)
        return laguerre_recurrence(N, *params)
    if kind == "pws":
        _expect(kind, params, 4)
        gamma, p, q, xi = params
        if (gamma, p, q) != (1.0, -0.5, -0.5):
            raise ParameterError("closed form known only for pws with gamma=1, p=q=-1/2")
        _check_pws(gamma, p, q, xi)
        return _pws_reference(N, xi)
    if kind == "discrete_chebyshev":
        _expect(kind, params, 1)
        return _discrete_chebyshev_reference(N, _as_count(params[0]))
    raise ParameterError(f"no closed-form recurrence for kind {kind!r}")


def freud_moments(alpha, rho, count):
    """Monomial moments ``m_0..m_{count-1}`` of ``|x|^rho exp(-|x|^alpha)``."""
    m = np.zeros(count)
    for k in range(0, count, 2):
        m[k] = 2.0 / alpha * math.exp(log_gamma((k + rho + 1) / alpha))
    return m


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

CATALOG_KINDS = (
    "jacobi",
    "hermite",
    "half_hermite",
    "laguerre",
    "freud",
    "pws",
    "discrete_chebyshev",
    "jacobi_plus_mass",
    "half_hermite_plus_discrete_chebyshev",
)

# Map scales for the unbounded pieces of catalog measures, chosen so that
# degree ~200 integrands converge well below the default max order.
_HERMITE_SCALE = 4.0
_HALF_HERMITE_SCALE = 8.0
_LAGUERRE_SCALE = 16.0


def _expect(kind, params, count):
    if len(params) != count:
        raise ParameterError(f"{kind!r} takes {count} parameters, got {len(params)}")


def _as_count(v):
    if v != int(v) or v < 1:
        raise ParameterError(f"M must be a positive integer, got {v}")
    return int(v)


def _check_pws(gamma, p, q, xi):
    if not 0 < xi < 1:
        raise ParameterError(f"pws requires 0 < xi < 1, got {xi}")
    if not p > -1:
        raise ParameterError(f"pws requires p > -1, got {p}")
    if not q > -1:
        raise ParameterError(f"pws requires q > -1, got {q}")


def _discrete_chebyshev_atoms(M, sign=1.0):
    return tuple(Atom(sign * (j / M) if j else 0.0, 1.0 / M) for j in range(M))


def _freud_measure(alpha, rho):
    if not alpha > 0:
        raise ParameterError(f"freud requires alpha > 0, got {alpha}")
    if not rho > -1:
        raise ParameterError(f"freud requires rho > -1, got {rho}")
    w = FreudWeight(alpha, rho)
    scale = max(1.0, _HERMITE_SCALE * 2.0 / alpha) if alpha <= 2 else 3.0
    if rho == 0:
        return Measure([ContinuousPiece((-math.inf, math.inf), w, map_scale=scale)])
    # |x|^rho is singular at 0: split there so both halves see it as an endpoint
    return Measure([
        ContinuousPiece((-math.inf, 0.0), w, right_exponent=rho, map_scale=scale),
        ContinuousPiece((0.0, math.inf), w, left_exponent=rho, map_scale=scale),
    ])


def _normalized_jacobi_piece(alpha, beta):
    from .quad import piece_integral

    raw = ContinuousPiece((-1.0, 1.0), JacobiWeight(alpha, beta), beta, alpha)
    mass = piece_integral(raw, lambda x: np.ones_like(x), 1)
    return ContinuousPiece((-1.0, 1.0), JacobiWeight(alpha, beta, 1.0 / mass), beta, alpha)


def make_catalog_measure(kind, params=()):
    """Build one of the named test measures.

    Kinds and parameters:

    ``jacobi (alpha, beta)``
        ``(1-x)^alpha (1+x)^beta`` on [-1, 1].
    ``hermite ()``, ``half_hermite ()``
        ``exp(-x^2)`` on the real line / on [0, inf).
    ``laguerre (rho)``
        ``x^rho exp(-x)`` on [0, inf).
    ``freud (alpha, rho)``
        ``|x|^rho exp(-|x|^alpha)`` on the real line (split at 0 if rho != 0).
    ``pws (gamma, p, q, xi)``
        ``|x|^gamma (x^2-xi^2)^p (1-x^2)^q`` on [-1, -xi] and [xi, 1].
    ``discrete_chebyshev (M)``
        masses 1/M at j/M, j = 0..M-1.
    ``jacobi_plus_mass (alpha, beta, tau_1, nu_1, ...)``
        normalized Jacobi weight plus point masses.
    ``half_hermite_plus_discrete_chebyshev (M)``
        ``exp(-x^2)`` on [0, inf) plus masses 1/M at -j/M, j = 0..M-1.
    """
    params = tuple(float(v) for v in params)
    if kind == "jacobi":
        _expect(kind, params, 2)
        alpha, beta = params
        if not (alpha > -1 and beta > -1):
            raise ParameterError(f"Jacobi exponents must be > -1, got ({alpha}, {beta})")
        return Measure([ContinuousPiece((-1.0, 1.0), JacobiWeight(alpha, beta), beta, alpha)])
    if kind == "hermite":
        _expect(kind, params, 0)
        return Measure([ContinuousPiece((-math.inf, math.inf), FreudWeight(2.0, 0.0),
                                        map_scale=_HERMITE_SCALE)])
    if kind == "half_hermite":
        _expect(kind, params, 0)
        return Measure([ContinuousPiece((0.0, math.inf), FreudWeight(2.0, 0.0),
                                        map_scale=_HALF_HERMITE_SCALE)])
    if kind == "laguerre":
        _expect(kind, params, 1)
        (rho,) = params
        if not rho > -1:
            raise ParameterError(f"Laguerre exponent must be > -1, got {rho}")
        return Measure([ContinuousPiece((0.0, math.inf), LaguerreWeight(rho), rho,
                                        map_scale=_LAGUERRE_SCALE)])
    if kind == "freud":
        _expect(kind, params, 2)
        return _freud_measure(*params)
    if kind == "pws":
        _expect(kind, params, 4)
        gamma, p, q, xi = params
        _check_pws(gamma, p, q, xi)
        w = PiecewiseSmoothWeight(gamma, p, q, xi)
        return Measure([
            ContinuousPiece((-1.0, -xi), w, left_exponent=q, right_exponent=p),
            ContinuousPiece((xi, 1.0), w, left_exponent=p, right_exponent=q),
        ])
    if kind == "discrete_chebyshev":
        _expect(kind, params, 1)
        return Measure(atoms=_discrete_chebyshev_atoms(_as_count(params[0])))
    if kind == "jacobi_plus_mass":
        if len(params) < 2 or len(params) % 2:
            raise ParameterError("jacobi_plus_mass takes (alpha, beta, tau_1, nu_1, ...)")
        alpha, beta = params[:2]
        if not (alpha > -1 and beta > -1):
            raise ParameterError(f"Jacobi exponents must be > -1, got ({alpha}, {beta})")
        atoms = [Atom(params[k], params[k + 1]) for k in range(2, len(params), 2)]
        return Measure([_normalized_jacobi_piece(alpha, beta)], atoms)
    if kind == "half_hermite_plus_discrete_chebyshev":
        _expect(kind, params, 1)
        M = _as_count(params[0])
        piece = ContinuousPiece((0.0, math.inf), FreudWeight(2.0, 0.0),
                                map_scale=_HALF_HERMITE_SCALE)
        return Measure([piece], _discrete_chebyshev_atoms(M, sign=-1.0))
    raise ParameterError(f"unknown catalog kind {kind!r}; expected one of {CATALOG_KINDS}")


# ---------------------------------------------------------------------------
# JSON measure specs
# ---------------------------------------------------------------------------

def _parse_endpoint(v):
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return math.inf
        if s in ("-inf", "-infinity"):
            return -math.inf
        raise ParameterError(f"bad interval endpoint {v!r}")
    return float(v)


def _format_endpoint(v):
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def measure_from_spec(spec):
    """Build a :class:`Measure` from the JSON-decoded spec object.

    ``{"pieces": [{"interval": [l, r], "weight": {"kind": k, "params": [...]},
    "alpha": a, "beta": b}], "atoms": [{"tau": t, "nu": n}]}``; ``alpha`` is the
    exponent at the right endpoint and ``beta`` at the left one. Optional
    extras: ``"factor"`` in a weight, ``"map_scale"`` in a piece.
    """
    if not isinstance(spec, dict):
        raise ParameterError("measure spec must be a JSON object")
    pieces = []
    for entry in spec.get("pieces", []):
        try:
            lo, hi = (_parse_endpoint(v) for v in entry["interval"])
            weight = _weight_from_spec(entry["weight"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParameterError):
                raise
            raise ParameterError(f"malformed piece entry {entry!r}: {exc}") from None
        pieces.append(ContinuousPiece(
            (lo, hi), weight,
            left_exponent=float(entry.get("beta", 0.0)),
            right_exponent=float(entry.get("alpha", 0.0)),
            map_scale=float(entry.get("map_scale", 1.0)),
        ))
    atoms = []
    for entry in spec.get("atoms", []):
        try:
            atoms.append(Atom(float(entry["tau"]), float(entry["nu"])))
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed atom entry {entry!r}: {exc}") from None
    return Measure(pieces, atoms)


def measure_to_spec(measure):
    pieces = []
    for p in measure.pieces:
        if not isinstance(p.weight, _Weight):
            raise ParameterError("only built-in weight families can be serialized")
        entry = {
            "interval": [_format_endpoint(v) for v in p.interval],
            "weight": p.weight.to_spec(),
            "alpha": p.right_exponent,
            "beta": p.left_exponent,
        }
        if p.map_scale != 1.0:
            entry["map_scale"] = p.map_scale
        pieces.append(entry)
    atoms = [{"tau": a.tau, "nu": a.nu} for a in measure.atoms]
    return {"pieces": pieces, "atoms": atoms}


def load_measure(path):
    with open(path) as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"{path}: not valid JSON ({exc})") from None
    return measure_from_spec(spec)

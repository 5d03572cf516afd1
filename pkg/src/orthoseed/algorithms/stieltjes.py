"""Stieltjes procedure and the predictor-corrector variant."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError, QuadratureError
from ..measure import RecurrenceTable
from ..quad import AdaptiveConfig, measure_moments
from ._integrator import RecurrenceIntegrator

__all__ = ["stieltjes", "predictor_corrector", "PredictorCorrector", "CorrectionPair"]


@dataclass(frozen=True)
class CorrectionPair:
    """Corrections turning a predicted ``(a~, b~)`` into ``(a~ + da, b~ * db)``."""

    da: float
    db: float

    def __post_init__(self):
        if not self.db > 0:
            raise ParameterError("db must be positive")

    def apply(self, a_pred, b_pred):
        return a_pred + self.da, b_pred * self.db


def _mass_and_first(measure, cfg):
    m = measure_moments(measure, lambda x: np.stack([np.ones_like(x), x]), cfg)
    return float(m[0]), float(m[1])


def _support_size(measure):
    # a discrete measure with M atoms has b_M = 0; it is never computed
    return len(measure.atoms) if measure.is_discrete else -1


def _finish(a, b, N, failure=None, message=""):
    # keep complete pairs a_1..a_k, b_0..b_{k-1} (plus b_k when known)
    k = min(len(a), N)
    if k == N:
        failure, message = None, ""
    return RecurrenceTable(a[:k], b[:k + 1], failure, message)


def stieltjes(measure, N, cfg=None):
    """Stieltjes procedure: ``a_{n+1} = int x p_n^2``, ``b_{n+1} = ||(x - a_{n+1}) p_n - b_n p_{n-1}||``.

    Returns ``N`` coefficients (and ``b_N`` when it is positive). Stops early
    with ``failure_index`` set when ``b_n^2`` is not positive or quadrature
    fails.
    """
    measure.check_supports(N)
    cfg = cfg or AdaptiveConfig()
    m0, _ = _mass_and_first(measure, cfg)
    eng = RecurrenceIntegrator(measure, math.sqrt(m0), cfg)
    a = []
    try:
        while eng.level < N:
            n = eng.level
            a_next = float(eng.integrate(lambda x, pm, pc: x * pc * pc))
            a.append(a_next)
            if n + 1 == _support_size(measure):
                break
            bn = eng.b[n]
            bsq = float(eng.integrate(lambda x, pm, pc: ((x - a_next) * pc - bn * pm) ** 2))
            if not bsq > 0 or not math.isfinite(bsq):
                return _finish(a, eng.b, N, n + 1, f"b_{n + 1}^2 = {bsq:.3e} is not positive")
            eng.advance(a_next, math.sqrt(bsq))
    except QuadratureError as exc:
        return _finish(a, eng.b, N, eng.level + 1, str(exc))
    return _finish(a, eng.b, N)


class PredictorCorrector:
    """Predictor-corrector coefficient generator that can be extended in place.

    Step ``n``: predict ``a~_{n+1} = a_n``, ``b~_{n+1} = b_n`` (for ``n = 0``
    the exact ``m_1 / m_0`` and ``b_0``), then correct with
    ``G_{n,n+1} = int p_n p~_{n+1}`` and ``G_{n+1,n+1} = int p^_{n+1}^2``.
    """

    def __init__(self, measure, cfg=None):
        self.measure = measure
        self.cfg = cfg or AdaptiveConfig()
        m0, m1 = _mass_and_first(measure, self.cfg)
        self._seed = m1 / m0
        self._eng = RecurrenceIntegrator(measure, math.sqrt(m0), self.cfg)
        self._a = []
        self.failure_index = None
        self.message = ""
        self.corrections = []
        self._exhausted = False

    def _step(self):
        eng = self._eng
        n = eng.level
        bn = eng.b[n]
        a_pred = self._seed if n == 0 else eng.a[n - 1]
        b_pred = bn

        def ptilde(x, pm, pc):
            return ((x - a_pred) * pc - bn * pm) / b_pred

        g01 = float(eng.integrate(lambda x, pm, pc: pc * ptilde(x, pm, pc)))
        da = g01 * b_pred
        a_next = a_pred + da
        self._a.append(a_next)
        if n + 1 == _support_size(self.measure):
            self._exhausted = True
            return None, ""
        g11 = float(eng.integrate(lambda x, pm, pc: (ptilde(x, pm, pc) - g01 * pc) ** 2))
        if not g11 > 0 or not math.isfinite(g11):
            return n + 1, f"G_{n + 1},{n + 1} = {g11:.3e} is not positive"
        pair = CorrectionPair(da, math.sqrt(g11))
        self.corrections.append(pair)
        eng.advance(*pair.apply(a_pred, b_pred))
        return None, ""

    def extend(self, N):
        """Run until ``N`` coefficients (and ``b_N``) are known; return the table."""
        self.measure.check_supports(N)
        try:
            while self.failure_index is None and not self._exhausted and self._eng.level < N:
                fail, msg = self._step()
                if fail is not None:
                    self.failure_index, self.message = fail, msg
        except QuadratureError as exc:
            self.failure_index, self.message = self._eng.level + 1, str(exc)
        return self.table(N)

    def table(self, N):
        return _finish(self._a, self._eng.b, N, self.failure_index, self.message)


def predictor_corrector(measure, N, cfg=None):
    """``N`` recurrence coefficients by the predictor-corrector scheme."""
    measure.check_supports(N)
    return PredictorCorrector(measure, cfg).extend(N)

"""Discretize each continuous piece with its own Gauss rule, then run Lanczos."""
from __future__ import annotations

import numpy as np

from ..errors import ParameterError
from ..measure import Measure, RecurrenceTable
from ..poly import gauss_quadrature
from ..quad import AdaptiveConfig, total_mass
from .lanczos import lanczos, lanczos_arrays
from .stieltjes import PredictorCorrector, predictor_corrector

__all__ = ["pcl", "pcl_schedule"]


def pcl_schedule(N, max_factor=10):
    """Discretization orders ``N_0 = N, N_1 = N + 1, N_s = N_{s-1} + 2^floor(s/5) N``.

    The last order is clipped to ``max_factor * N``.
    """
    cap = max_factor * N
    orders = [N, N + 1] if N + 1 <= cap else [N]
    s = 2
    while orders[-1] < cap:
        orders.append(min(orders[-1] + 2 ** (s // 5) * N, cap))
        s += 1
    return orders


def pcl(measure, N, eps=1e-12, cfg=None, adaptive=True, max_factor=10):
    """Predictor-corrector + Lanczos.

    Stage ``s`` replaces every continuous piece by the ``N_s``-point Gauss
    rule built from its own predictor-corrector coefficients, merges these
    with the atoms and runs Lanczos for ``N`` coefficients. Stages stop once
    ``|b_n^[s] - b_n^[s-1]| <= eps |b_n^[s]|`` for all ``n < N``. With
    ``adaptive=False`` a single stage with ``N_s = N`` is used.

    A purely discrete measure goes straight to Lanczos, a single continuous
    piece without atoms to the predictor-corrector scheme.
    """
    if N < 1:
        raise ParameterError("N must be positive")
    measure.check_supports(N)
    cfg = cfg or AdaptiveConfig()
    if measure.is_discrete:
        return lanczos(measure.atoms, N)
    if len(measure.pieces) == 1 and not measure.atoms:
        return predictor_corrector(measure, N, cfg)

    runners = [PredictorCorrector(Measure([p]), cfg) for p in measure.pieces]
    schedule = pcl_schedule(N, max_factor) if adaptive else [N]
    prev = None
    gap = float("nan")
    for stage, Ns in enumerate(schedule):
        nodes = [measure.atom_locations]
        weights = [measure.atom_masses]
        for j, runner in enumerate(runners):
            t = runner.extend(Ns + 1)
            if len(t) < Ns:
                msg = f"piece {j}: {t.message}"
                if prev is None:
                    return RecurrenceTable([], [np.sqrt(total_mass(measure, cfg))], 1, msg)
                return prev.with_status(None, f"stage {stage} failed; {msg}", False,
                                        stages=schedule[:stage], gap=gap)
            rule = gauss_quadrature(t, Ns)
            nodes.append(rule.nodes)
            weights.append(rule.weights)
        table = lanczos_arrays(np.concatenate(nodes), np.concatenate(weights), N)
        if table.flagged:
            return table
        if not adaptive:
            return table.with_status(None, "", True, stages=[Ns])
        if prev is not None:
            gap = float(np.max(np.abs(table.b[:N] - prev.b[:N]) / np.abs(table.b[:N])))
            if gap <= eps:
                return table.with_status(None, "", True, stages=schedule[:stage + 1], gap=gap)
        prev = table
    return prev.with_status(
        None, f"no convergence by N_s = {schedule[-1]}; max relative b gap {gap:.3e}", False,
        stages=schedule, gap=gap)

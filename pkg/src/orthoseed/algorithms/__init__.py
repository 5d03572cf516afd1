"""Recurrence-coefficient algorithms behind one interface.

=====  ==========================================================
id     method
=====  ==========================================================
dp     discrete Painleve recursions (Freud weights, alpha = 4, 6)
hd     Hankel determinants of monomial moments
apc    monic expansion coefficients from a moment system (aPC)
mc     modified Chebyshev algorithm with an auxiliary family
sp     Stieltjes procedure
lz     Lanczos with double full reorthogonalization (discrete only)
pc     predictor-corrector
pcl    per-piece predictor-corrector rules merged, then Lanczos
=====  ==========================================================
"""
from __future__ import annotations

import math

from ..errors import ParameterError
from ..measure import FreudWeight
from .lanczos import lanczos, lanczos_arrays
from .moments import (
    MixedMomentRow,
    apc_coeffs,
    apc_from_measure,
    default_auxiliary,
    hankel_coeffs,
    hankel_from_measure,
    mc_from_measure,
    modified_chebyshev,
)
from .painleve import dp_freud, dp_freud_squares
from .pcl import pcl, pcl_schedule
from .stieltjes import CorrectionPair, PredictorCorrector, predictor_corrector, stieltjes

__all__ = [
    "ALGORITHMS",
    "compute",
    "freud_parameters",
    "dp_freud",
    "dp_freud_squares",
    "hankel_coeffs",
    "apc_coeffs",
    "modified_chebyshev",
    "MixedMomentRow",
    "default_auxiliary",
    "stieltjes",
    "lanczos",
    "lanczos_arrays",
    "predictor_corrector",
    "PredictorCorrector",
    "CorrectionPair",
    "pcl",
    "pcl_schedule",
]

ALGORITHMS = ("dp", "hd", "apc", "mc", "sp", "lz", "pc", "pcl")


def freud_parameters(measure):
    """``(alpha, rho)`` if ``measure`` is an unscaled Freud weight on the real line."""
    pieces = measure.pieces
    if measure.atoms or not pieces:
        return None
    weights = {p.weight for p in pieces}
    if len(weights) != 1:
        return None
    (w,) = weights
    if not isinstance(w, FreudWeight) or w.factor != 1.0:
        return None
    spans = sorted(p.interval for p in pieces)
    if spans not in ([(-math.inf, math.inf)], [(-math.inf, 0.0), (0.0, math.inf)]):
        return None
    return w.alpha, w.rho


def compute(algo, measure, N, cfg=None, **options):
    """Run algorithm ``algo`` for ``N`` coefficients of ``measure``.

    Options: ``aux`` (mc), ``eps``, ``adaptive`` and ``max_factor`` (pcl).
    """
    if algo not in ALGORITHMS:
        raise ParameterError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    if int(N) != N or N < 1:
        raise ParameterError(f"N must be a positive integer, got {N}")
    N = int(N)
    measure.check_supports(N)
    if algo == "dp":
        params = freud_parameters(measure)
        if params is None or params[0] not in (4, 6):
            raise ParameterError("dp needs a Freud weight |x|^rho exp(-|x|^alpha) with alpha 4 or 6")
        return dp_freud(params[0], params[1], N)
    if algo == "hd":
        return hankel_from_measure(measure, N, cfg)
    if algo == "apc":
        return apc_from_measure(measure, N, cfg)
    if algo == "mc":
        return mc_from_measure(measure, N, cfg, options.get("aux"))
    if algo == "sp":
        return stieltjes(measure, N, cfg)
    if algo == "lz":
        if not measure.is_discrete:
            raise ParameterError("lz needs a purely discrete measure; use pcl for mixed measures")
        return lanczos(measure.atoms, N)
    if algo == "pc":
        return predictor_corrector(measure, N, cfg)
    return pcl(measure, N, options.get("eps", 1e-12), cfg,
               options.get("adaptive", True), options.get("max_factor", 10))

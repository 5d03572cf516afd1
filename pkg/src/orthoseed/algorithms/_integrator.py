"""Incremental evaluation of orthonormal polynomials at quadrature nodes."""
from __future__ import annotations

import numpy as np

from ..quad import AdaptiveConfig, adaptive_piece_integrals


class _NodeState:
    __slots__ = ("x", "prev", "cur", "level")

    def __init__(self, x, b0):
        self.x = x
        self.prev = np.zeros_like(x)
        self.cur = np.full_like(x, 1.0 / b0)
        self.level = 0


class RecurrenceIntegrator:
    """Integrates ``g(x, p_{n-1}(x), p_n(x))`` against a measure.

    Polynomial values are kept per node set and advanced one degree at a
    time as coefficients are appended, so each new moment costs O(K) per
    node set instead of O(nK).
    """

    def __init__(self, measure, b0, cfg=None):
        self.measure = measure
        self.cfg = cfg or AdaptiveConfig()
        self.a = []
        self.b = [float(b0)]
        self._states = [dict() for _ in measure.pieces]
        self._hints = [None] * len(measure.pieces)
        self._atoms = _NodeState(measure.atom_locations, b0) if measure.atoms else None

    @property
    def level(self):
        return len(self.b) - 1

    def advance(self, a_next, b_next):
        self.a.append(float(a_next))
        self.b.append(float(b_next))

    def _sync(self, st):
        a, b = self.a, self.b
        x = st.x
        while st.level < self.level:
            n = st.level
            nxt = ((x - a[n]) * st.cur - b[n] * st.prev) / b[n + 1]
            st.prev, st.cur = st.cur, nxt
            st.level = n + 1
        return st

    def _state_for(self, j, x):
        states = self._states[j]
        st = states.get(id(x))
        if st is None or st.x is not x:
            st = _NodeState(x, self.b[0])
            states[id(x)] = st
        return self._sync(st)

    def integrate(self, g):
        """Sum of adaptive piece integrals and the exact atom sum of ``g``."""
        total = 0.0
        for j, piece in enumerate(self.measure.pieces):
            def f(x, j=j):
                st = self._state_for(j, x)
                return g(x, st.prev, st.cur)
            val, K = adaptive_piece_integrals(piece, f, self.cfg, self._hints[j])
            self._hints[j] = K
            total = total + val
        if self._atoms is not None:
            st = self._sync(self._atoms)
            total = total + g(st.x, st.prev, st.cur) @ self.measure.atom_masses
        return total

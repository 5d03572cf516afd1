import mpmath
import numpy as np
import pytest

from orthoseed.measure import jacobi_recurrence
from orthoseed.reference import gauss_jacobi_mp, jacobi_plus_mass_reference, jacobi_recurrence_mp, stieltjes_mp


def test_mp_jacobi_matches_double():
    a, b = jacobi_recurrence_mp(20, 0.3, -0.4, normalized=False)
    ref = jacobi_recurrence(20, 0.3, -0.4)
    assert np.allclose([float(v) for v in a], ref.a, atol=1e-16)
    assert np.allclose([float(v) for v in b[:20]], ref.b, rtol=1e-15)


def test_mp_rule_is_exact():
    with mpmath.workdps(40):
        x, w = gauss_jacobi_mp(8, -0.6, 0.4)
        # normalized weight: mass 1, first moment (beta - alpha) / (alpha + beta + 2)
        assert abs(mpmath.fsum(w) - 1) < mpmath.mpf(10) ** -35
        m1 = mpmath.fsum(wi * xi for wi, xi in zip(w, x))
        al, be = mpmath.mpf(-0.6), mpmath.mpf(0.4)   # the double-rounded exponents
        assert abs(m1 - (be - al) / (al + be + 2)) < mpmath.mpf(10) ** -35


def test_reference_without_atoms_is_jacobi():
    t = jacobi_plus_mass_reference(-0.6, 0.4, [], 12)
    ref = jacobi_recurrence(12, -0.6, 0.4)
    assert np.allclose(t.a, ref.a, atol=1e-16)
    assert np.allclose(t.b[1:12], ref.b[1:12], rtol=1e-15)
    assert t.b[0] == 1.0


def test_reference_precision_independent():
    lo = jacobi_plus_mass_reference(-0.6, 0.4, [(2.0, 1.0)], 41, dps=50)
    hi = jacobi_plus_mass_reference(-0.6, 0.4, [(2.0, 1.0)], 41, dps=80)
    assert np.array_equal(lo.a, hi.a) and np.array_equal(lo.b, hi.b)


def test_stieltjes_mp_two_points():
    with mpmath.workdps(30):
        a, b = stieltjes_mp([mpmath.mpf(-1), mpmath.mpf(1)], [mpmath.mpf(0.5)] * 2, 1)
    assert float(a[0]) == 0.0 and float(b[1]) == pytest.approx(1.0)

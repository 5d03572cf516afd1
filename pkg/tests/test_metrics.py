import math

import mpmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_discrete
from orthoseed.algorithms import compute, lanczos
from orthoseed.errors import ParameterError
from orthoseed.experiments import ridge_measure
from orthoseed.measure import Measure, RecurrenceTable, make_catalog_measure, reference_recurrence
from orthoseed.metrics import ErrorRecord, coeff_error, fixed_n_error, gram_error, gram_matrix, time_call
from orthoseed.reference import jacobi_plus_mass_reference, stieltjes_mp

PWS = make_catalog_measure("pws", (1, -0.5, -0.5, 0.1))
PWS_REF = reference_recurrence("pws", (1, -0.5, -0.5, 0.1), 100)


def test_error_record():
    assert ErrorRecord("sp", 10, "e_N", None).failed
    with pytest.raises(ParameterError):
        ErrorRecord("sp", 10, "g_N", 1.0)
    with pytest.raises(ParameterError):
        ErrorRecord("sp", 10, "e_N", -1.0)
    with pytest.raises(ParameterError):
        ErrorRecord("sp", 10, "e_N", math.inf)


def test_coeff_error_examples():
    assert coeff_error(PWS_REF, PWS_REF, 50) == 0.0
    b = PWS_REF.b.copy()
    b[7] += 3e-5
    pert = RecurrenceTable(PWS_REF.a, b)
    assert coeff_error(pert, PWS_REF, 50) == pytest.approx(3e-5, rel=1e-9)
    # a_N itself is outside the e_N window
    a = PWS_REF.a.copy()
    a[49] += 1.0
    assert coeff_error(RecurrenceTable(a, PWS_REF.b), PWS_REF, 50) == 0.0
    with pytest.raises(ParameterError):
        coeff_error(PWS_REF.truncated(10), PWS_REF, 20)


def test_coeff_error_pc_pws_20():
    assert coeff_error(compute("pc", PWS, 20), PWS_REF, 20) < 1e-13


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_coeff_error_triangle(seed):
    rng = np.random.default_rng(seed)
    base = reference_recurrence("jacobi", (0, 0), 30)
    tabs = [RecurrenceTable(base.a + rng.normal(0, 1e-3, 30), base.b * (1 + rng.uniform(0, 1e-3, 30)))
            for _ in range(3)]
    d = lambda s, t: coeff_error(s, t, 30)
    assert d(tabs[0], tabs[2]) <= d(tabs[0], tabs[1]) + d(tabs[1], tabs[2]) + 1e-15


def test_fixed_n_error():
    assert fixed_n_error(PWS_REF, PWS_REF, 40) == 0.0
    a = PWS_REF.a.copy()
    b = PWS_REF.b.copy()
    a[39] += 3e-6
    b[40] += 4e-6
    assert fixed_n_error(RecurrenceTable(a, b), PWS_REF, 40) == pytest.approx(5e-6, rel=1e-9)
    with pytest.raises(ParameterError):
        fixed_n_error(PWS_REF.truncated(10), PWS_REF, 10)


def test_fixed_n_multi_component_values():
    m = make_catalog_measure("jacobi_plus_mass", (-0.6, 0.4, 2, 1))
    ref = jacobi_plus_mass_reference(-0.6, 0.4, [(2, 1)], 41)
    sp = compute("sp", m, 41)
    assert 1e-7 <= fixed_n_error(sp, ref, 40) <= 1e-5


def test_gram_exact_coefficients():
    leg = make_catalog_measure("jacobi", (0, 0))
    assert gram_error(reference_recurrence("jacobi", (0, 0), 60), leg, 60) < 1e-12
    assert gram_error(PWS_REF, PWS, 60) < 1e-12
    A = gram_matrix(PWS_REF, PWS, 5)
    assert A.shape == (5, 5) and np.allclose(A, np.eye(5), atol=1e-13)


def test_gram_detects_wrong_coefficients():
    leg = make_catalog_measure("jacobi", (0, 0))
    ref = reference_recurrence("jacobi", (0, 0), 20)
    b = ref.b.copy()
    b[5] *= 1.01
    assert gram_error(RecurrenceTable(ref.a, b), leg, 20) > 1e-3


def test_gram_ridge_examples():
    m, _ = ridge_measure(100)
    assert gram_error(compute("sp", m, 20), m, 20) < 1e-9
    assert gram_error(compute("sp", m, 80), m, 80) > 1.0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 25))
def test_gram_invariant_under_atom_order(seed, M):
    rng = np.random.default_rng(seed)
    m = random_discrete(rng, M)
    t = lanczos(m.atoms, M)
    shuffled = Measure(atoms=[m.atoms[i] for i in rng.permutation(M)])
    assert abs(gram_error(t, m, M) - gram_error(t, shuffled, M)) <= 1e-13


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_gram_exact_coefficients_discrete(seed, M):
    m = random_discrete(np.random.default_rng(seed), M)
    with mpmath.workdps(50):
        a, b = stieltjes_mp([mpmath.mpf(t) for t in m.atom_locations],
                            [mpmath.mpf(v) for v in m.atom_masses], M - 1)
    exact = RecurrenceTable([float(v) for v in a], [float(v) for v in b])
    for N in range(1, M + 1):
        assert gram_error(exact, m, N) <= 1e-12


def test_time_call():
    calls = []
    mean, result = time_call(lambda: calls.append(1) or len(calls), repeats=3, warmup=2)
    assert result == 5 and mean >= 0
    with pytest.raises(ParameterError):
        time_call(lambda: None, repeats=0)

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_discrete
from orthoseed.algorithms import (
    CorrectionPair,
    MixedMomentRow,
    PredictorCorrector,
    apc_coeffs,
    compute,
    dp_freud,
    dp_freud_squares,
    hankel_coeffs,
    lanczos,
    lanczos_arrays,
    modified_chebyshev,
    pcl,
    pcl_schedule,
    predictor_corrector,
    stieltjes,
)
from orthoseed.errors import ParameterError
from orthoseed.measure import (
    Atom,
    ConstantWeight,
    ContinuousPiece,
    Measure,
    jacobi_recurrence,
    legendre_on_interval,
    make_catalog_measure,
    reference_recurrence,
)
from orthoseed.metrics import coeff_error, gram_error
from orthoseed.quad import AdaptiveConfig, modified_moments, monomial_moments

LEGENDRE = make_catalog_measure("jacobi", (0, 0))
PWS = make_catalog_measure("pws", (1, -0.5, -0.5, 0.1))
PWS_REF = reference_recurrence("pws", (1, -0.5, -0.5, 0.1), 100)
FREUD_CFG = AdaptiveConfig(max_order=2048)


# --- Hankel determinants ---------------------------------------------------

def test_hankel_legendre_two():
    t = hankel_coeffs([2, 0, 2 / 3, 0], 2)
    assert t.a[0] == 0 and t.b[1] == pytest.approx(math.sqrt(1 / 3), rel=1e-15)
    assert t.b[0] == pytest.approx(math.sqrt(2))


def test_hankel_symmetric_measure_has_zero_a():
    # exact moments: odd ones vanish identically
    m = [2 / (k + 1) if k % 2 == 0 else 0.0 for k in range(20)]
    t = hankel_coeffs(m, 10)
    assert np.all(t.a == 0)


def test_hankel_pws_fails_before_40():
    t = compute("hd", PWS, 40)
    assert t.flagged and t.failure_index < 40


def test_hankel_needs_moments():
    with pytest.raises(ParameterError):
        hankel_coeffs([1.0, 0.0, 1.0], 2)


# --- aPC ---------------------------------------------------------------------

def test_apc_legendre_one():
    t = apc_coeffs([2, 0, 2 / 3, 0], 2)
    assert t.a[0] == pytest.approx(0, abs=1e-16)
    assert t.b[1] == pytest.approx(math.sqrt(1 / 3), rel=1e-14)


def test_apc_uniform_unit_interval():
    m = [1 / (k + 1) for k in range(4)]
    t = apc_coeffs(m, 2)
    assert t.a[0] == pytest.approx(0.5, rel=1e-14)
    assert t.b[1] == pytest.approx(math.sqrt(1 / 12), rel=1e-13)


def test_apc_pws_fails_before_40():
    t = compute("apc", PWS, 40)
    assert t.flagged and t.failure_index < 40


# --- modified Chebyshev --------------------------------------------------------

def test_mc_recovers_auxiliary_family():
    aux = jacobi_recurrence(40, 0.5, -0.3)
    measure = make_catalog_measure("jacobi", (0.5, -0.3))
    mt = modified_moments(measure, aux, 40)
    t = modified_chebyshev(mt, aux, 20)
    assert np.max(np.abs(t.a - aux.a[:20])) < 1e-14
    assert np.max(np.abs(t.b - aux.b[:20])) < 1e-14
    rows = t.info["sigma"]
    assert isinstance(rows[0], MixedMomentRow) and rows[0].n == 0
    assert np.array_equal(rows[0].values, mt)


def test_mc_pws_legendre_n20():
    t = compute("mc", PWS, 20, aux=legendre_on_interval(40, -1, 1))
    assert coeff_error(t, PWS_REF, 20) < 1e-13


def test_mc_short_auxiliary_rejected():
    with pytest.raises(ParameterError):
        modified_chebyshev(np.ones(10), jacobi_recurrence(5), 5)


# --- Stieltjes ---------------------------------------------------------------

def test_sp_first_coefficient_is_moment_ratio():
    m = make_catalog_measure("jacobi_plus_mass", (-0.6, 0.4, 2, 1))
    mom = monomial_moments(m, 2)
    assert stieltjes(m, 1).a[0] == pytest.approx(mom[1] / mom[0], rel=1e-14)


def test_sp_legendre_100():
    t = stieltjes(LEGENDRE, 100)
    assert coeff_error(t, reference_recurrence("jacobi", (0, 0), 100), 100) <= 1e-12


def test_sp_pws_100():
    assert coeff_error(stieltjes(PWS, 100), PWS_REF, 100) <= 5e-12


# --- Lanczos -------------------------------------------------------------------

def test_lz_single_atom():
    t = lanczos([Atom(0.7, 2.5)], 1)
    assert t.b[0] == pytest.approx(math.sqrt(2.5)) and t.a[0] == pytest.approx(0.7)


def test_lz_two_point_symmetric():
    t = lanczos([(-1.0, 0.5), (1.0, 0.5)], 2)
    assert np.allclose(t.a, [0, 0], atol=1e-15)
    assert t.b[1] == pytest.approx(1.0, rel=1e-15)


def test_lz_discrete_chebyshev_320():
    m = make_catalog_measure("discrete_chebyshev", (320,))
    t = lanczos(m.atoms, 100)
    assert coeff_error(t, reference_recurrence("discrete_chebyshev", (320,), 100), 100) <= 1e-12


def test_lz_rejects_too_many_and_duplicates():
    with pytest.raises(ParameterError):
        lanczos([(0.0, 1.0)], 2)
    with pytest.raises(ParameterError):
        lanczos([(0.0, 1.0), (0.0, 1.0)], 1)


def test_lz_breakdown_flags():
    # nodes closer than roundoff behave like a single support point
    t = lanczos_arrays(np.array([0.0, 1e-300, 1.0]), np.ones(3), 3)
    assert t.flagged and t.failure_index <= 2


# --- predictor-corrector -------------------------------------------------------

def test_pc_fixed_point_corrections():
    # Chebyshev second kind: a_n = 0 and b_n = 1/2 for n >= 2, so the
    # predictor is exact from the third step on
    m = make_catalog_measure("jacobi", (0.5, 0.5))
    gen = PredictorCorrector(m)
    gen.extend(12)
    for pair in gen.corrections[2:]:
        assert abs(pair.da) < 1e-14 and pair.db == pytest.approx(1.0, abs=1e-14)


def test_correction_pair():
    assert CorrectionPair(0.5, 2.0).apply(1.0, 3.0) == (1.5, 6.0)
    with pytest.raises(ParameterError):
        CorrectionPair(0.0, 0.0)


def test_pc_pws_100():
    t = predictor_corrector(PWS, 100)
    assert coeff_error(t, PWS_REF, 100) <= 1e-12
    assert coeff_error(t, PWS_REF, 20) <= 1e-13


@pytest.mark.parametrize("alpha", [4, 6])
def test_pc_sp_agree_on_freud(alpha):
    m = make_catalog_measure("freud", (alpha, 0))
    pc = predictor_corrector(m, 100, FREUD_CFG)
    sp = stieltjes(m, 100, FREUD_CFG)
    assert not pc.flagged and not sp.flagged
    assert coeff_error(pc, sp, 100) < 1e-12


def test_pc_extend_is_incremental():
    gen = PredictorCorrector(LEGENDRE)
    t1 = gen.extend(10)
    t2 = gen.extend(20)
    assert np.array_equal(t1.a, t2.a[:10]) and np.array_equal(t1.b[:10], t2.b[:10])


# --- PCL -----------------------------------------------------------------------

def test_pcl_schedule():
    assert pcl_schedule(100) == [100, 101, 201, 301, 401, 601, 801, 1000]
    assert pcl_schedule(1)[0] == 1 and max(pcl_schedule(7)) <= 70


def test_pcl_discrete_delegates_to_lanczos():
    m = make_catalog_measure("discrete_chebyshev", (30,))
    assert np.array_equal(pcl(m, 20).b, lanczos(m.atoms, 20).b)


def test_pcl_single_piece_delegates_to_pc():
    t = pcl(LEGENDRE, 60)
    assert np.array_equal(t.a, predictor_corrector(LEGENDRE, 60).a)
    assert coeff_error(t, reference_recurrence("jacobi", (0, 0), 60), 60) <= 1e-12


def test_pcl_mixed_measure_adaptive():
    m = make_catalog_measure("half_hermite_plus_discrete_chebyshev", (40,))
    t = pcl(m, 100)
    assert t.converged and not t.flagged
    assert gram_error(t, m, 100) <= 1e-8


def test_pcl_unconverged_is_reported():
    m = make_catalog_measure("jacobi_plus_mass", (-0.6, 0.4, 2, 1))
    t = pcl(m, 30, eps=1e-30)
    assert not t.converged
    assert t.info["gap"] > 0


# --- discrete Painleve -------------------------------------------------------------

def test_dp_initial_values():
    s = dp_freud_squares(4, 0, 3)
    assert s[0] == pytest.approx(0.675978240067285, rel=1e-14)
    t = dp_freud(4, 0, 3)
    assert t.b[1] == pytest.approx(math.sqrt(0.675978240067285 / 2), rel=1e-14)
    assert t.b[1] == pytest.approx(0.5814, abs=1e-4)


@pytest.mark.parametrize("alpha", [4, 6])
def test_dp_loses_positivity_and_tracks_pc(alpha):
    t = dp_freud(alpha, 0, 100)
    assert t.flagged and t.failure_index <= 100
    ref = predictor_corrector(make_catalog_measure("freud", (alpha, 0)), 20, FREUD_CFG)
    assert np.max(np.abs(t.b[:15] - ref.b[:15])) < 1e-9


@pytest.mark.parametrize("rho", [0.5, 2.0])
def test_dp_with_rho_matches_pc(rho):
    ref = predictor_corrector(make_catalog_measure("freud", (4, rho)), 12, FREUD_CFG)
    t = dp_freud(4, rho, 12)
    assert np.max(np.abs(t.b[:12] - ref.b[:12])) < 1e-9


def test_dp_rejects_other_alpha():
    with pytest.raises(ParameterError):
        dp_freud(3, 0, 5)
    with pytest.raises(ParameterError):
        compute("dp", LEGENDRE, 5)


# --- compute front door ----------------------------------------------------------

def test_compute_argument_checks():
    with pytest.raises(ParameterError):
        compute("xx", LEGENDRE, 5)
    with pytest.raises(ParameterError):
        compute("sp", LEGENDRE, 0)
    with pytest.raises(ParameterError):
        compute("lz", LEGENDRE, 5)
    with pytest.raises(ParameterError, match="at most 3"):
        compute("pc", Measure(atoms=[Atom(0, 1), Atom(1, 1), Atom(2, 1)]), 4)


# --- invariants -------------------------------------------------------------------

@pytest.mark.parametrize("ab", [(0, 0), (-0.5, -0.5), (2, 1)])
def test_sp_pc_equivalence(ab):
    m = make_catalog_measure("jacobi", ab)
    sp, pc = stieltjes(m, 50), predictor_corrector(m, 50)
    assert np.max(np.abs(sp.a - pc.a)) <= 1e-11
    assert np.max(np.abs(sp.b[:50] - pc.b[:50])) <= 1e-11


_SYMMETRIC = [("jacobi", (0, 0)), ("jacobi", (-0.5, -0.5)), ("hermite", ()),
              ("freud", (4, 0)), ("freud", (6, 0)), ("pws", (1, -0.5, -0.5, 0.1))]


@pytest.mark.parametrize("kind,params", _SYMMETRIC)
def test_symmetry(kind, params):
    m = make_catalog_measure(kind, params)
    for algo in ("sp", "pc", "pcl"):
        t = compute(algo, m, 60, FREUD_CFG)
        assert np.max(np.abs(t.a)) <= 1e-12


def test_symmetry_discrete():
    xs = np.linspace(0.05, 1, 20)
    m = Measure(atoms=[Atom(float(s * x), 0.3) for x in xs for s in (-1, 1)])
    for algo in ("sp", "lz", "pc", "pcl"):
        assert np.max(np.abs(compute(algo, m, 30).a)) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_positivity(seed, M):
    m = random_discrete(np.random.default_rng(seed), M)
    for algo in ("hd", "apc", "mc", "sp", "lz", "pc"):
        t = compute(algo, m, M)
        if not t.flagged:
            assert np.all(t.b > 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 30),
       st.floats(0.1, 10.0), st.floats(-5.0, 5.0))
def test_lanczos_affine_equivariance(seed, M, s, shift):
    m = random_discrete(np.random.default_rng(seed), M)
    t = lanczos(m.atoms, M)
    scaled = lanczos([(s * a.tau, a.nu) for a in m.atoms], M)
    moved = lanczos([(a.tau + shift, a.nu) for a in m.atoms], M)
    assert np.allclose(scaled.a, s * t.a, rtol=1e-12, atol=1e-12 * s)
    assert scaled.b[0] == pytest.approx(t.b[0], rel=1e-12)
    assert np.allclose(scaled.b[1:M], s * t.b[1:M], rtol=1e-12)
    assert np.allclose(moved.a, t.a + shift, rtol=1e-12, atol=1e-12 * (1 + abs(shift)))
    assert np.allclose(moved.b[:M], t.b[:M], rtol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_small_instance_oracle(seed, M):
    m = random_discrete(np.random.default_rng(seed), M)
    tables = {algo: compute(algo, m, M) for algo in ("hd", "apc", "sp", "lz", "pc")}
    base = tables["lz"]
    for algo, t in tables.items():
        assert not t.flagged, algo
        assert np.max(np.abs(t.a[:M] - base.a[:M])) <= 1e-8, algo
        assert np.max(np.abs(t.b[:M] - base.b[:M])) <= 1e-8, algo

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import (blocked, element, haar, halfband, random_step, sigma_closed_set,
                     weighted_haar)
from vilenkin.fmra import PreconditionError, lowpass_filter
from vilenkin.group import DomainError
from vilenkin.periodic import FilterSpec, PeriodicSet
from vilenkin.shift_invariant import frame_report, periodization
from vilenkin.stepfn import StepFunction, max_abs_diff
from vilenkin.transform import fourier, inverse_fourier
from vilenkin.wavelet2 import (BlockedSetError, blocked_set, construct_wavelet, delta_sets,
                               existence_conditions, fiber_decomposition,
                               fiber_orthogonality_check, wavelet_frame_check)

seeds = st.integers(0, 2**32 - 1)


def indicator_instance(rng, r):
    return inverse_fourier(StepFunction(2, "dual", 0, r, sigma_closed_set(rng, 2, r)))


def test_haar_wavelet():
    cert = construct_wavelet(haar())
    assert cert.passed
    assert cert.bounds_out == (1.0, 1.0)
    assert np.allclose(periodization(cert.psi).values, 1.0)
    expect = StepFunction.from_cells(2, "primal", 0, 1, {"0.0": -1, "0.1": 1})
    assert max_abs_diff(cert.psi, expect) == 0
    assert max_abs_diff(cert.highpass.fn, StepFunction(2, "dual", 0, 1, [0, -1])) == 0


def test_halfband_wavelet_is_band_indicator():
    cert = construct_wavelet(halfband())
    assert cert.passed
    d = cert.deltas
    assert d.delta2.is_empty() and d.delta1 == PeriodicSet.full(2)
    # indicator of the part of U* with first digit 1
    expect = StepFunction(2, "dual", 0, 1, [0, 1])
    assert max_abs_diff(fourier(cert.psi), expect) <= 1e-15


def test_blocked_instance():
    phi = blocked()
    E, mu = blocked_set(phi)
    assert mu == Fraction(1, 4)
    assert [str(c) for c in E.cells()] == ["0.100", "0.101"]
    with pytest.raises(BlockedSetError) as ei:
        construct_wavelet(phi)
    assert ei.value.cells == ["0.100", "0.101"]
    rep = existence_conditions(phi, None, 1.0, 1.0)
    assert not rep.cond_i and not rep.cond_ii
    assert rep.cond_i_failures == E == rep.cond_ii_failures


def test_blocked_set_is_delta2_minus_spectrum():
    rng = np.random.default_rng(11)
    for _ in range(30):
        phi = indicator_instance(rng, int(rng.integers(1, 4)))
        E, _ = blocked_set(phi)
        d = delta_sets(phi)
        assert E == d.delta2 - d.eta_v0


@given(seeds, st.integers(1, 3))
def test_certificate_on_indicator_fmras(seed, r):
    rng = np.random.default_rng(seed)
    phi = indicator_instance(rng, r)
    E, mu = blocked_set(phi)
    if mu > 0:
        with pytest.raises(BlockedSetError):
            construct_wavelet(phi)
        assert not existence_conditions(phi, None, 1.0, 1.0).cond_i
        return
    cert = construct_wavelet(phi)
    assert cert.passed, cert.as_dict()
    assert cert.unified_formula_residual <= 1e-12
    assert existence_conditions(phi, None, 1.0, 1.0).cond_ii


@given(st.lists(st.integers(1, 8), min_size=2, max_size=8).filter(lambda v: len(v) in (2, 4, 8)))
def test_weighted_haar_frames(g):
    g = np.array(g) / 8.0
    phi = weighted_haar(g)
    rep = frame_report(phi)
    C, D = rep.lower, rep.upper
    assert (C, D) == (g.min() ** 2, g.max() ** 2)
    cert = construct_wavelet(phi)
    assert cert.passed, cert.as_dict()
    assert cert.bounds_out == (min(C, C ** 3), max(D, D ** 3))
    ex = existence_conditions(phi, None, C, D)
    assert ex.cond_i and ex.cond_ii and ex.two_scale_residual <= 1e-12


def test_fiber_decomposition_pieces():
    fd = fiber_decomposition(haar(), None, element("0.1"))
    assert np.allclose(fd.a, fd.a_even + fd.a_odd)
    assert np.allclose(fd.b, fd.a_even - fd.a_odd)
    assert fd.m_even == 1 and fd.m_odd == 0


def test_orthogonality_detects_wrong_wavelet():
    rep = fiber_orthogonality_check(haar(), None, haar())
    assert rep.residual == pytest.approx(1.0)
    rep = fiber_orthogonality_check(haar(), None, StepFunction.zeros(2, "primal"))
    assert rep.residual == 0 and not rep.dims_ok


def test_frame_check_flags_wrong_bounds():
    cert = construct_wavelet(haar())
    bad = wavelet_frame_check(cert.psi, 2.0, 2.0, cert.deltas)
    assert not bad.passed and bad.offending is not None


def test_input_validation():
    with pytest.raises(DomainError):
        construct_wavelet(haar(3))
    with pytest.raises(PreconditionError):
        construct_wavelet(haar(), FilterSpec.constant(1.0, 2))
    with pytest.raises(PreconditionError):
        blocked_set(haar(), FilterSpec.constant(1.0, 2))


def test_alternative_filter_blocks_nothing_new():
    phi = halfband()
    m = lowpass_filter(phi)
    # any filter that agrees with m on the spectrum is also a refinement filter
    alt = FilterSpec(m.refine(2).fn + StepFunction(2, "dual", 0, 2, [0, 0, 0.3, -2]))
    rep = existence_conditions(phi, m, 1.0, 1.0, m_alt=alt)
    assert rep.alt_consistent and rep.alt_blocked.is_empty()


def test_zero_generator():
    zero = StepFunction.zeros(2, "primal")
    fd = fiber_decomposition(zero, None, element("0.1"))
    assert not fd.a.any() and not fd.c.any()
    d = delta_sets(zero)
    assert d.delta2.is_empty() and d.delta1.is_empty()
    cert = construct_wavelet(zero)
    assert cert.psi.is_zero()
    assert fiber_orthogonality_check(zero, None, zero).residual == 0


def test_haar_fiber_entries():
    fd = fiber_decomposition(haar(), None, element("0.01"))
    nz = {str(h): v for h, v in zip(fd.lattice, fd.a) if v != 0}
    assert nz == {"0.0": 1, "1.0": 1}
    assert fd.a_even[0] == 1 and fd.a_odd[1] == 1


def test_halfband_odd_fiber_vanishes():
    for w in ("0.0", "0.01", "0.1", "0.11"):
        fd = fiber_decomposition(halfband(), None, element(w))
        assert not fd.a_odd.any()


@given(seeds, st.integers(1, 3), st.sampled_from(["0.0", "0.01", "0.1", "0.111"]))
def test_fiber_invariants(seed, r, w):
    rng = np.random.default_rng(seed)
    phi = inverse_fourier(random_step(rng, 2, "dual", lo=-2, hi=r))
    m = FilterSpec(random_step(rng, 2, "dual", lo=0, hi=r))
    fd = fiber_decomposition(phi, m, element(w))
    assert np.array_equal(fd.a, fd.a_even + fd.a_odd)
    assert np.vdot(fd.a_even, fd.a_odd) == 0
    rank = np.linalg.matrix_rank
    both = np.array([fd.a, fd.b])
    parts = np.array([fd.a_even, fd.a_odd])
    assert rank(both) == rank(parts) == rank(np.vstack([both, parts]))


@given(seeds, st.integers(1, 3))
def test_unblocked_delta2_maps_into_spectrum(seed, r):
    rng = np.random.default_rng(seed)
    phi = indicator_instance(rng, r)
    if blocked_set(phi)[1] > 0:
        return
    rep = frame_report(phi)
    P = FilterSpec(periodization(phi))
    half = element("0.1")
    for cell in delta_sets(phi).delta2.cells():
        w = cell.representative
        assert abs(P(w.shift(-1))) > 1e-12 and abs(P(w.shift(-1) + half)) > 1e-12
        assert rep.lower - 1e-12 <= P(w).real <= rep.upper + 1e-12


def test_frame_check_rejects_zero_wavelet():
    cert = construct_wavelet(haar())
    check = wavelet_frame_check(StepFunction.zeros(2, "primal"), 1.0, 1.0, cert.deltas)
    assert not check.passed and not check.spectrum_ok

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import haar, halfband, random_step, sigma_closed_set, weighted_haar
from vilenkin.fmra import (NotInSpaceError, PreconditionError, ScalingKind, StrataError,
                           bracket_split_check, check_refinement, fmra_to_mra, from_filter,
                           limit_modulus, lowpass_filter, lowpass_identity, minimal_filter,
                           scaling_checks)
from vilenkin.periodic import FilterSpec
from vilenkin.shift_invariant import frame_report, periodization
from vilenkin.stepfn import StepFunction, window_align
from vilenkin.transform import hat, inverse_fourier

seeds = st.integers(0, 2**32 - 1)


def indicator_instance(rng, p, r):
    return inverse_fourier(StepFunction(p, "dual", 0, r, sigma_closed_set(rng, p, r)))


def test_haar_filter_and_checks():
    m = lowpass_filter(haar())
    assert np.array_equal(m.values, [1, 0])
    assert check_refinement(haar(), m) == 0
    assert lowpass_identity(haar(), m) == 0
    assert scaling_checks(haar(), "mra").passed
    assert scaling_checks(haar(), "parseval_fmra").passed
    assert limit_modulus(haar(), 3) == [0.0] * 4


def test_halfband_is_fmra_not_mra():
    phi = halfband()
    m = lowpass_filter(phi)
    assert np.array_equal(m.refine(2).values, [1, 0, 0, 0])
    assert lowpass_identity(phi, m) == 0
    rep = scaling_checks(phi, ScalingKind.MRA)
    assert not rep.periodization_ok and rep.refinement_ok
    assert rep.limit_deviations[0] == 1.0
    assert scaling_checks(phi, ScalingKind.PARSEVAL_FMRA).passed


def test_wrong_filter_and_non_members():
    assert check_refinement(haar(), FilterSpec.constant(1.0, 2)) == 1.0
    f = inverse_fourier(StepFunction(2, "dual", -2, 0, [1, 1, 1, 1]))
    with pytest.raises(NotInSpaceError):
        minimal_filter(haar(), f, 1)
    with pytest.raises(PreconditionError):
        lowpass_identity(haar() * 2.0, FilterSpec.constant(1.0, 2))


def test_zero_function_fails_scaling_checks():
    rep = scaling_checks(StepFunction.zeros(2, "primal"))
    assert not (rep.periodization_ok or rep.limit_ok or rep.refinement_ok)


@given(seeds, st.sampled_from([2, 3]), st.integers(1, 3))
def test_minimal_filter_reproduces_members(seed, p, r):
    rng = np.random.default_rng(seed)
    phi = indicator_instance(rng, p, r)
    m = FilterSpec(random_step(rng, p, "dual", lo=0, hi=r))
    f = from_filter(m, phi)
    mf = minimal_filter(phi, f, 1)
    a, b = window_align(hat(f).compose_auto(1), mf.extend(hat(phi).lo) * hat(phi))
    assert np.max(np.abs(a.values - b.values)) <= 1e-12


@given(seeds, st.sampled_from([2, 3]), st.integers(1, 3))
def test_lowpass_identity_on_indicator_fmras(seed, p, r):
    rng = np.random.default_rng(seed)
    phi = indicator_instance(rng, p, r)
    m = lowpass_filter(phi)
    assert check_refinement(phi, m) <= 1e-12
    assert lowpass_identity(phi, m) <= 1e-12


@given(seeds, st.sampled_from([2, 3]))
def test_bracket_split_random_filters(seed, p):
    rng = np.random.default_rng(seed)
    phi = indicator_instance(rng, p, 2)
    m1, m2 = (FilterSpec(random_step(rng, p, "dual", lo=0, hi=2)) for _ in range(2))
    f1, f2 = from_filter(m1, phi), from_filter(m2, phi)
    assert bracket_split_check(f1, f2, m1, m2, phi) <= 1e-12


def test_bracket_split_precondition():
    m = FilterSpec.constant(1.0, 2)
    with pytest.raises(PreconditionError):
        bracket_split_check(haar(), haar(), m, m, haar())


@given(seeds, st.sampled_from([2, 3]), st.integers(1, 3))
def test_lift_of_indicator_fmras(seed, p, r):
    rng = np.random.default_rng(seed)
    phi = indicator_instance(rng, p, r)
    lift = fmra_to_mra(phi)
    assert frame_report(lift.varphi).orthonormal
    assert lift.refinement_residual <= 1e-12
    a, b = window_align(lift.varphi_hat, hat(phi))
    assert np.all(np.abs(a.values) >= np.abs(b.values) - 1e-12)
    assert sum(s.measure for s in lift.strata) == 1


def test_lift_of_halfband_and_haar():
    lift = fmra_to_mra(halfband())
    assert np.allclose(lift.varphi.simplify().values, [1])
    assert np.array_equal(lift.m_varphi.refine(2).values, [1, 1, 0, 0])
    assert [str(s.measure) for s in lift.strata] == ["1/2", "1/2"]
    same = fmra_to_mra(haar())
    assert np.allclose(same.varphi.simplify().values, haar().values)


def test_lift_rejects_bad_inputs():
    with pytest.raises(PreconditionError):
        fmra_to_mra(haar() * 2.0)
    with pytest.raises(PreconditionError):
        fmra_to_mra(weighted_haar([1.0, 0.5]))
    with pytest.raises(NotInSpaceError):
        fmra_to_mra(inverse_fourier(StepFunction(2, "dual", 0, 1, [0, 1])))
    with pytest.raises(StrataError) as ei:
        fmra_to_mra(halfband(), max_depth=0)
    assert ei.value.cells == ["0.1"]

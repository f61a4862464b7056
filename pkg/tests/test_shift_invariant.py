import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import element, haar, halfband, random_parseval_hat, random_step
from vilenkin.group import GroupElement, Side, VilenkinError, h_of
from vilenkin.shift_invariant import (bracket, e_set, fiber, frame_report, periodization,
                                      spectrum, spectrum_from_e_set, spectrum_from_fibers,
                                      synthesize)
from vilenkin.stepfn import StepFunction, inner_product
from vilenkin.periodic import FilterSpec
from vilenkin.transform import fourier, inverse_fourier

seeds = st.integers(0, 2**32 - 1)


def gram_matrix(phi: StepFunction) -> np.ndarray:
    """Inner products of translates of ``phi`` by the finite lattice piece that can overlap its support."""
    K = -phi.lo
    hs = [h_of(a, phi.p) for a in range(phi.p ** K)]
    shifted = [phi.translate(h) for h in hs]
    return np.array([[inner_product(a, b) for b in shifted] for a in shifted])


@given(seeds, st.sampled_from([2, 3]))
def test_gram_eigenvalues_are_periodization_values(seed, p):
    rng = np.random.default_rng(seed)
    lo = -int(rng.integers(1, 3))
    phi = random_step(rng, p, lo=lo, hi=int(rng.integers(0, 2)))
    G = gram_matrix(phi)
    P = periodization(phi).refine(hi=-lo).values
    assert np.max(np.abs(P.imag)) <= 1e-12
    assert np.allclose(np.sort(np.linalg.eigvalsh(G)), np.sort(P.real), atol=1e-10)


@given(seeds, st.sampled_from([2, 3]))
def test_frame_flags_against_gram(seed, p):
    rng = np.random.default_rng(seed)
    ph = random_parseval_hat(rng, p, -1, 1, full=bool(rng.integers(0, 2)))
    phi = inverse_fourier(ph).refine(lo=-1)
    G = gram_matrix(phi)
    rep = frame_report(phi)
    if rep.frame:
        assert rep.parseval == np.allclose(G @ G, G, atol=1e-10)
    assert rep.orthonormal == np.allclose(G, np.eye(len(G)), atol=1e-10)


def test_haar_and_halfband_reports():
    r = frame_report(haar())
    assert (r.lower, r.upper, r.parseval, r.orthonormal) == (1.0, 1.0, True, True)
    r = frame_report(halfband())
    assert r.parseval and not r.orthonormal
    assert [str(c) for c in r.null_set.cells()] == ["0.1"]
    r = frame_report(StepFunction.zeros(2, "primal"))
    assert not (r.frame or r.parseval or r.orthonormal)


@given(seeds, st.sampled_from([2, 3]))
def test_bracket_properties(seed, p):
    rng = np.random.default_rng(seed)
    f, g = (fourier(random_step(rng, p, lo=-1, hi=1)) for _ in range(2))
    fg, gf = bracket(f, g), bracket(g, f)
    assert np.allclose(fg.values, np.conj(gf.values), atol=1e-12)
    assert np.allclose(bracket(f, f).values, periodization(f).refine(hi=fg.hi).values, atol=1e-12)
    # integral of the bracket over U* equals the inner product
    assert fg.integral() == pytest.approx(inner_product(f, g), abs=1e-12)


@given(seeds, st.sampled_from([2, 3]))
def test_three_spectra_agree(seed, p):
    rng = np.random.default_rng(seed)
    ph = random_step(rng, p, "dual", lo=-1, hi=2, sparsity=0.6)
    a, b, c = spectrum(ph), spectrum_from_fibers(ph), spectrum_from_e_set(ph)
    assert a == b == c


def test_e_set_is_lattice_periodic():
    ph = StepFunction(2, "dual", -1, 1, [1, 0, 0, 0])
    E = e_set(ph)
    assert np.array_equal(E.values.real, [1, 0, 1, 0])


def test_fiber_entries():
    ph = StepFunction(2, "dual", -1, 1, [1, 2, 3, 4])
    fb = fiber(ph, element("0.1"))
    assert np.array_equal(fb.values, [2, 4])
    assert fb.norm2 == 20
    assert fb.entries[element("1.0")] == 4
    with pytest.raises(VilenkinError):
        fiber(ph, element("1.1"))


def test_synthesize_multiplies_transform():
    m = FilterSpec.from_values(2, [1, -1])
    f = synthesize(m, haar())
    assert np.allclose(fourier(f).values, [1, -1])

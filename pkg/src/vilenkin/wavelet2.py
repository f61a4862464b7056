"""Frame wavelets for an FMRA on the Cantor dyadic group (p = 2).

Conventions: the dual lattice acts by ``w + n``; ``sigma = B^{-1}`` and
``rho = B`` on the dual side; ``Lambda_1`` is the set of lattice points with
digit 0 at index 0 (the even rows of a lattice matrix).  The fundamental
domain ``D`` is ``U*``, whose points have ``w_0 = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fmra import CHAIN_TOL, PreconditionError, check_refinement, lowpass_filter
from .group import DomainError, GroupElement, Side, VilenkinError, h_of
from .periodic import FilterSpec, PeriodicSet
from .shift_invariant import _wrapped_translate, frame_report, periodization
from .stepfn import TOL, StepFunction, window_align
from .transform import hat, inverse_fourier


class BlockedSetError(VilenkinError):
    """The blocked set has positive measure, so no single wavelet generates ``W_0``."""

    def __init__(self, blocked: PeriodicSet):
        super().__init__(f"blocked set has measure {blocked.measure} > 0; "
                         "W_0 is not a principal shift-invariant space")
        self.blocked = blocked
        self.cells = [str(c) for c in blocked.cells()]


def _require_dyadic(f: StepFunction) -> None:
    if f.p != 2:
        raise DomainError(f"the wavelet construction needs p = 2, got p = {f.p}")


@dataclass
class _Tables:
    """Lattice matrices over a common window; columns are the cells of ``D``."""

    lo: int
    hi: int
    a: np.ndarray          # phi^(sigma(w + n))
    m_sigma: np.ndarray    # m(sigma(w + n))
    P: np.ndarray          # periodization on D

    @property
    def even(self) -> np.ndarray:
        return np.arange(self.a.shape[0]) % 2 == 0

    @property
    def energy_even(self) -> np.ndarray:
        return np.sum(np.abs(self.a[self.even]) ** 2, axis=0)

    @property
    def energy_odd(self) -> np.ndarray:
        return np.sum(np.abs(self.a[~self.even]) ** 2, axis=0)

    @property
    def m_e(self) -> np.ndarray:
        return self.m_sigma[0]

    @property
    def m_o(self) -> np.ndarray:
        return self.m_sigma[1]

    @property
    def c(self) -> np.ndarray:
        return self.m_sigma * self.a


def _window(ph: StepFunction, m: FilterSpec, other: StepFunction | None = None) -> tuple[int, int]:
    lo = min(ph.lo - 1, -1)
    hi = max(ph.hi, m.resolution, 1)
    if other is not None:
        lo, hi = min(lo, other.lo), max(hi, other.hi)
    return lo, hi


def _tables(ph: StepFunction, m: FilterSpec, lo: int, hi: int) -> _Tables:
    g = ph.compose_auto(-1).refine(lo, hi)
    ms = m.extend(lo + 1).compose_auto(-1).refine(lo, hi)
    P = periodization(ph).refine(hi=hi).values.real
    return _Tables(lo, hi, g.lattice_matrix(), ms.lattice_matrix(), P)


def _prepare(phi: StepFunction, m: FilterSpec | StepFunction | None):
    ph = hat(phi)
    _require_dyadic(ph)
    if m is None:
        m = lowpass_filter(ph)
    elif isinstance(m, StepFunction):
        m = FilterSpec(m)
    return ph, m


def _cell(p: int, r: int, i: int) -> str:
    return str(StepFunction.zeros(p, Side.DUAL, 0, r).coset(int(i)))


@dataclass
class FiberDecomposition:
    omega: GroupElement
    lattice: tuple[GroupElement, ...]
    a: np.ndarray
    a_even: np.ndarray
    a_odd: np.ndarray
    b: np.ndarray
    c: np.ndarray
    m_even: complex
    m_odd: complex


def fiber_decomposition(phi: StepFunction, m: FilterSpec | StepFunction | None,
                        omega: GroupElement) -> FiberDecomposition:
    """Fibers of ``V_1`` at ``omega`` in ``D``, split over even and odd lattice points."""
    ph, m = _prepare(phi, m)
    if omega.side is not Side.DUAL or not omega.in_ball(0):
        raise VilenkinError(f"{omega!r} is not a point of D = U*")
    lo, hi = _window(ph, m)
    if omega.digits:
        hi = max(hi, omega.top)
    t = _tables(ph, m, lo, hi)
    col = StepFunction.zeros(2, Side.DUAL, 0, hi).index_of(omega)
    a = t.a[:, col].copy()
    even = t.even
    a_e, a_o = np.where(even, a, 0), np.where(even, 0, a)
    sign = -1.0 if omega.digit(0) else 1.0
    lattice = tuple(h_of(k, 2, Side.DUAL) for k in range(a.size))
    return FiberDecomposition(omega, lattice, a, a_e, a_o, sign * a_e - sign * a_o,
                              t.c[:, col].copy(), complex(t.m_e[col]), complex(t.m_o[col]))


@dataclass
class DeltaReport:
    delta2: PeriodicSet
    delta1: PeriodicSet
    eta_v0: PeriodicSet
    eta_v1: PeriodicSet
    dims: np.ndarray = field(repr=False)
    blocked: PeriodicSet | None = None

    @property
    def blocked_measure(self) -> Fraction | None:
        return None if self.blocked is None else self.blocked.measure

    @property
    def wavelet_spectrum(self) -> PeriodicSet:
        return self.delta2 | (self.delta1 - self.eta_v0)

    def as_dict(self) -> dict:
        out = {
            "resolution": self.delta2.resolution,
            "delta2": [str(c) for c in self.delta2.cells()],
            "delta1": [str(c) for c in self.delta1.cells()],
            "eta_v0": [str(c) for c in self.eta_v0.cells()],
            "delta2_measure": str(self.delta2.measure),
            "delta1_measure": str(self.delta1.measure),
        }
        if self.blocked is not None:
            out["blocked"] = [str(c) for c in self.blocked.cells()]
            out["blocked_measure"] = str(self.blocked.measure)
        return out


def _deltas(t: _Tables, tol: float) -> DeltaReport:
    ne, no = t.energy_even > tol, t.energy_odd > tol
    r = t.hi
    return DeltaReport(PeriodicSet(2, r, ne & no), PeriodicSet(2, r, ne ^ no),
                       PeriodicSet(2, r, t.P > tol), PeriodicSet(2, r, ne | no),
                       ne.astype(int) + no.astype(int))


def delta_sets(phi: StepFunction, tol: float = TOL) -> DeltaReport:
    """Cells of ``D`` where the fiber space of ``V_1`` has dimension 2 and 1."""
    ph = hat(phi)
    _require_dyadic(ph)
    # the filter does not enter the dimensions; a constant one fixes the window
    one = FilterSpec.constant(1.0, 2)
    return _deltas(_tables(ph, one, *_window(ph, one)), tol)


def _blocked_mask(t: _Tables, d: DeltaReport, tol: float) -> np.ndarray:
    return d.delta2.mask & (np.abs(t.m_e) <= tol) & (np.abs(t.m_o) <= tol)


def blocked_set(phi: StepFunction, m: FilterSpec | StepFunction | None = None,
                tol: float = TOL) -> tuple[PeriodicSet, Fraction]:
    """Cells of ``Delta_2`` where both ``m(sigma w)`` and ``m(sigma w + 0.1)`` vanish."""
    ph, m = _prepare(phi, m)
    res = check_refinement(ph, m)
    if res > CHAIN_TOL:
        raise PreconditionError(f"m is not a refinement filter for phi: residual {res:.3e}")
    t = _tables(ph, m, *_window(ph, m))
    d = _deltas(t, tol)
    E = PeriodicSet(2, t.hi, _blocked_mask(t, d, tol))
    return E, E.measure


@dataclass
class FrameCheck:
    residuals: dict[str, float]
    spectrum_ok: bool
    offending: str | None
    passed: bool


def wavelet_frame_check(psi: StepFunction, C: float, D: float, regions: DeltaReport,
                        tol: float = TOL) -> FrameCheck:
    """Check the periodization of ``psi`` against the regionwise bounds.

    ``[C^3, D^3]`` on ``Delta_2``, ``[C, D]`` on ``Delta_1`` minus ``eta(V_0)``,
    zero elsewhere on ``D``; the support must equal the union of the first two regions.
    """
    Pp = periodization(psi)
    r = max(Pp.hi, regions.delta2.resolution)
    P = Pp.refine(hi=r).values.real
    d2 = regions.delta2.refine(r).mask
    d1 = (regions.delta1 - regions.eta_v0).refine(r).mask
    rest = ~(d2 | d1)
    lo_g, hi_g = min(C, C ** 3), max(D, D ** 3)
    scale = tol * max(1.0, hi_g)

    def viol(mask, lo, hi):
        if not mask.any():
            return 0.0, None
        v = np.maximum(np.maximum(lo - P, P - hi), 0.0) * mask
        i = int(np.argmax(v))
        return float(v[i]), (_cell(2, r, i) if v[i] > scale else None)

    res, bad = {}, None
    for name, mask, lo, hi in (("delta2", d2, C ** 3, D ** 3),
                               ("delta1_outside_eta_v0", d1, C, D),
                               ("elsewhere", rest, 0.0, 0.0)):
        res[name], cell = viol(mask, lo, hi)
        bad = bad or cell
    supp = P > tol
    res["global"], cell = viol(supp, lo_g, hi_g)
    bad = bad or cell
    spec_ok = bool(np.array_equal(supp, d2 | d1))
    if not spec_ok and bad is None:
        bad = _cell(2, r, int(np.argmax(supp != (d2 | d1))))
    passed = spec_ok and all(v <= scale for v in res.values())
    return FrameCheck(res, spec_ok, bad, passed)


@dataclass
class OrthogonalityReport:
    residual: float
    span_residual: float
    dim_v1: np.ndarray = field(repr=False)
    dim_v0: np.ndarray = field(repr=False)
    dim_w0: np.ndarray = field(repr=False)

    @property
    def dims_ok(self) -> bool:
        return bool(np.array_equal(self.dim_v1, self.dim_v0 + self.dim_w0))


def fiber_orthogonality_check(phi: StepFunction, m: FilterSpec | StepFunction | None,
                              psi: StepFunction, tol: float = TOL) -> OrthogonalityReport:
    """Per cell of ``D``: ``<c^w, psi^||w>``, membership of ``psi^||w`` in the
    ``V_1`` fiber, and the dimension count ``dim V_1 = dim V_0 + dim W_0``."""
    ph, m = _prepare(phi, m)
    sh = hat(psi)
    lo, hi = _window(ph, m, sh)
    t = _tables(ph, m, lo, hi)
    Psi = sh.refine(lo, hi).lattice_matrix()
    c = t.c
    inner = np.abs(np.sum(Psi * np.conj(c), axis=0))
    ee, eo = t.energy_even, t.energy_odd
    even = t.even[:, None]
    a_e, a_o = np.where(even, t.a, 0), np.where(even, 0, t.a)
    proj = np.zeros_like(Psi)
    for v, e in ((a_e, ee), (a_o, eo)):
        coef = np.where(e > tol, np.sum(Psi * np.conj(v), axis=0) / np.where(e > tol, e, 1.0), 0.0)
        proj = proj + coef * v
    span_res = float(np.max(np.sqrt(np.sum(np.abs(Psi - proj) ** 2, axis=0)), initial=0.0))
    dim_v1 = (ee > tol).astype(int) + (eo > tol).astype(int)
    dim_v0 = (np.sum(np.abs(c) ** 2, axis=0) > tol).astype(int)
    dim_w0 = (np.sum(np.abs(Psi) ** 2, axis=0) > tol).astype(int)
    return OrthogonalityReport(float(inner.max(initial=0.0)), span_res, dim_v1, dim_v0, dim_w0)


@dataclass
class WaveletCertificate:
    psi: StepFunction
    psi_hat: StepFunction = field(repr=False)
    m_psi: StepFunction = field(repr=False)
    highpass: FilterSpec = field(repr=False)
    bounds_in: tuple[float, float]
    bounds_out: tuple[float, float]
    deltas: DeltaReport = field(repr=False)
    frame: FrameCheck
    orthogonality: OrthogonalityReport = field(repr=False)
    unified_formula_residual: float
    highpass_residual: float
    tol: float = TOL

    @property
    def passed(self) -> bool:
        scale = self.tol * max(1.0, self.bounds_out[1])
        return (self.frame.passed and self.orthogonality.residual <= scale
                and self.orthogonality.span_residual <= scale and self.orthogonality.dims_ok
                and self.unified_formula_residual <= scale and self.highpass_residual <= scale)

    def as_dict(self) -> dict:
        return {
            "bounds_in": {"lower": self.bounds_in[0], "upper": self.bounds_in[1]},
            "bounds_out": {"lower": self.bounds_out[0], "upper": self.bounds_out[1]},
            "regions": self.deltas.as_dict(),
            "region_residuals": self.frame.residuals,
            "wavelet_spectrum_ok": self.frame.spectrum_ok,
            "offending_cell": self.frame.offending,
            "fiber_orthogonality_residual": self.orthogonality.residual,
            "fiber_span_residual": self.orthogonality.span_residual,
            "dimension_identity": self.orthogonality.dims_ok,
            "unified_formula_residual": self.unified_formula_residual,
            "highpass_residual": self.highpass_residual,
            "passed": self.passed,
        }


def _unified_formula(ph: StepFunction, m: FilterSpec, region: PeriodicSet,
                     lo: int, hi: int) -> StepFunction:
    """One-line form of the wavelet transform on ``Delta_2 + Lambda``, evaluated pointwise.

    ``(-1)^{xi_0} conj(m(sigma xi + 0.1)) S(xi) phi^(sigma xi)`` with ``S(xi)`` the sum of
    ``|phi^(sigma(xi + n'))|^2`` over odd lattice points ``n'``.
    """
    g = ph.compose_auto(-1).refine(lo, hi)
    S = StepFunction.zeros(2, Side.DUAL, lo, hi)
    for k in range(1, 2 ** (-lo), 2):
        S = S + _wrapped_translate(g, h_of(k, 2, Side.DUAL)).abs2()
    mo = m.shift(1).extend(lo + 1).compose_auto(-1).refine(lo, hi)
    t = np.ones((2,) * (hi - lo))
    idx = [slice(None)] * (hi - lo)
    idx[-lo - 1] = 1
    t[tuple(idx)] = -1.0
    sign = StepFunction(2, Side.DUAL, lo, hi, t.reshape(-1))
    mask = FilterSpec(region.indicator()).extend(lo, hi).refine(lo, hi)
    return sign * mo.conj() * S * g * mask


def construct_wavelet(phi: StepFunction, m: FilterSpec | StepFunction | None = None,
                      bounds: tuple[float, float] | None = None,
                      tol: float = TOL) -> WaveletCertificate:
    """Build ``psi`` with ``psi^(w) = m_psi(w) phi^(sigma w)`` and certify its frame bounds.

    Raises :class:`BlockedSetError` when the blocked set is nonempty.
    """
    ph, m = _prepare(phi, m)
    res = check_refinement(ph, m)
    if res > CHAIN_TOL:
        raise PreconditionError(f"m is not a refinement filter for phi: residual {res:.3e}")
    if bounds is None:
        rep = frame_report(ph, tol)
        bounds = (rep.lower, rep.upper)
    C, D = bounds
    lo, hi = _window(ph, m)
    t = _tables(ph, m, lo, hi)
    d = _deltas(t, tol)
    E = PeriodicSet(2, hi, _blocked_mask(t, d, tol))
    d.blocked = E
    if not E.is_empty():
        raise BlockedSetError(E)

    d2 = d.delta2.mask
    d1 = (d.delta1 - d.eta_v0).mask
    ee, eo = t.energy_even, t.energy_odd
    top = np.where(d2, np.conj(t.m_o) * eo, np.where(d1, 1.0, 0.0))
    bottom = np.where(d2, -np.conj(t.m_e) * ee, np.where(d1, 1.0, 0.0))
    even = t.even[:, None]
    Psi = np.where(even, top, bottom) * t.a
    psi_hat = StepFunction(2, Side.DUAL, lo, hi, Psi.reshape(-1))
    m_psi = StepFunction(2, Side.DUAL, -1, hi, np.concatenate([top, bottom]))
    highpass = FilterSpec(m_psi.compose_auto(1))

    by_filter = highpass.extend(ph.lo) * ph
    a, b = window_align(psi_hat.compose_auto(1), by_filter)
    highpass_res = float(np.max(np.abs(a.values - b.values), initial=0.0))

    uni = _unified_formula(ph, m, d.delta2, lo, hi)
    region = FilterSpec(d.delta2.indicator()).extend(lo, hi).refine(lo, hi)
    uni_res = float(np.max(np.abs((psi_hat * region - uni).values), initial=0.0))

    out = (min(C, C ** 3), max(D, D ** 3))
    check = wavelet_frame_check(psi_hat, C, D, d, tol)
    orth = fiber_orthogonality_check(ph, m, psi_hat, tol)
    return WaveletCertificate(inverse_fourier(psi_hat), psi_hat, m_psi, highpass, (C, D), out,
                              d, check, orth, uni_res, highpass_res, tol)


@dataclass
class ExistenceReport:
    cond_i: bool
    cond_ii: bool
    cond_i_failures: PeriodicSet
    cond_ii_failures: PeriodicSet
    band: tuple[float, float]
    two_scale_residual: float
    alt_blocked: PeriodicSet
    alt_consistent: bool

    @property
    def equivalent(self) -> bool:
        return self.cond_i == self.cond_ii and self.cond_i_failures == self.cond_ii_failures

    def as_dict(self) -> dict:
        return {
            "cond_i": self.cond_i,
            "cond_ii": self.cond_ii,
            "equivalent": self.equivalent,
            "band": list(self.band),
            "cond_i_failures": [str(c) for c in self.cond_i_failures.cells()],
            "cond_ii_failures": [str(c) for c in self.cond_ii_failures.cells()],
            "two_scale_residual": self.two_scale_residual,
            "alt_filter_blocked": [str(c) for c in self.alt_blocked.cells()],
            "alt_filter_consistent": self.alt_consistent,
        }


def existence_conditions(phi: StepFunction, m: FilterSpec | StepFunction | None,
                         C: float, D: float, m_alt: FilterSpec | StepFunction | None = None,
                         tol: float = TOL) -> ExistenceReport:
    """Evaluate both existence conditions for a frame wavelet on every cell of ``Delta_2``.

    (i): ``m(sigma w)`` and ``m(sigma w + 0.1)`` do not vanish together;
    (ii): ``C/D <= |m(sigma w)|^2 + |m(sigma w + 0.1)|^2 <= D/C``.
    Also reports the residual of the two-term periodization identity and reruns
    (i) for a second refinement filter ``m_alt`` (by default ``m`` perturbed on
    the zero set of the periodization).
    """
    ph, m = _prepare(phi, m)
    lo, hi = _window(ph, m)
    t = _tables(ph, m, lo, hi)
    d = _deltas(t, tol)
    d2 = d.delta2.mask
    E = _blocked_mask(t, d, tol)
    s = np.abs(t.m_e) ** 2 + np.abs(t.m_o) ** 2
    band = (C / D, D / C)
    out_band = d2 & ((s < band[0] - tol) | (s > band[1] + tol))

    Pf = FilterSpec(periodization(ph))
    P_sig = Pf.compose_sigma().refine(hi=hi).values.real
    P_sig1 = Pf.shift(1).compose_sigma().refine(hi=hi).values.real
    two_scale = t.P - np.abs(t.m_e) ** 2 * P_sig - np.abs(t.m_o) ** 2 * P_sig1
    two_scale_res = float(np.max(np.abs(two_scale), initial=0.0))

    if m_alt is None:
        null = PeriodicSet.support(periodization(ph), tol)
        bump = (~null).refine(max(null.resolution, m.resolution)).indicator() * 0.5
        m_alt = FilterSpec(m.fn + bump)
    elif isinstance(m_alt, StepFunction):
        m_alt = FilterSpec(m_alt)
    alt_res = check_refinement(ph, m_alt)
    if alt_res > CHAIN_TOL:
        raise PreconditionError(f"alternative filter does not refine phi: residual {alt_res:.3e}")
    lo2, hi2 = _window(ph, m_alt)
    lo2, hi2 = min(lo, lo2), max(hi, hi2)
    t2 = _tables(ph, m_alt, lo2, hi2)
    E2 = PeriodicSet(2, hi2, _blocked_mask(t2, _deltas(t2, tol), tol))
    alt_consistent = (not E.any()) <= E2.is_empty()

    return ExistenceReport(not E.any(), not out_band.any(), PeriodicSet(2, hi, E),
                           PeriodicSet(2, hi, out_band), band, two_scale_res, E2, bool(alt_consistent))

"""Refinement filters, Parseval FMRA identities and the lift of a Parseval FMRA to an MRA."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .group import GroupElement, Side, VilenkinError
from .periodic import FilterSpec, PeriodicSet, compose_B, compose_sigma
from .shift_invariant import bracket, frame_report, periodization, spectrum
from .stepfn import TOL, StepFunction, max_abs_diff, periodic_extend, window_align
from .transform import hat, inverse_fourier

#: Tolerance for residuals that feed a later computation.
CHAIN_TOL = 1e-9


class NotInSpaceError(VilenkinError):
    """The function does not belong to the requested approximation space."""


class PreconditionError(VilenkinError):
    pass


class StrataError(VilenkinError):
    """The limit condition fails at the working resolution: some cells are never reached."""

    def __init__(self, message: str, cells: list[str]):
        super().__init__(message)
        self.cells = cells


def _as_filter(m) -> FilterSpec:
    return m if isinstance(m, FilterSpec) else FilterSpec(m)


def refinement_sides(phi: StepFunction, m: FilterSpec | StepFunction,
                     j: int = 1) -> tuple[StepFunction, StepFunction]:
    """``(phi^(B^j w), m(w) phi^(w))`` on a common dual window."""
    m = _as_filter(m)
    ph = hat(phi)
    left = ph.compose_auto(j)
    right = m.extend(ph.lo) * ph
    return window_align(left, right)


def check_refinement(phi: StepFunction, m: FilterSpec | StepFunction) -> float:
    """Largest cell residual of ``phi^(Bw) = m(w) phi^(w)``."""
    left, right = refinement_sides(phi, m)
    return max_abs_diff(left, right)


def from_filter(m: FilterSpec | StepFunction, phi: StepFunction, j: int = 1) -> StepFunction:
    """The primal ``f`` with ``f^(B^j w) = m(w) phi^(w)``."""
    m = _as_filter(m)
    ph = hat(phi)
    return inverse_fourier((m.extend(ph.lo) * ph).compose_auto(-j))


def minimal_filter(phi: StepFunction, f: StepFunction, j: int = 1,
                   tol: float = TOL) -> FilterSpec:
    """The filter ``[f^(B^j .), phi^] / P_phi`` on the spectrum of ``phi``, zero elsewhere.

    For a Parseval generator the division is by one on the spectrum.  Raises
    :class:`NotInSpaceError` when the resulting filter does not reproduce ``f``.
    """
    ph, fh = hat(phi), hat(f)
    P = periodization(ph)
    br = bracket(fh.compose_auto(j), ph)
    br, P = window_align(br, P)
    pv = P.values.real
    vals = np.where(pv > tol, br.values / np.where(pv > tol, pv, 1.0), 0.0)
    m = FilterSpec(StepFunction(ph.p, Side.DUAL, 0, br.hi, vals))
    left = fh.compose_auto(j)
    right = m.extend(ph.lo) * ph
    res = max_abs_diff(left, right)
    if res > CHAIN_TOL:
        raise NotInSpaceError(f"f is not in V_{j}: refinement residual {res:.3e}")
    return m


def lowpass_filter(phi: StepFunction) -> FilterSpec:
    return minimal_filter(phi, phi, 1)


def _zeta_sum(values_of) -> StepFunction:
    """``sum over zeta of values_of(zeta)`` for functions on ``U*``."""
    acc = None
    for f in values_of:
        acc = f if acc is None else acc + f
    return acc


def lowpass_identity(phi: StepFunction, m_phi: FilterSpec | StepFunction,
                     tol: float = TOL) -> float:
    """Largest residual of ``sum_zeta |m(w + 0.zeta)|^2 = 1_E(Bw)`` on ``U*``.

    ``E`` is the support of the periodization of ``phi``, which must be a Parseval generator.
    """
    m = _as_filter(m_phi)
    rep = frame_report(phi, tol)
    if not rep.parseval:
        raise PreconditionError("lowpass identity needs a Parseval frame generator")
    lhs = _zeta_sum(m.shift(z).fn.abs2() for z in range(m.p))
    rhs = compose_B(rep.support.indicator())
    return max_abs_diff(lhs, rhs)


def bracket_split_sides(f1, f2, m1, m2, phi) -> tuple[StepFunction, StepFunction]:
    m1, m2 = _as_filter(m1), _as_filter(m2)
    ph = hat(phi)
    lhs = compose_B(bracket(hat(f1), hat(f2)))
    P = FilterSpec(periodization(ph))
    rhs = _zeta_sum(m1.shift(z).fn * m2.shift(z).fn.conj() * P.shift(z).fn for z in range(ph.p))
    return window_align(lhs, rhs)


def bracket_split_check(f1: StepFunction, f2: StepFunction, m1, m2, phi: StepFunction) -> float:
    """Residual of ``[f1^, f2^](Bw) = sum_zeta m1 conj(m2) P_phi`` evaluated at ``w + 0.zeta``.

    Requires ``f_i^(Bw) = m_i(w) phi^(w)``.
    """
    for i, (f, m) in enumerate(((f1, m1), (f2, m2)), start=1):
        left = hat(f).compose_auto(1)
        right = _as_filter(m).extend(hat(phi).lo) * hat(phi)
        res = max_abs_diff(left, right)
        if res > CHAIN_TOL:
            raise PreconditionError(f"f{i} is not generated by m{i}: residual {res:.3e}")
    lhs, rhs = bracket_split_sides(f1, f2, m1, m2, phi)
    return max_abs_diff(lhs, rhs)


def _sigma_power(f: StepFunction, j: int) -> StepFunction:
    for _ in range(j):
        f = compose_sigma(f)
    return f


def limit_modulus(phi: StepFunction, j_max: int) -> list[float]:
    """For ``j = 0..j_max``: largest ``| |phi^(B^{-j} w)| - 1 |`` over cells ``w`` of ``U*``."""
    ph = hat(phi)
    g = ph.on_fundamental()
    out = []
    for j in range(j_max + 1):
        vals = np.abs(_sigma_power(g, j).values)
        out.append(float(np.max(np.abs(vals - 1.0))))
    return out


class ScalingKind(str, enum.Enum):
    MRA = "mra"
    PARSEVAL_FMRA = "parseval_fmra"


@dataclass
class ScalingReport:
    kind: ScalingKind
    periodization_ok: bool
    periodization_residual: float
    limit_ok: bool
    limit_deviations: list[float]
    refinement_ok: bool
    refinement_residual: float
    filter: FilterSpec | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.periodization_ok and self.limit_ok and self.refinement_ok

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "periodization_ok": self.periodization_ok,
            "periodization_residual": self.periodization_residual,
            "limit_ok": self.limit_ok,
            "limit_deviations": self.limit_deviations,
            "refinement_ok": self.refinement_ok,
            "refinement_residual": self.refinement_residual,
            "passed": self.passed,
        }


def scaling_checks(phi: StepFunction, kind: ScalingKind | str = ScalingKind.MRA,
                   tol: float = TOL) -> ScalingReport:
    """Check the scaling-function conditions for an MRA or a Parseval FMRA.

    The zero function fails every condition.
    """
    kind = ScalingKind(kind)
    ph = hat(phi)
    depth = max(ph.hi - ph.lo, 1)
    if ph.is_zero(tol):
        return ScalingReport(kind, False, 1.0, False, [1.0] * (depth + 1), False, float("inf"))
    P = periodization(ph).values.real
    if kind is ScalingKind.MRA:
        p_res = float(np.max(np.abs(P - 1.0)))
    else:
        p_res = float(np.max(np.minimum(np.abs(P), np.abs(P - 1.0))))
    devs = limit_modulus(ph, depth)
    try:
        m = minimal_filter(ph, ph, 1, tol)
        r_res, m_ok = check_refinement(ph, m), True
    except NotInSpaceError:
        m, m_ok = None, False
        r_res = float("inf")
    return ScalingReport(kind, p_res <= tol, p_res, devs[-1] <= tol, devs,
                         m_ok and r_res <= tol, r_res, m)


@dataclass
class MRALift:
    varphi: StepFunction
    varphi_hat: StepFunction = field(repr=False)
    m_varphi: FilterSpec
    strata: list[PeriodicSet]
    depth: np.ndarray = field(repr=False)
    resolution: int
    lowpass: FilterSpec = field(repr=False)
    refinement_residual: float = 0.0

    def strata_report(self) -> dict:
        cells = {}
        for i, j in enumerate(self.depth):
            c = StepFunction.zeros(self.varphi_hat.p, Side.DUAL, 0, self.resolution).coset(i)
            cells[str(c)] = int(j)
        return {
            "p": self.varphi_hat.p,
            "resolution": self.resolution,
            "max_depth": int(self.depth.max(initial=0)),
            "strata_measures": [str(s.measure) for s in self.strata],
            "depth": cells,
            "refinement_residual": self.refinement_residual,
        }


def _mask(s: PeriodicSet, r: int) -> np.ndarray:
    return s.refine(r).mask


def fmra_to_mra(phi: StepFunction, tol: float = TOL, max_depth: int | None = None) -> MRALift:
    """Lift a Parseval FMRA scaling function to an orthonormal MRA scaling function.

    On each cell ``w`` of ``U*`` the depth ``j(w)`` is the first ``j`` with a
    nonzero fiber at ``B^{-j} w``; the new transform carries that fiber, spread
    over the sublattice ``B^j`` of the dual lattice.  The search stops at
    ``max_depth`` (default: the number of window digits of the transform, which
    suffices for every refinable input) and raises :class:`StrataError` if
    some cell is still unreached.
    """
    ph = hat(phi)
    p = ph.p
    rep = frame_report(ph, tol)
    if not rep.parseval:
        raise PreconditionError("input does not generate a Parseval frame for its span")
    m = minimal_filter(ph, ph, 1, tol)

    P = periodization(ph)
    R = max(P.hi, 1)
    P = P.refine(hi=R)
    cap = max(ph.hi - ph.lo, 1) if max_depth is None else max_depth
    depth = np.full(p ** R, -1, dtype=np.int64)
    g = P
    for j in range(cap + 1):
        hit = (np.abs(g.refine(hi=R).values) > tol) & (depth < 0)
        depth[hit] = j
        if (depth >= 0).all():
            break
        g = compose_sigma(g)
    if (depth < 0).any():
        bad = [str(StepFunction.zeros(p, Side.DUAL, 0, R).coset(int(i)))
               for i in np.flatnonzero(depth < 0)]
        raise StrataError(f"limit condition unmet at resolution {R}: "
                          f"{len(bad)} cells of U* never reached within depth {cap}", bad)
    J = int(depth.max())
    strata = [PeriodicSet(p, R, depth == j) for j in range(J + 1)]

    lo, hi = min(ph.lo, 0) - J, max(ph.hi, R)
    out = np.zeros(p ** (hi - lo), dtype=np.complex128).reshape(p ** (-lo), p ** hi)
    for j, E in enumerate(strata):
        if E.is_empty():
            continue
        src = ph.compose_auto(-j).refine(lo, hi).values.reshape(p ** (-lo), p ** hi)
        cols = np.repeat(E.mask, p ** (hi - R))
        # lattice rows whose digits at indices -j+1..0 vanish: multiples of p**j
        rows = (np.arange(p ** (-lo)) % (p ** j)) == 0
        out[np.ix_(rows, cols)] = src[np.ix_(rows, cols)]
    vh = StepFunction(p, Side.DUAL, lo, hi, out.reshape(-1))

    eta = rep.support
    eta_B = eta.compose_B()
    inside = PeriodicSet(p, 1, np.arange(p) == 0)  # B^{-1} U*
    r2 = max(eta.resolution, eta_B.resolution, 1, m.resolution)
    e, eb, ins = _mask(eta, r2), _mask(eta_B, r2), _mask(inside, r2)
    case_m = e & eb
    case_one = (e & ~eb & ins) | (~e & ~eb & ins)
    mv = np.where(case_m, m.refine(r2).values, np.where(case_one, 1.0, 0.0))
    m_varphi = FilterSpec(StepFunction(p, Side.DUAL, 0, r2, mv))
    res = check_refinement(vh, m_varphi)
    return MRALift(inverse_fourier(vh), vh, m_varphi, strata, depth, R, m, res)

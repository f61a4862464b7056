"""Principal shift-invariant spaces: periodization, bracket, frame bounds, spectrum."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import DomainError, GroupElement, Side, VilenkinError, h_of
from .periodic import FilterSpec, PeriodicSet
from .stepfn import TOL, StepFunction, window_align
from .transform import hat, inverse_fourier

_LATTICE_FOR_SIDE = {Side.PRIMAL: "H", Side.DUAL: "H_perp"}


def bracket(f: StepFunction, g: StepFunction, lattice: str | None = None) -> StepFunction:
    """``[f, g](x) = sum_h f(x + h) conj(g(x + h))`` over the lattice, on the fundamental domain.

    ``lattice`` is ``"H"`` for primal functions and ``"H_perp"`` for dual ones;
    it defaults to the one matching the side.
    """
    if lattice is not None and _LATTICE_FOR_SIDE[f.side] != lattice:
        raise DomainError(f"lattice {lattice!r} does not act on the {f.side.value} side")
    a, b = window_align(f, g)
    vals = np.sum(a.lattice_matrix() * np.conj(b.lattice_matrix()), axis=0)
    return StepFunction(f.p, f.side, 0, max(a.hi, 0), vals)


def periodization(phi: StepFunction) -> StepFunction:
    """``P(w) = sum over the dual lattice of |phi^(w + h)|^2``, on ``U*``.

    ``phi`` may be given on the primal side or directly as its transform.
    """
    ph = hat(phi)
    vals = np.sum(np.abs(ph.lattice_matrix()) ** 2, axis=0)
    return StepFunction(ph.p, Side.DUAL, 0, max(ph.hi, 0), vals.astype(np.complex128))


@dataclass
class FrameReport:
    p: int
    periodization: StepFunction
    lower: float
    upper: float
    null_set: PeriodicSet
    support: PeriodicSet
    bessel: bool
    frame: bool
    parseval: bool
    orthonormal: bool
    tol: float = TOL

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "lower_bound": self.lower,
            "upper_bound": self.upper,
            "resolution": self.support.resolution,
            "null_set": [str(c) for c in self.null_set.cells()],
            "null_measure": str(self.null_set.measure),
            "spectrum": [str(c) for c in self.support.cells()],
            "spectrum_measure": str(self.support.measure),
            "bessel": self.bessel,
            "frame": self.frame,
            "parseval": self.parseval,
            "orthonormal": self.orthonormal,
        }


def frame_report(phi: StepFunction, tol: float = TOL) -> FrameReport:
    """Frame bounds of the lattice translates of ``phi`` for their closed span.

    The bounds are the extreme values of the periodization off its zero set.
    """
    P = periodization(phi)
    vals = P.values.real
    pos = vals > tol
    supp = PeriodicSet(P.p, P.hi, pos)
    null = ~supp
    if not pos.any():
        return FrameReport(P.p, P, 0.0, 0.0, null, supp, True, False, False, False, tol)
    lower, upper = float(vals[pos].min()), float(vals[pos].max())
    parseval = bool(np.all((np.abs(vals) <= tol) | (np.abs(vals - 1.0) <= tol)))
    orthonormal = bool(np.all(np.abs(vals - 1.0) <= tol))
    return FrameReport(P.p, P, lower, upper, null, supp, True, True, parseval, orthonormal, tol)


def spectrum(phi: StepFunction, tol: float = TOL) -> PeriodicSet:
    """Cells of ``U*`` where the periodization is positive."""
    return PeriodicSet.support(periodization(phi), tol)


def spectrum_from_fibers(phi: StepFunction, tol: float = TOL) -> PeriodicSet:
    """Cells of ``U*`` whose fiber has an entry of modulus above ``tol``."""
    M = hat(phi).lattice_matrix()
    r = round(np.log(M.shape[1]) / np.log(hat(phi).p))
    return PeriodicSet(hat(phi).p, r, np.any(np.abs(M) > tol, axis=0))


def e_set(phi: StepFunction, tol: float = TOL) -> StepFunction:
    """Indicator of the support of the periodization on a window of the whole dual group.

    Every lattice shift of the transform is summed explicitly, so this does not
    go through the fundamental-domain reduction used by :func:`periodization`.
    """
    ph = hat(phi)
    lo, hi = min(ph.lo, 0), max(ph.hi, 0)
    ph = ph.refine(lo, hi)
    acc = StepFunction.zeros(ph.p, Side.DUAL, lo, hi)
    for alpha in range(ph.p ** (-lo)):
        h = h_of(alpha, ph.p, Side.DUAL)
        # |phi^(w + h)|^2 with the shift wrapped inside the window: periodic on this window
        acc = acc + _wrapped_translate(ph, -h).abs2()
    return acc.map(lambda v: (np.abs(v) > tol).astype(np.complex128))


def _wrapped_translate(f: StepFunction, h: GroupElement) -> StepFunction:
    t = f.tensor()
    for j, d in h.digits:
        if f.lo < j <= f.hi:
            t = np.roll(t, d, axis=j - f.lo - 1)
    return StepFunction(f.p, f.side, f.lo, f.hi, t.reshape(-1))


def spectrum_from_e_set(phi: StepFunction, tol: float = TOL) -> PeriodicSet:
    return PeriodicSet.support(e_set(phi, tol).on_fundamental(), 0.5)


@dataclass
class Fiber:
    base: GroupElement
    lattice: tuple[GroupElement, ...]
    values: np.ndarray = field(repr=False)

    @property
    def entries(self) -> dict[GroupElement, complex]:
        return {h: complex(v) for h, v in zip(self.lattice, self.values) if v != 0}

    @property
    def norm2(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def is_zero(self, tol: float = TOL) -> bool:
        return bool(np.all(np.abs(self.values) <= tol))


def fiber(f: StepFunction, omega: GroupElement) -> Fiber:
    """The values ``f^(omega + h)`` over the representable dual lattice, for ``omega`` in ``U*``."""
    if omega.side is not Side.DUAL:
        raise DomainError("fiber base point must be a dual element")
    if not omega.in_ball(0):
        raise VilenkinError(f"fiber base point {omega} is not in U*")
    fh = hat(f)
    fh = fh.refine(min(fh.lo, 0), max(fh.hi, 0, omega.top if omega.digits else 0))
    M = fh.lattice_matrix()
    col = StepFunction.zeros(fh.p, Side.DUAL, 0, fh.hi).index_of(omega)
    lattice = tuple(h_of(a, fh.p, Side.DUAL) for a in range(M.shape[0]))
    return Fiber(omega, lattice, M[:, col].copy())


def synthesize(m: FilterSpec | StepFunction, phi: StepFunction) -> StepFunction:
    """The primal function whose transform is ``m * phi^`` with ``m`` extended periodically."""
    if isinstance(m, StepFunction):
        m = FilterSpec(m)
    ph = hat(phi)
    prod = m.extend(ph.lo) * ph
    return inverse_fourier(prod)

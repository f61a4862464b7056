"""Lattice-periodic sets and filters on the dual group.

Both are described by their restriction to the fundamental domain ``U*``
at some resolution ``r`` (a dual window ``[0, r]``) and are extended to the
rest of the dual group by periodicity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .group import CosetId, DomainError, GroupElement, Side, VilenkinError
from .stepfn import TOL, StepFunction, periodic_extend, shift_fundamental


def _as_fundamental(f: StepFunction) -> StepFunction:
    if f.side is not Side.DUAL:
        raise DomainError("periodic objects live on the dual group")
    return f if f.lo == 0 else f.on_fundamental()


def compose_B(f: StepFunction) -> StepFunction:
    """For periodic ``f`` given on ``U*``: the periodic function ``w -> f(Bw)`` on ``U*``."""
    f = _as_fundamental(f)
    return periodic_extend(f, -1).compose_auto(1)


def compose_sigma(f: StepFunction) -> StepFunction:
    """For ``f`` given on ``U*``: ``w -> f(B^{-1} w)`` restricted to ``U*``."""
    f = _as_fundamental(f)
    return f.compose_auto(-1).on_fundamental()


@dataclass(frozen=True, eq=False)
class PeriodicSet:
    """A lattice-periodic subset of the dual group, stored as a cell mask on ``U*``."""

    p: int
    resolution: int
    mask: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mask, dtype=bool).reshape(-1)
        if m.size != self.p ** self.resolution:
            raise VilenkinError("mask size does not match the resolution")
        m.flags.writeable = False
        object.__setattr__(self, "mask", m)

    @classmethod
    def empty(cls, p: int, resolution: int = 0) -> "PeriodicSet":
        return cls(p, resolution, np.zeros(p ** resolution, dtype=bool))

    @classmethod
    def full(cls, p: int, resolution: int = 0) -> "PeriodicSet":
        return cls(p, resolution, np.ones(p ** resolution, dtype=bool))

    @classmethod
    def support(cls, f: StepFunction, tol: float = TOL) -> "PeriodicSet":
        """Cells of ``U*`` where ``|f| > tol``."""
        f = _as_fundamental(f)
        return cls(f.p, f.hi, np.abs(f.values) > tol)

    @classmethod
    def from_cells(cls, p: int, resolution: int, cells) -> "PeriodicSet":
        mask = np.zeros(p ** resolution, dtype=bool)
        for c in cells:
            if isinstance(c, str):
                c = GroupElement.parse(c, p, Side.DUAL)
            if isinstance(c, GroupElement):
                c = CosetId.of(c.split()[1], 0, resolution)
            mask[c.index] = True
        return cls(p, resolution, mask)

    def refine(self, resolution: int) -> "PeriodicSet":
        if resolution < self.resolution:
            raise VilenkinError("cannot lower the resolution of a set")
        return PeriodicSet(self.p, resolution, np.repeat(self.mask, self.p ** (resolution - self.resolution)))

    def _pair(self, other: "PeriodicSet") -> tuple[np.ndarray, np.ndarray, int]:
        if self.p != other.p:
            raise DomainError("sets over different primes")
        r = max(self.resolution, other.resolution)
        return self.refine(r).mask, other.refine(r).mask, r

    def __and__(self, other: "PeriodicSet") -> "PeriodicSet":
        a, b, r = self._pair(other)
        return PeriodicSet(self.p, r, a & b)

    def __or__(self, other: "PeriodicSet") -> "PeriodicSet":
        a, b, r = self._pair(other)
        return PeriodicSet(self.p, r, a | b)

    def __sub__(self, other: "PeriodicSet") -> "PeriodicSet":
        a, b, r = self._pair(other)
        return PeriodicSet(self.p, r, a & ~b)

    def __invert__(self) -> "PeriodicSet":
        return PeriodicSet(self.p, self.resolution, ~self.mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicSet):
            return NotImplemented
        a, b, _ = self._pair(other)
        return bool(np.array_equal(a, b))

    __hash__ = None

    def issubset(self, other: "PeriodicSet") -> bool:
        a, b, _ = self._pair(other)
        return bool(np.all(~a | b))

    def isdisjoint(self, other: "PeriodicSet") -> bool:
        a, b, _ = self._pair(other)
        return not bool(np.any(a & b))

    @property
    def count(self) -> int:
        return int(self.mask.sum())

    @property
    def measure(self) -> Fraction:
        return Fraction(self.count, self.p ** self.resolution)

    def is_empty(self) -> bool:
        return not self.mask.any()

    def __contains__(self, w: GroupElement) -> bool:
        frac = w.split()[1]
        f = self.indicator()
        return f.evaluate(frac) != 0

    def indicator(self) -> StepFunction:
        return StepFunction(self.p, Side.DUAL, 0, self.resolution, self.mask.astype(np.complex128))

    def cells(self) -> Iterator[CosetId]:
        for i in np.flatnonzero(self.mask):
            yield CosetId.from_index(int(i), self.p, Side.DUAL, 0, self.resolution)

    def compose_B(self) -> "PeriodicSet":
        """The set ``B^{-1}(S + lattice)`` intersected with ``U*``."""
        return PeriodicSet.support(compose_B(self.indicator()), 0.5)

    def __repr__(self) -> str:
        return f"PeriodicSet(p={self.p}, r={self.resolution}, cells={self.count}/{self.mask.size})"


class FilterSpec:
    """A lattice-periodic function on the dual group, given by its values on ``U*``."""

    def __init__(self, fn: StepFunction):
        self.fn = _as_fundamental(fn)

    @classmethod
    def constant(cls, c: complex, p: int, resolution: int = 0) -> "FilterSpec":
        return cls(StepFunction.constant(c, p, Side.DUAL, 0, resolution))

    @classmethod
    def from_values(cls, p: int, values) -> "FilterSpec":
        vals = np.asarray(values, dtype=np.complex128).reshape(-1)
        r = round(np.log(vals.size) / np.log(p))
        return cls(StepFunction(p, Side.DUAL, 0, r, vals))

    @property
    def p(self) -> int:
        return self.fn.p

    @property
    def resolution(self) -> int:
        return self.fn.hi

    @property
    def values(self) -> np.ndarray:
        return self.fn.values

    def refine(self, resolution: int) -> "FilterSpec":
        return FilterSpec(self.fn.refine(hi=resolution))

    def __call__(self, w: GroupElement) -> complex:
        return self.fn.evaluate(w.split()[1])

    def extend(self, lo: int, hi: int | None = None) -> StepFunction:
        """Periodic extension as a step function on the dual window ``[lo, max(hi, r)]``."""
        f = periodic_extend(self.fn, min(lo, 0))
        if hi is not None and hi > f.hi:
            f = f.refine(hi=hi)
        return f

    def shift(self, zeta: int) -> "FilterSpec":
        """``w -> m(w + 0.zeta)``."""
        f = self.fn if self.fn.hi >= 1 else self.fn.refine(hi=1)
        return FilterSpec(shift_fundamental(f, zeta))

    def compose_B(self) -> "FilterSpec":
        return FilterSpec(compose_B(self.fn))

    def compose_sigma(self) -> StepFunction:
        return compose_sigma(self.fn)

    def __repr__(self) -> str:
        return f"FilterSpec(p={self.p}, r={self.resolution})"

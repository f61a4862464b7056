"""Finite-resolution step functions on the group and its dual.

A :class:`StepFunction` with window ``[lo, hi]`` is supported on the ball
``U_lo`` and constant on cosets of ``U_hi``.  Coefficients are kept dense,
one per coset, in lambda order: the flat index of the coset containing ``x``
is ``p**hi * lambda(x)``.  Each cell has Haar measure ``p**-hi``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

import numpy as np

from .group import CosetId, DomainError, GroupElement, Side, VilenkinError, check_prime

#: Largest table a window may allocate.
MAX_CELLS = 1 << 24

#: Default comparison tolerance for complex coefficients.
TOL = 1e-12


def _ncells(p: int, lo: int, hi: int) -> int:
    if lo > hi:
        raise VilenkinError(f"window needs lo <= hi, got [{lo}, {hi}]")
    n = p ** (hi - lo)
    if n > MAX_CELLS:
        raise VilenkinError(f"window [{lo}, {hi}] at p={p} needs {n} cells (limit {MAX_CELLS})")
    return n


@dataclass(frozen=True, eq=False)
class StepFunction:
    p: int
    side: Side
    lo: int
    hi: int
    values: np.ndarray

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "side", Side(self.side))
        n = _ncells(self.p, self.lo, self.hi)
        vals = np.ascontiguousarray(self.values, dtype=np.complex128).reshape(-1)
        if vals.size != n:
            raise VilenkinError(f"table has {vals.size} entries, window needs {n}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, p: int, side: Side | str, lo: int = 0, hi: int = 0) -> "StepFunction":
        return cls(p, Side(side), lo, hi, np.zeros(_ncells(p, lo, hi), dtype=np.complex128))

    @classmethod
    def constant(cls, c: complex, p: int, side: Side | str, lo: int = 0, hi: int = 0) -> "StepFunction":
        return cls(p, Side(side), lo, hi, np.full(_ncells(p, lo, hi), c, dtype=np.complex128))

    @classmethod
    def from_cells(cls, p: int, side: Side | str, lo: int, hi: int,
                   cells: Mapping[GroupElement | CosetId | str, complex]) -> "StepFunction":
        vals = np.zeros(_ncells(p, lo, hi), dtype=np.complex128)
        for key, v in cells.items():
            if isinstance(key, str):
                key = GroupElement.parse(key, p, side)
            if isinstance(key, GroupElement):
                if key.side != Side(side) or key.p != p:
                    raise DomainError(f"cell {key!r} does not belong to p={p}/{Side(side).value}")
                if key.digits and key.top > hi:
                    raise VilenkinError(f"cell {key} is finer than window [{lo}, {hi}]")
                key = CosetId.of(key, lo, hi)
            if (key.lo, key.hi) != (lo, hi):
                raise VilenkinError("coset window differs from the function window")
            vals[key.index] = v
        return cls(p, Side(side), lo, hi, vals)

    @classmethod
    def from_function(cls, p: int, side: Side | str, lo: int, hi: int,
                      fn: Callable[[GroupElement], complex]) -> "StepFunction":
        n = _ncells(p, lo, hi)
        vals = np.array([fn(CosetId.from_index(i, p, side, lo, hi).representative)
                         for i in range(n)], dtype=np.complex128)
        return cls(p, Side(side), lo, hi, vals)

    # -- views --------------------------------------------------------------

    @property
    def ndigits(self) -> int:
        return self.hi - self.lo

    @property
    def cell_measure(self) -> float:
        return float(self.p) ** (-self.hi)

    def tensor(self) -> np.ndarray:
        """Coefficients as a ``(p,)*ndigits`` array; axis ``i`` is the digit at index ``lo+1+i``."""
        return self.values.reshape((self.p,) * self.ndigits)

    def cells(self, include_zero: bool = False) -> Iterator[tuple[CosetId, complex]]:
        idx = range(self.values.size) if include_zero else np.flatnonzero(self.values)
        for i in idx:
            yield CosetId.from_index(int(i), self.p, self.side, self.lo, self.hi), complex(self.values[i])

    def coset(self, index: int) -> CosetId:
        return CosetId.from_index(index, self.p, self.side, self.lo, self.hi)

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.values) <= tol))

    def _like(self, values: np.ndarray, lo: int | None = None, hi: int | None = None) -> "StepFunction":
        return StepFunction(self.p, self.side, self.lo if lo is None else lo,
                            self.hi if hi is None else hi, values)

    # -- evaluation -----------------------------------------------------------

    def index_of(self, x: GroupElement) -> int | None:
        if x.p != self.p or x.side != self.side:
            raise DomainError("point and function live on different groups")
        if not x.in_ball(self.lo):
            return None
        d = x.as_dict()
        i = 0
        for j in range(self.lo + 1, self.hi + 1):
            i = i * self.p + d.get(j, 0)
        return i

    def evaluate(self, x: GroupElement) -> complex:
        i = self.index_of(x)
        return 0j if i is None else complex(self.values[i])

    __call__ = evaluate

    # -- window changes -------------------------------------------------------

    def refine(self, lo: int | None = None, hi: int | None = None) -> "StepFunction":
        """Re-express on a larger window ``[lo, hi]``; values at every point are unchanged."""
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        if lo > self.lo or hi < self.hi:
            raise VilenkinError(f"refine cannot shrink [{self.lo}, {self.hi}] to [{lo}, {hi}]")
        if (lo, hi) == (self.lo, self.hi):
            return self
        _ncells(self.p, lo, hi)
        vals = np.repeat(self.values, self.p ** (hi - self.hi))
        if lo < self.lo:
            pad = np.zeros(vals.size * (self.p ** (self.lo - lo) - 1), dtype=np.complex128)
            vals = np.concatenate([vals, pad])
        return self._like(vals, lo, hi)

    def restrict(self, lo: int) -> "StepFunction":
        """Multiply by the indicator of ``U_lo`` (``lo >= self.lo``) and shrink the window."""
        if lo < self.lo:
            return self.refine(lo=lo)
        if lo > self.hi:
            return self.refine(hi=lo).restrict(lo)
        n = self.p ** (self.hi - lo)
        return self._like(self.values[:n], lo, self.hi)

    def coarsen(self, hi: int, tol: float = TOL) -> "StepFunction":
        """Drop resolution to ``hi``; the function must already be constant on ``U_hi`` cosets."""
        if hi >= self.hi:
            return self.refine(hi=hi)
        lo = min(self.lo, hi)
        f = self.refine(lo=lo)
        block = f.values.reshape(-1, self.p ** (self.hi - hi))
        if block.shape[1] > 1 and np.max(np.abs(block - block[:, :1])) > tol:
            raise VilenkinError(f"function is not constant on level-{hi} cosets")
        return StepFunction(self.p, self.side, lo, hi, block[:, 0].copy())

    def simplify(self, tol: float = 0.0) -> "StepFunction":
        """Smallest window representing the same function (up to ``tol``)."""
        f = self
        while f.hi > f.lo:
            try:
                f = f.coarsen(f.hi - 1, tol)
            except VilenkinError:
                break
        while f.lo < f.hi:
            n = f.p ** (f.hi - f.lo - 1)
            if np.max(np.abs(f.values[n:]), initial=0.0) > tol:
                break
            f = f._like(f.values[:n], f.lo + 1, f.hi)
        return f

    # -- arithmetic ---------------------------------------------------------

    def _binary(self, other, op) -> "StepFunction":
        if isinstance(other, StepFunction):
            a, b = window_align(self, other)
            return a._like(op(a.values, b.values))
        return self._like(op(self.values, other))

    def __add__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self._binary(other, np.add)

    def __sub__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self._binary(other, np.subtract)

    def __mul__(self, other):
        return self._binary(other, np.multiply)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, StepFunction):
            return NotImplemented
        return self._like(self.values / other)

    def __neg__(self):
        return self._like(-self.values)

    def conj(self) -> "StepFunction":
        return self._like(np.conj(self.values))

    def abs2(self) -> "StepFunction":
        return self._like(np.abs(self.values) ** 2)

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> "StepFunction":
        return self._like(fn(self.values))

    # -- measure ------------------------------------------------------------

    def integral(self) -> complex:
        return complex(self.values.sum() * self.cell_measure)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.cell_measure))

    # -- group actions ------------------------------------------------------

    def translate(self, h: GroupElement) -> "StepFunction":
        """``x -> f(x - h)``."""
        if h.p != self.p or h.side != self.side:
            raise DomainError("translation element lives on a different group")
        lo = self.lo if h.is_zero else min(self.lo, h.k - 1)
        f = self.refine(lo=lo)
        t = f.tensor()
        for j, d in h.digits:
            if j <= f.hi:
                t = np.roll(t, d, axis=j - f.lo - 1)
        return f._like(t.reshape(-1))

    def compose_auto(self, k: int) -> "StepFunction":
        """``x -> f(A^k x)`` (the dual automorphism on the dual side); a window relabel."""
        return self._like(self.values, self.lo + k, self.hi + k)

    def dilate(self, j: int) -> "StepFunction":
        """Unitary dilation ``x -> p^{j/2} f(A^j x)``."""
        return self.compose_auto(j) * (float(self.p) ** (j / 2))

    # -- lattice structure ----------------------------------------------------

    def lattice_matrix(self) -> np.ndarray:
        """Rows indexed by lattice elements (lambda order), columns by fundamental-domain cells.

        The lattice is H on the primal side and its annihilator on the dual side;
        in both cases it is the set of digit sequences vanishing at positive
        indices, and the fundamental domain is the ball ``U_0``.
        """
        f = self.refine(min(self.lo, 0), max(self.hi, 0))
        return f.values.reshape(self.p ** (-f.lo), self.p ** f.hi)

    def on_fundamental(self) -> "StepFunction":
        """Restriction to the fundamental domain ``U_0``, window ``[0, max(hi, 0)]``."""
        return self.restrict(0) if self.lo <= 0 else self.refine(lo=0)

    def __repr__(self) -> str:
        return (f"StepFunction(p={self.p}, side={self.side.value}, window=[{self.lo}, {self.hi}], "
                f"nonzero={np.count_nonzero(self.values)})")


def window_align(f: StepFunction, g: StepFunction) -> tuple[StepFunction, StepFunction]:
    if f.p != g.p or f.side != g.side:
        raise DomainError(f"cannot align p={f.p}/{f.side.value} with p={g.p}/{g.side.value}")
    lo, hi = min(f.lo, g.lo), max(f.hi, g.hi)
    return f.refine(lo, hi), g.refine(lo, hi)


def pointwise(f: StepFunction, g: StepFunction, op: str) -> StepFunction:
    ops = {"add": np.add, "mul": np.multiply, "sub": np.subtract}
    if op not in ops:
        raise VilenkinError(f"unknown pointwise op {op!r}")
    return f._binary(g, ops[op])


def scale(f: StepFunction, c: complex) -> StepFunction:
    return f * c


def inner_product(f: StepFunction, g: StepFunction) -> complex:
    a, b = window_align(f, g)
    return complex(np.vdot(b.values, a.values) * a.cell_measure)


def norm(f: StepFunction) -> float:
    return f.norm()


def max_abs_diff(f: StepFunction, g: StepFunction) -> float:
    a, b = window_align(f, g)
    return float(np.max(np.abs(a.values - b.values), initial=0.0))


def allclose(f: StepFunction, g: StepFunction, tol: float = TOL) -> bool:
    return max_abs_diff(f, g) <= tol


def indicator(c: CosetId) -> StepFunction:
    vals = np.zeros(_ncells(c.p, c.lo, c.hi), dtype=np.complex128)
    vals[c.index] = 1.0
    return StepFunction(c.p, c.side, c.lo, c.hi, vals)


def ball(p: int, side: Side | str, level: int) -> StepFunction:
    """Indicator of ``U_level`` (or ``U*_level``)."""
    return StepFunction.constant(1.0, p, side, level, level)


def evaluate(f: StepFunction, x: GroupElement) -> complex:
    return f.evaluate(x)


def translate(f: StepFunction, h: GroupElement) -> StepFunction:
    return f.translate(h)


def dilate(f: StepFunction, j: int) -> StepFunction:
    return f.dilate(j)


def periodic_extend(f: StepFunction, lo: int) -> StepFunction:
    """Extend a function given on ``U_0`` (window ``[0, r]``) periodically over the lattice.

    The result has window ``[lo, r]`` for ``lo <= 0`` and equals ``f(x mod lattice)``
    at every point whose lattice digits lie above ``lo``.
    """
    if f.lo != 0:
        f = f.on_fundamental()
    if lo > 0:
        raise VilenkinError("periodic extension needs lo <= 0")
    return StepFunction(f.p, f.side, lo, f.hi, np.tile(f.values, f.p ** (-lo)))


def shift_fundamental(f: StepFunction, zeta: int) -> StepFunction:
    """For ``f`` on ``U_0`` (window ``[0, r]``), return ``w -> f(w + 0.zeta)``."""
    if f.lo != 0:
        raise VilenkinError("expected a function on the fundamental domain")
    if f.hi < 1:
        return f
    t = np.roll(f.tensor(), -zeta, axis=0)
    return f._like(t.reshape(-1))

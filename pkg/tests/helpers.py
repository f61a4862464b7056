"""Instances and generators shared by the tests."""
from __future__ import annotations

import numpy as np

from vilenkin.group import CosetId, GroupElement, Side, character
from vilenkin.stepfn import StepFunction, ball
from vilenkin.transform import inverse_fourier


def haar(p: int = 2) -> StepFunction:
    return ball(p, Side.PRIMAL, 0)


def halfband() -> StepFunction:
    return inverse_fourier(ball(2, Side.DUAL, 1))


def blocked() -> StepFunction:
    """Parseval FMRA with transform 1_S, S given by (w_1, w_2) in {00, 01, 11}."""
    return inverse_fourier(StepFunction(2, Side.DUAL, 0, 2, [1, 1, 0, 1]))


def weighted_haar(g) -> StepFunction:
    """Transform ``g * 1_{U*}`` with ``g`` a positive table on ``U*``."""
    g = np.asarray(g, dtype=float)
    r = round(np.log2(g.size))
    return inverse_fourier(StepFunction(2, Side.DUAL, 0, r, g))


def random_step(rng, p: int, side="primal", lo=None, hi=None, sparsity: float = 0.0) -> StepFunction:
    if lo is None:
        lo = int(rng.integers(-2, 1))
    if hi is None:
        hi = lo + int(rng.integers(0, 4 if p == 2 else 3))
    n = p ** (hi - lo)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if sparsity:
        v[rng.random(n) < sparsity] = 0
    return StepFunction(p, side, lo, hi, v)


def random_parseval_hat(rng, p: int, lo: int, r: int, full: bool = False) -> StepFunction:
    """Transform with a unit-norm fiber on a random set of cells of ``U*`` (all cells if ``full``)."""
    rows, cols = p ** (-lo), p ** r
    M = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    M /= np.linalg.norm(M, axis=0)
    if not full:
        keep = rng.random(cols) < 0.6
        keep[rng.integers(cols)] = True
        M[:, ~keep] = 0
    return StepFunction(p, Side.DUAL, lo, r, M.reshape(-1))


def sigma_closed_set(rng, p: int, r: int) -> np.ndarray:
    """Random cell mask on ``U*`` containing the cell at 0 and closed under ``B^{-1}``."""
    mask = rng.random(p ** r) < 0.4
    mask[0] = True
    while True:
        # B^{-1} w prepends a zero digit: index i at resolution r maps to i // p
        new = mask.copy()
        new[np.flatnonzero(mask) // p] = True
        if np.array_equal(new, mask):
            return mask
        mask = new


def oracle_fourier(f: StepFunction) -> np.ndarray:
    """Transform table by summing exact characters over the cells of ``f``."""
    out_lo, out_hi = -f.hi, -f.lo
    n = f.p ** (out_hi - out_lo)
    cells = [(c.representative, v) for c, v in f.cells()]
    out = np.zeros(n, dtype=complex)
    for i in range(n):
        w = CosetId.from_index(i, f.p, Side.DUAL, out_lo, out_hi).representative
        out[i] = sum(v * np.conj(character(x, w)) for x, v in cells) * f.cell_measure
    return out


def element(text: str, p: int = 2, side="dual") -> GroupElement:
    return GroupElement.parse(text, p, side)

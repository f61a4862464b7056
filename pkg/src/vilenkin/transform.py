"""Fourier transform between step functions on the group and on its dual.

``fourier(f)(w) = integral f(x) conj(chi(x, w)) dmu(x)``.  A function on the
primal window ``[lo, hi]`` transforms to the dual window ``[-hi, -lo]``; the
character pairs digit ``j`` of ``x`` with digit ``1 - j`` of ``w``, so the
transform is a p-point DFT along every digit axis followed by an axis
reversal.

The butterfly runs in a compiled extension when it is available and falls
back to numpy otherwise.  Set ``VILENKIN_BACKEND=python`` to force the
fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _fallback
from .group import DomainError, Side
from .stepfn import StepFunction

try:
    from . import _kernel
except ImportError:  # extension not built
    _kernel = None

_BACKENDS = {"python": _fallback.tensor_dft}
if _kernel is not None:
    _BACKENDS["compiled"] = _kernel.tensor_dft


def _default_backend() -> str:
    want = os.environ.get("VILENKIN_BACKEND", "auto")
    if want == "auto":
        return "compiled" if "compiled" in _BACKENDS else "python"
    if want not in _BACKENDS:
        raise ImportError(f"VILENKIN_BACKEND={want!r} is not available; have {sorted(_BACKENDS)}")
    return want


BACKEND = _default_backend()


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def _run(f: StepFunction, sign: int, backend: str | None) -> StepFunction:
    kernel = _BACKENDS[backend or BACKEND]
    n = f.ndigits
    a = np.array(f.values, dtype=np.complex128, copy=True)
    kernel(a, f.p, n, sign)
    if n > 1:
        a = a.reshape((f.p,) * n).transpose(tuple(range(n - 1, -1, -1))).reshape(-1)
    a *= f.cell_measure
    return StepFunction(f.p, f.side.other, -f.hi, -f.lo, a)


def fourier(f: StepFunction, backend: str | None = None) -> StepFunction:
    if f.side is not Side.PRIMAL:
        raise DomainError("fourier expects a function on the primal group")
    return _run(f, -1, backend)


def inverse_fourier(F: StepFunction, backend: str | None = None) -> StepFunction:
    if F.side is not Side.DUAL:
        raise DomainError("inverse_fourier expects a function on the dual group")
    return _run(F, +1, backend)


def hat(f: StepFunction) -> StepFunction:
    """Fourier side of ``f``: transform a primal function, pass a dual one through."""
    return fourier(f) if f.side is Side.PRIMAL else f


def _digit_table(indices: np.ndarray, p: int, n: int) -> np.ndarray:
    out = np.empty((indices.size, n), dtype=np.int64)
    rest = indices.astype(np.int64)
    for i in range(n - 1, -1, -1):
        rest, out[:, i] = np.divmod(rest, p)
    return out


def slow_fourier(f: StepFunction, cells: np.ndarray | None = None, *,
                 inverse: bool = False, chunk: int = 1 << 14):
    """Direct summation of the character integral, one output cell at a time.

    With ``cells`` (flat indices into the output window) only those values are
    returned, as an array; otherwise the full transformed function.
    """
    want = Side.DUAL if inverse else Side.PRIMAL
    if f.side is not want:
        raise DomainError(f"slow transform expects a {want.value} function")
    p, n = f.p, f.ndigits
    out_cells = np.arange(p ** n) if cells is None else np.asarray(cells, dtype=np.int64)
    # output digit a sits at index -hi+1+a and pairs with input digit n-1-a
    paired = _digit_table(out_cells, p, n)[:, ::-1]
    src = np.flatnonzero(f.values)
    sign = 1 if inverse else -1
    roots = np.exp(sign * 2j * np.pi * np.arange(p) / p)
    roots[0] = 1.0
    if p == 2:
        roots[1] = -1.0
    if p == 2 and n <= 62:
        acc = _slow_dyadic(f, src, paired)
    else:
        acc = _slow_generic(f, src, paired, roots, chunk)
    acc *= f.cell_measure
    if cells is not None:
        return acc
    return StepFunction(p, f.side.other, -f.hi, -f.lo, acc)


def _parity_fold(v: np.ndarray) -> np.ndarray:
    for s in (32, 16, 8, 4, 2, 1):
        v = v ^ (v >> s)
    return v & 1


def _parity(v: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):  # numpy >= 2.0
        return np.bitwise_count(v) & 1
    return _parity_fold(v)


def _slow_dyadic(f: StepFunction, src: np.ndarray, paired: np.ndarray) -> np.ndarray:
    # axis i of the input is bit n-1-i of the flat index; the character is
    # (-1)^popcount(index & mask) with the mask built from the paired output digits
    n = f.ndigits
    weights = np.left_shift(np.int64(1), np.arange(n - 1, -1, -1, dtype=np.int64))
    masks = paired.astype(np.int64) @ weights
    v = f.values[src]
    re, im = np.ascontiguousarray(v.real), np.ascontiguousarray(v.imag)
    acc = np.empty(masks.size, dtype=np.complex128)
    for k, mask in enumerate(masks):
        sgn = 1.0 - 2.0 * _parity(src & mask)
        acc[k] = complex(re @ sgn, im @ sgn)
    return acc


def _slow_generic(f, src, paired, roots, chunk) -> np.ndarray:
    p, n = f.p, f.ndigits
    # digit products are small integers, so a float matmul is exact and runs on BLAS
    paired_f = paired.T.astype(np.float64)
    acc = np.zeros(paired.shape[0], dtype=np.complex128)
    for s in range(0, src.size, chunk):
        idx = src[s:s + chunk]
        expo = np.mod(_digit_table(idx, p, n).astype(np.float64) @ paired_f, p)
        v = f.values[idx]
        for k in range(p):
            acc += roots[k] * (v @ (expo == k).astype(np.float64))
    return acc

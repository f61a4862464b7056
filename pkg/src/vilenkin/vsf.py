"""Text interchange format for step functions.

::

    vsf1 p=2 side=primal window=0:1
    .0 1.0 0.0
    .1 0.5 -0.25

One line per nonzero cell in lambda order, ``<digit-string> <re> <im>``.
Cells that are not listed are zero.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import IO

import numpy as np

from .group import CosetId, GroupElement, Side, VilenkinError, check_prime
from .stepfn import MAX_CELLS, StepFunction

MAGIC = "vsf1"
_HEADER = re.compile(r"^vsf1 p=(\d+) side=(primal|dual) window=(-?\d+):(-?\d+)$")


class FormatError(VilenkinError):
    """Malformed vsf1 text."""


def _num(x: float) -> str:
    # repr of a Python float round-trips exactly
    return repr(float(x))


def dumps(f: StepFunction) -> str:
    lines = [f"{MAGIC} p={f.p} side={f.side.value} window={f.lo}:{f.hi}"]
    for i in np.flatnonzero(f.values):
        v = f.values[i]
        lines.append(f"{f.coset(int(i))} {_num(v.real)} {_num(v.imag)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> StepFunction:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise FormatError("empty input")
    m = _HEADER.match(rows[0])
    if m is None:
        raise FormatError(f"bad header: {rows[0]!r}")
    p, side, lo, hi = int(m[1]), Side(m[2]), int(m[3]), int(m[4])
    try:
        check_prime(p)
    except VilenkinError as e:
        raise FormatError(str(e)) from None
    if lo > hi:
        raise FormatError(f"window {lo}:{hi} has lo > hi")
    if p ** (hi - lo) > MAX_CELLS:
        raise FormatError(f"window {lo}:{hi} exceeds the cell limit")
    vals = np.zeros(p ** (hi - lo), dtype=np.complex128)
    seen = set()
    for n, ln in enumerate(rows[1:], start=2):
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"line {n}: expected '<cell> <re> <im>', got {ln!r}")
        try:
            x = GroupElement.parse(parts[0], p, side)
            re_, im_ = float(parts[1]), float(parts[2])
        except ValueError as e:
            raise FormatError(f"line {n}: {e}") from None
        if any(not lo < j <= hi for j, _ in x.digits):
            raise FormatError(f"line {n}: cell {parts[0]} has digits outside window {lo}:{hi}")
        i = CosetId.of(x, lo, hi).index
        if i in seen:
            raise FormatError(f"line {n}: duplicate cell {parts[0]}")
        seen.add(i)
        vals[i] = complex(re_, im_)
    return StepFunction(p, side, lo, hi, vals)


def load(src: str | Path | IO[str]) -> StepFunction:
    if hasattr(src, "read"):
        return loads(src.read())
    try:
        return loads(Path(src).read_text())
    except UnicodeDecodeError as e:
        raise FormatError(f"{src}: not a text file ({e})") from None


def dump(f: StepFunction, dst: str | Path | IO[str]) -> None:
    if hasattr(dst, "write"):
        dst.write(dumps(f))
    else:
        Path(dst).write_text(dumps(f))

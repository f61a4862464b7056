"""Command line front end: ``vilenkin transform|analyze|wavelet|mra-lift``.

Exit codes: 0 success, 1 certificate or lift check failed, 2 unreadable input
or bad arguments, 3 oracle mismatch, 4 empty support, 5 blocked set,
6 wavelet requested for p != 2, 7 strata do not cover ``U*``,
8 input is not a Parseval frame generator.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import vsf
from .fmra import PreconditionError, StrataError, fmra_to_mra
from .group import DomainError, Side, VilenkinError
from .periodic import FilterSpec
from .shift_invariant import frame_report, periodization
from .stepfn import TOL, StepFunction
from .transform import fourier, inverse_fourier, slow_fourier
from .wavelet2 import BlockedSetError, construct_wavelet, existence_conditions

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_ORACLE = 3
EXIT_EMPTY = 4
EXIT_BLOCKED = 5
EXIT_NOT_DYADIC = 6
EXIT_STRATA = 7
EXIT_NOT_PARSEVAL = 8


@dataclass
class RunConfig:
    command: str
    inputs: list[Path]
    output: Path | None = None
    p: int | None = None
    resolution: int = 4
    tol: float = TOL
    fmt: str = "text"
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be at least 1")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.fmt not in ("text", "csv", "json"):
            raise ValueError(f"unknown report format {self.fmt!r}")


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code


def _load(path: Path, cfg: RunConfig) -> StepFunction:
    try:
        f = vsf.load(path)
    except OSError as e:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {e.strerror}") from None
    except vsf.FormatError as e:
        raise _Exit(EXIT_PARSE, f"{path}: {e}") from None
    if cfg.p is not None and f.p != cfg.p:
        raise _Exit(EXIT_PARSE, f"{path}: file has p={f.p}, expected p={cfg.p}")
    return f


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write(text: str, path: Path | None, out) -> None:
    if path is None:
        out.write(text)
    else:
        path.write_text(text)


def _cells_table(f: StepFunction) -> list[tuple[str, Fraction, complex]]:
    """Rows ``(cell, lambda*, value)`` of a function on ``U*`` in lambda* order."""
    n = f.values.size
    return [(str(f.coset(i)), Fraction(i, n), complex(f.values[i])) for i in range(n)]


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda_star", "value_re", "value_im"])
    for _, lam, v in rows:
        w.writerow([repr(float(lam)), repr(v.real), repr(v.imag)])
    return buf.getvalue()


def cmd_transform(cfg: RunConfig, out) -> int:
    f = _load(cfg.inputs[0], cfg)
    inverse = cfg.flags.get("inverse", False)
    want = Side.DUAL if inverse else Side.PRIMAL
    if f.side is not want:
        raise _Exit(EXIT_PARSE, f"{'--inverse' if inverse else 'transform'} needs a "
                                f"{want.value} input, got {f.side.value}")
    g = inverse_fourier(f) if inverse else fourier(f)
    if cfg.flags.get("oracle", False):
        ref = slow_fourier(f, inverse=inverse)
        dev = float(np.max(np.abs(g.values - ref.values), initial=0.0))
        print(f"oracle max deviation: {dev:.3e}", file=sys.stderr)
        if dev > cfg.tol:
            raise _Exit(EXIT_ORACLE, f"oracle mismatch {dev:.3e} > {cfg.tol:.1e}")
    _write(vsf.dumps(g), cfg.output, out)
    return EXIT_OK


def _frame_text(d: dict, rows) -> str:
    lines = [f"{k} = {d[k]}" for k in ("p", "resolution", "lower_bound", "upper_bound",
                                       "bessel", "frame", "parseval", "orthonormal",
                                       "spectrum_measure", "null_measure")]
    lines.append("null_set = " + " ".join(d["null_set"]))
    lines.append("spectrum = " + " ".join(d["spectrum"]))
    lines.append("cell lambda_star periodization")
    lines += [f"{c} {lam} {v.real!r}" for c, lam, v in rows]
    return "\n".join(lines) + "\n"


def cmd_analyze(cfg: RunConfig, out) -> int:
    phi = _load(cfg.inputs[0], cfg)
    rep = frame_report(phi, cfg.tol)
    if not rep.frame:
        raise _Exit(EXIT_EMPTY, "empty support: the periodization vanishes identically")
    P = periodization(phi)
    P = P.refine(hi=max(P.hi, cfg.resolution))
    rows = _cells_table(P)
    d = rep.as_dict()
    d["resolution"] = P.hi
    d["null_set"] = [c for c, _, v in rows if abs(v) <= cfg.tol]
    d["spectrum"] = [c for c, _, v in rows if abs(v) > cfg.tol]
    csv_path = cfg.flags.get("csv")
    if csv_path is not None:
        Path(csv_path).write_text(_csv(rows))
    if cfg.fmt == "csv":
        text = _csv(rows)
    elif cfg.fmt == "json":
        d["periodization"] = [{"cell": c, "lambda_star": str(lam), "value": v.real}
                              for c, lam, v in rows]
        text = _json(d)
    else:
        text = _frame_text(d, rows)
    _write(text, cfg.output, out)
    return EXIT_OK


def _outdir(cfg: RunConfig) -> Path | None:
    if cfg.output is None:
        return None
    cfg.output.mkdir(parents=True, exist_ok=True)
    return cfg.output


def cmd_wavelet(cfg: RunConfig, out) -> int:
    phi = _load(cfg.inputs[0], cfg)
    if phi.p != 2:
        raise _Exit(EXIT_NOT_DYADIC, f"wavelet construction needs p = 2, got p = {phi.p}")
    m = None
    if len(cfg.inputs) > 1:
        mf = _load(cfg.inputs[1], cfg)
        if mf.side is not Side.DUAL:
            raise _Exit(EXIT_PARSE, "filter file must be on the dual side")
        m = FilterSpec(mf)
    rep = frame_report(phi, cfg.tol)
    if not rep.frame:
        raise _Exit(EXIT_EMPTY, "empty support: the periodization vanishes identically")
    try:
        cert = construct_wavelet(phi, m, tol=cfg.tol)
    except BlockedSetError as e:
        raise _Exit(EXIT_BLOCKED, f"{e}\nblocked cells: {' '.join(e.cells)}") from None
    except PreconditionError as e:
        raise _Exit(EXIT_PARSE, str(e)) from None
    d = cert.as_dict()
    d["existence"] = existence_conditions(phi, m, rep.lower, rep.upper, tol=cfg.tol).as_dict()
    d["psi_file"] = "psi.vsf"
    od = _outdir(cfg)
    if od is not None:
        vsf.dump(cert.psi, od / "psi.vsf")
        vsf.dump(cert.highpass.fn, od / "highpass.vsf")
        (od / "certificate.json").write_text(_json(d))
    out.write(_json(d))
    return EXIT_OK if cert.passed else EXIT_CHECK_FAILED


def cmd_mra_lift(cfg: RunConfig, out) -> int:
    phi = _load(cfg.inputs[0], cfg)
    if not frame_report(phi, cfg.tol).frame:
        raise _Exit(EXIT_EMPTY, "empty support: the periodization vanishes identically")
    try:
        lift = fmra_to_mra(phi, cfg.tol, cfg.flags.get("max_depth"))
    except PreconditionError as e:
        raise _Exit(EXIT_NOT_PARSEVAL, str(e)) from None
    except StrataError as e:
        raise _Exit(EXIT_STRATA, f"{e}\nuncovered cells: {' '.join(e.cells)}") from None
    P = periodization(lift.varphi_hat).values
    p_res = float(np.max(np.abs(P - 1.0)))
    d = lift.strata_report()
    d["periodization_residual"] = p_res
    ok = p_res <= cfg.tol and lift.refinement_residual <= cfg.tol
    d["passed"] = ok
    od = _outdir(cfg)
    if od is not None:
        vsf.dump(lift.varphi.simplify(), od / "varphi.vsf")
        vsf.dump(lift.m_varphi.fn, od / "m_varphi.vsf")
        (od / "strata.json").write_text(_json(d))
    out.write(_json(d))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


COMMANDS = {
    "transform": cmd_transform,
    "analyze": cmd_analyze,
    "wavelet": cmd_wavelet,
    "mra-lift": cmd_mra_lift,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="vilenkin", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--tol", type=float, default=TOL, help="comparison tolerance")
        sp.add_argument("-p", type=int, default=None, help="reject inputs over another prime")

    t = sub.add_parser("transform", help="Fourier transform of a vsf1 file")
    t.add_argument("input", type=Path)
    t.add_argument("-o", "--output", type=Path, help="output file (default stdout)")
    t.add_argument("--inverse", action="store_true", help="inverse transform of a dual input")
    t.add_argument("--oracle", action="store_true", help="cross-check against direct summation")
    common(t)

    a = sub.add_parser("analyze", help="periodization, frame bounds and spectrum")
    a.add_argument("input", type=Path)
    a.add_argument("-o", "--output", type=Path, help="report file (default stdout)")
    a.add_argument("-r", "--resolution", type=int, default=4)
    a.add_argument("--format", choices=("text", "json", "csv"), default="text")
    a.add_argument("--csv", type=Path, help="also write lambda_star plot data here")
    common(a)

    w = sub.add_parser("wavelet", help="frame wavelet for a p = 2 FMRA")
    w.add_argument("input", type=Path)
    w.add_argument("--filter", type=Path, help="refinement filter on U* (default minimal)")
    w.add_argument("-o", "--output-dir", dest="output", type=Path)
    common(w)

    m = sub.add_parser("mra-lift", help="lift a Parseval FMRA to an MRA")
    m.add_argument("input", type=Path)
    m.add_argument("-o", "--output-dir", dest="output", type=Path)
    m.add_argument("--max-depth", type=int, default=None,
                   help="stop the strata search at this depth (default: window size)")
    common(m)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    inputs = [ns.input] + ([ns.filter] if getattr(ns, "filter", None) else [])
    flags = {k: getattr(ns, k) for k in ("inverse", "oracle", "csv", "max_depth") if hasattr(ns, k)}
    return RunConfig(ns.command, inputs, ns.output, ns.p, getattr(ns, "resolution", 4),
                     ns.tol, getattr(ns, "format", "text"), flags)


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        try:
            cfg = config_from_args(ns)
        except ValueError as e:
            parser.error(str(e))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_PARSE
    try:
        return COMMANDS[cfg.command](cfg, out)
    except _Exit as e:
        if str(e):
            print(f"vilenkin {cfg.command}: {e}", file=sys.stderr)
        return e.code
    except DomainError as e:
        print(f"vilenkin {cfg.command}: {e}", file=sys.stderr)
        return EXIT_PARSE
    except VilenkinError as e:
        print(f"vilenkin {cfg.command}: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""``polyinv`` command-line entry point.

Exit codes: 0 affirmative result, 1 negative result, 2 usage or parse error,
3 numerical failure.
"""
import argparse
import json
import sys

import numpy as np

from .errors import (ConvergenceFailure, DegenerateDirection, IllConditioned, NumericalBreakdown,
                     ParseError, PolyinvError, Singular, Unsynthesizable, VerificationFailed)
from .matfile import read_matrix, render_matrix
from .oracle import TrajectoryProbe, trajectory_contained
from .report import analyze, format_matrix, format_report
from .synthesis import synthesize
from .tolerances import DEFAULT
from .verify import check_invariant, find_certificate

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

_NUMERIC = (ConvergenceFailure, DegenerateDirection, IllConditioned, NumericalBreakdown,
            Singular, VerificationFailed)


def _k_override(text):
    try:
        idx, k = text.split(":")
        return int(idx), int(k)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <eigval-index>:<k>, got {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-A", dest="A", required=True, help="system matrix file")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--tol-eig", type=float, default=None)
    common.add_argument("--tol-verify", type=float, default=None)

    with_f = argparse.ArgumentParser(add_help=False)
    with_f.add_argument("-F", dest="F", required=True, help="face matrix file")

    kflag = argparse.ArgumentParser(add_help=False)
    kflag.add_argument("--k-override", type=_k_override, action="append", default=[],
                       metavar="IDX:K", help="polygon half-face count for spectrum class IDX")

    ap = argparse.ArgumentParser(prog="polyinv",
                                 description="Polyhedral invariants for dx/dt = A x.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common, kflag],
                   help="spectrum, bounds, synthesized invariant and certificate")
    p = sub.add_parser("synth", parents=[common, kflag], help="synthesize a verified invariant")
    p.add_argument("-o", dest="out", default=None, help="write F to this file")
    sub.add_parser("verify", parents=[common, with_f], help="LP invariance check")
    sub.add_parser("certify", parents=[common, with_f], help="search for a B-matrix certificate")
    p = sub.add_parser("falsify", parents=[common, with_f], help="trajectory sampling")
    p.add_argument("--horizon", type=float, default=TrajectoryProbe.horizon)
    p.add_argument("--dt", type=float, default=TrajectoryProbe.dt)
    p.add_argument("--samples", type=int, default=TrajectoryProbe.n_samples)
    p.add_argument("--seed", type=int, default=TrajectoryProbe.seed)
    return ap


def _emit(args, payload, text, out):
    if args.json:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _analyze(args, A, tol, out):
    report = analyze(A, dict(args.k_override), tol)
    _emit(args, report.as_dict(), format_report(report), out)
    ok = report.verification is not None and report.verification.invariant
    return EXIT_OK if ok else EXIT_NEGATIVE


def _synth(args, A, tol, out):
    try:
        inv = synthesize(A, dict(args.k_override), tol)
    except Unsynthesizable as exc:
        _emit(args, {"F": None, "error": str(exc)}, f"unsynthesizable: {exc}", out)
        return EXIT_NEGATIVE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(render_matrix(inv.F))
    payload = {"F": inv.F.tolist(), "s": inv.s, "bounded": inv.bounded,
               "verification": inv.verification.as_dict()}
    text = (f"s = {inv.s} ({'bounded' if inv.bounded else 'unbounded'}), verified\n"
            + format_matrix(inv.F))
    _emit(args, payload, text, out)
    return EXIT_OK


def _verify(args, A, F, tol, out):
    rep = check_invariant(A, F, tol)
    lines = [f"verdict: {rep.verdict}"]
    for f in rep.faces:
        mark = "ok " if f.passed else "BAD"
        lines.append(f"  {mark} face {f.index}: max derivative {f.worst_derivative:.6g}"
                     + ("" if f.witness is None else f" at x = {np.array2string(f.witness)}"))
    _emit(args, rep.as_dict(), "\n".join(lines), out)
    return EXIT_OK if rep.invariant else EXIT_NEGATIVE


def _certify(args, A, F, tol, out):
    cert = find_certificate(A, F, tol)
    if cert is None:
        _emit(args, {"certificate": None}, "no B-matrix certificate exists", out)
        return EXIT_NEGATIVE
    _emit(args, {"certificate": cert.as_dict()},
          "B-matrix X with F A = X F:\n" + format_matrix(cert.X), out)
    return EXIT_OK


def _falsify(args, A, F, tol, out):
    probe = TrajectoryProbe(args.horizon, args.dt, args.samples, args.seed)
    cex = trajectory_contained(A, F, probe, tol)
    if cex is None:
        _emit(args, {"counterexample": None},
              f"no counterexample in {probe.n_samples} samples up to t = {probe.horizon}", out)
        return EXIT_OK
    _emit(args, {"counterexample": cex.as_dict()},
          f"counterexample: x0 = {np.array2string(cex.x0)} leaves at t = {cex.t:.4g} "
          f"(||F x||_inf = {cex.value:.6g})", out)
    return EXIT_NEGATIVE


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    tol = DEFAULT.with_(eig=args.tol_eig, verify=args.tol_verify)
    try:
        A = read_matrix(args.A)
        F = read_matrix(args.F) if getattr(args, "F", None) else None
    except (OSError, ParseError) as exc:
        err.write(f"polyinv: {exc}\n")
        return EXIT_USAGE
    try:
        if args.command == "analyze":
            return _analyze(args, A, tol, out)
        if args.command == "synth":
            return _synth(args, A, tol, out)
        if args.command == "verify":
            return _verify(args, A, F, tol, out)
        if args.command == "certify":
            return _certify(args, A, F, tol, out)
        return _falsify(args, A, F, tol, out)
    except _NUMERIC as exc:
        err.write(f"polyinv: numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (PolyinvError, ValueError) as exc:
        err.write(f"polyinv: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

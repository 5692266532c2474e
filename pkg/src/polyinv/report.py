"""End-to-end analysis of one system matrix and its JSON report."""
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import Unsynthesizable
from .linalg import as_matrix
from .spectrum import classify, necessary_min_s, sufficient_s
from .synthesis import synthesize
from .tolerances import resolve
from .verify import find_certificate

_NUM = {"type": "number"}
_FACE = {
    "type": "object",
    "required": ["index", "status", "worst_derivative", "witness"],
    "properties": {
        "index": {"type": "integer", "minimum": 0},
        "status": {"enum": ["optimal", "infeasible", "unbounded"]},
        "worst_derivative": {"oneOf": [_NUM, {"enum": ["inf", "-inf"]}]},
        "witness": {"oneOf": [{"type": "null"}, {"type": "array", "items": _NUM}]},
    },
}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _NUM}}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "polyinv analysis report",
    "type": "object",
    "required": ["n", "spectrum", "sufficient_s", "necessary", "F", "bounded",
                 "verification", "certificate", "timings"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "spectrum": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["re", "im", "algm", "geom", "kind", "k", "margin"],
                "properties": {
                    "re": _NUM, "im": _NUM,
                    "algm": {"type": "integer", "minimum": 1},
                    "geom": {"type": "integer", "minimum": 1},
                    "kind": {"enum": ["real_negative", "real_zero", "real_positive",
                                      "complex_strict", "complex_marginal",
                                      "complex_blocked"]},
                    "k": {"type": ["integer", "null"]},
                    "margin": _NUM,
                },
            },
        },
        "sufficient_s": {"type": ["integer", "null"]},
        "necessary": {
            "oneOf": [
                {"type": "object", "required": ["verdict", "s"],
                 "properties": {"verdict": {"const": "min_s"}, "s": {"type": "integer"}}},
                {"type": "object", "required": ["verdict", "reason"],
                 "properties": {"verdict": {"const": "no_bounded_li"},
                                "reason": {"type": "string"}}},
            ]
        },
        "F": {"oneOf": [{"type": "null"}, _MATRIX]},
        "bounded": {"type": ["boolean", "null"]},
        "verification": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "required": ["verdict", "threshold", "faces"],
                 "properties": {"verdict": {"enum": ["invariant", "not_invariant"]},
                                "threshold": _NUM,
                                "faces": {"type": "array", "items": _FACE}}},
            ]
        },
        "certificate": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "required": ["X", "residual"],
                 "properties": {"X": _MATRIX, "residual": _NUM}},
            ]
        },
        "timings": {"type": "object", "additionalProperties": _NUM},
    },
}


@dataclass
class AnalysisReport:
    n: int
    spectrum: object
    sufficient_s: int
    necessary: object
    invariant: object = None
    verification: object = None
    certificate: object = None
    timings: dict = field(default_factory=dict)
    note: str = None

    def as_dict(self):
        return {
            "n": self.n,
            "spectrum": self.spectrum.as_list(),
            "sufficient_s": self.sufficient_s,
            "necessary": self.necessary.as_dict(),
            "F": None if self.invariant is None else self.invariant.F.tolist(),
            "bounded": None if self.invariant is None else self.invariant.bounded,
            "verification": None if self.verification is None else self.verification.as_dict(),
            "certificate": None if self.certificate is None else self.certificate.as_dict(),
            "timings": dict(self.timings),
        }


class _Timer:
    def __init__(self, timings, name):
        self.timings, self.name = timings, name

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.timings[self.name] = (time.perf_counter() - self.t0) * 1e3
        return False


def analyze(A, k_override=None, tol=None):
    """Classify, bound, synthesize, verify and certify in one pass.

    Stops after the bounds when no sufficient construction exists.
    """
    tol = resolve(tol)
    A = as_matrix(A, square=True)
    timings = {}
    with _Timer(timings, "classify"):
        spec = classify(A, tol)
    with _Timer(timings, "bounds"):
        suff = sufficient_s(spec)
        nec = necessary_min_s(spec)
    report = AnalysisReport(A.shape[0], spec, suff, nec, timings=timings)
    if suff is None:
        report.note = "no sufficient construction for this spectrum"
        return report
    with _Timer(timings, "synthesize"):
        try:
            inv = synthesize(A, k_override, tol)
        except Unsynthesizable as exc:
            report.note = str(exc)
            return report
    report.invariant = inv
    report.verification = inv.verification
    with _Timer(timings, "certify"):
        report.certificate = find_certificate(A, inv.F, tol)
    return report


def format_matrix(M, indent="  "):
    M = np.atleast_2d(M)
    return "\n".join(indent + "  ".join(f"{v: .6g}" for v in row) for row in M)


def format_report(report):
    lines = [f"n = {report.n}", "spectrum:"]
    for i, c in enumerate(report.spectrum.classes):
        lam = f"{c.lam.real:.6g}" + (f" +/- {c.lam.imag:.6g}i" if c.is_complex else "")
        k = f", k={c.k}" if c.k is not None else ""
        lines.append(f"  [{i}] {lam}  algm={c.algm} geom={c.geom}  {c.kind}{k}")
    lines.append(f"sufficient s: {report.sufficient_s}")
    lines.append(f"necessary:    {report.necessary}")
    if report.invariant is not None:
        inv = report.invariant
        lines.append(f"invariant ||F x||_inf <= 1 with s = {inv.s} "
                     f"({'bounded' if inv.bounded else 'unbounded'}):")
        lines.append(format_matrix(inv.F))
    if report.verification is not None:
        lines.append(f"verification: {report.verification.verdict}")
    if report.certificate is not None:
        lines.append("certificate X (F A = X F):")
        lines.append(format_matrix(report.certificate.X))
    elif report.invariant is not None:
        lines.append("certificate: none found")
    if report.note:
        lines.append(f"note: {report.note}")
    return "\n".join(lines)

"""Invariance checks for ``||F x||_inf <= 1`` under ``dx/dt = A x``.

The set is invariant iff on every face the Lie derivative of that face's
functional is non-positive. Face ``i`` gives one LP:

    maximize  F[i] @ A @ x   s.t.  -1 <= F @ x <= 1,  F[i] @ x = 1

The face ``F[i] @ x = -1`` is the mirror image under ``x -> -x`` and needs no
LP of its own. Alternatively invariance is witnessed by an ``s x s``
B-matrix ``X`` (non-positive, diagonally dominant diagonal) with
``F A = X F``; :func:`find_certificate` searches for one row by row.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonSquare, NumericalBreakdown, Singular, ZeroRow
from .linalg import as_matrix, invert, max_norm, rank
from .lp import INFEASIBLE, OPTIMAL, LinearProgram, lp_solve
from .tolerances import resolve

INVARIANT = "invariant"
NOT_INVARIANT = "not_invariant"


@dataclass
class FaceResult:
    index: int
    worst_derivative: float     # -inf when the face is empty, +inf when unbounded
    status: str
    witness: np.ndarray = None

    @property
    def passed(self):
        return self.witness is None


@dataclass
class VerificationReport:
    verdict: str
    faces: list = field(default_factory=list)
    threshold: float = 0.0

    @property
    def invariant(self):
        return self.verdict == INVARIANT

    def failing(self):
        return [f for f in self.faces if not f.passed]

    def as_dict(self):
        def num(v):
            if v is None or np.isfinite(v):
                return v
            return "inf" if v > 0 else "-inf"

        return {
            "verdict": self.verdict,
            "threshold": self.threshold,
            "faces": [
                {
                    "index": f.index,
                    "status": f.status,
                    "worst_derivative": num(f.worst_derivative),
                    "witness": None if f.witness is None else [float(v) for v in f.witness],
                }
                for f in self.faces
            ],
        }


@dataclass
class Certificate:
    X: np.ndarray
    residual: float

    def as_dict(self):
        return {"X": self.X.tolist(), "residual": self.residual}


def _check_inputs(A, F):
    A = as_matrix(A, square=True)
    F = as_matrix(F)
    if F.shape[1] != A.shape[0]:
        raise DimensionMismatch(f"F has {F.shape[1]} columns but A is {A.shape[0]}x{A.shape[0]}")
    if np.any(np.all(F == 0.0, axis=1)):
        raise ZeroRow("F has a zero row")
    return A, F


def verify_threshold(A, F, tol=None):
    tol = resolve(tol)
    return tol.verify * (1.0 + max_norm(A) * max_norm(F))


def _face_lps(A, F, two_sided, tol):
    s, n = F.shape
    FA = F @ A
    thr = verify_threshold(A, F, tol)
    A_ub = np.vstack([F, -F]) if two_sided else F
    b_ub = np.ones(A_ub.shape[0])
    faces = []
    for i in range(s):
        lp = LinearProgram(FA[i], A_ub, b_ub, F[i:i + 1], np.ones(1))
        res = lp_solve(lp, tol)
        if res.status == INFEASIBLE:
            faces.append(FaceResult(i, -np.inf, res.status))
        elif res.status == OPTIMAL:
            witness = res.x if res.value > thr else None
            faces.append(FaceResult(i, res.value, res.status, witness))
        else:
            # walk along the improving ray until the derivative is clearly positive
            slope = float(FA[i] @ res.ray)
            step = (1.0 + abs(res.value)) / slope if slope > 0 else 1.0
            faces.append(FaceResult(i, np.inf, res.status, res.x + step * res.ray))
    verdict = INVARIANT if all(f.passed for f in faces) else NOT_INVARIANT
    return VerificationReport(verdict, faces, thr)


def check_invariant(A, F, tol=None):
    """Decide whether ``||F x||_inf <= 1`` is positively invariant for ``dx/dt = A x``.

    A face passes when its LP is infeasible (the face is empty) or its
    optimum is at most ``tol.verify * (1 + ||A||_max ||F||_max)``. Failing
    faces carry the maximizing point as a witness.
    """
    tol = resolve(tol)
    A, F = _check_inputs(A, F)
    return _face_lps(A, F, True, tol)


def check_halfspace_invariant(A, F, tol=None):
    """Same face test for the one-sided polyhedron ``F x <= 1``."""
    tol = resolve(tol)
    A, F = _check_inputs(A, F)
    return _face_lps(A, F, False, tol)


def is_bmatrix(X, tol=None):
    """True iff every diagonal entry is non-positive and dominates its row."""
    tol = resolve(tol)
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {X.shape}")
    diag = np.diag(X)
    off = np.sum(np.abs(X), axis=1) - np.abs(diag)
    return bool(np.all(diag <= tol.cert) and np.all(np.abs(diag) >= off - tol.cert))


def _certificate_row(F, target, i, tol):
    # unknowns: X[i, :] (s, free) then t_j >= 0 for j != i (s - 1)
    s, n = F.shape
    others = [j for j in range(s) if j != i]
    nv = s + len(others)
    A_eq = np.zeros((n, nv))
    A_eq[:, :s] = F.T
    ub = []
    row = np.zeros(nv)
    row[i] = 1.0
    ub.append(row)                      # X_ii <= 0
    for p, j in enumerate(others):
        row = np.zeros(nv)
        row[j] = 1.0
        row[s + p] = -1.0
        ub.append(row)                  # X_ij <= t_j
        row = np.zeros(nv)
        row[j] = -1.0
        row[s + p] = -1.0
        ub.append(row)                  # -X_ij <= t_j
    row = np.zeros(nv)
    row[i] = 1.0
    row[s:] = 1.0
    ub.append(row)                      # X_ii + sum t_j <= 0
    objective = np.zeros(nv)
    objective[s:] = -1.0
    lp = LinearProgram(objective, np.vstack(ub), np.zeros(len(ub)), A_eq, target)
    res = lp_solve(lp, tol)
    if res.status != OPTIMAL:
        return None
    return res.x[:s]


def find_certificate(A, F, tol=None):
    """Search for a B-matrix ``X`` with ``F A = X F``.

    Each row of ``X`` is an independent LP feasibility problem; the
    magnitudes ``|X_ij|`` are linearized with auxiliary bounds ``t_ij``.
    Returns a :class:`Certificate` or ``None``.
    """
    tol = resolve(tol)
    A, F = _check_inputs(A, F)
    s, n = F.shape
    FA = F @ A
    X = np.zeros((s, s))
    for i in range(s):
        row = _certificate_row(F, FA[i], i, tol)
        if row is None:
            return None
        X[i] = row
    residual = max_norm(FA - X @ F)
    if residual > tol.cert or not is_bmatrix(X, tol):
        raise NumericalBreakdown(
            f"certificate LP returned an invalid X (residual {residual:.3e})")
    if s == n:
        try:
            direct = F @ A @ invert(F, tol)
        except Singular:
            direct = None
        if direct is not None and max_norm(direct - X) > 1e-6 * (1.0 + max_norm(direct)):
            raise NumericalBreakdown("certificate disagrees with F A F^-1")
    return Certificate(X, residual)


def is_bounded(inv, tol=None):
    """True iff the invariant's face matrix has full column rank."""
    tol = resolve(tol)
    F = np.asarray(inv.F if hasattr(inv, "F") else inv)
    return rank(F, tol.rank) == F.shape[1]

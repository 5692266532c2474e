"""Dense two-phase simplex with Bland's anti-cycling rule.

Problems are stated as *maximize* ``c @ x`` subject to rows
``a @ x <= b`` or ``a @ x == b``. Variables are free unless the program is
built with ``nonneg=True``; free variables are split as ``x = x+ - x-``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import NumericalBreakdown
from .tolerances import resolve

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_PIVOT_EPS = 1e-11


@dataclass
class LinearProgram:
    objective: np.ndarray
    A_ub: np.ndarray
    b_ub: np.ndarray
    A_eq: np.ndarray
    b_eq: np.ndarray
    nonneg: bool = False

    @classmethod
    def from_constraints(cls, objective, constraints, nonneg=False):
        """Build from a list of ``(row, relation, rhs)`` with relation ``"<="`` or ``"="``."""
        c = np.asarray(objective, dtype=float).ravel()
        nv = c.size
        ub, bub, eq, beq = [], [], [], []
        for row, rel, rhs in constraints:
            row = np.asarray(row, dtype=float).ravel()
            if row.size != nv:
                raise ValueError(f"constraint row has {row.size} entries, expected {nv}")
            if rel in ("<=", "le"):
                ub.append(row)
                bub.append(float(rhs))
            elif rel in (">=", "ge"):
                ub.append(-row)
                bub.append(-float(rhs))
            elif rel in ("=", "==", "eq"):
                eq.append(row)
                beq.append(float(rhs))
            else:
                raise ValueError(f"unknown relation {rel!r}")
        return cls(c, _stack(ub, nv), np.array(bub), _stack(eq, nv), np.array(beq), nonneg)

    @property
    def n_vars(self):
        return self.objective.size


def _stack(rows, nv):
    return np.vstack(rows) if rows else np.zeros((0, nv))


@dataclass
class LpResult:
    status: str
    value: float = None
    x: np.ndarray = None
    ray: np.ndarray = None     # improving direction when unbounded

    @property
    def optimal(self):
        return self.status == OPTIMAL


def _pivot(T, basis, r, c):
    T[r] /= T[r, c]
    col = T[:, c].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    basis[r] = c


def _run(T, basis, cost, allowed, max_iter):
    """Maximize ``cost @ x`` over the tableau; Bland's rule throughout.

    Returns ``None`` at optimality, or the entering column if unbounded.
    """
    m = T.shape[0]
    ceps = 1e-11 * (1.0 + np.max(np.abs(cost)))
    for _ in range(max_iter):
        reduced = cost - cost[basis] @ T[:, :-1]
        reduced[~allowed] = 0.0
        reduced[basis] = 0.0
        entering = np.flatnonzero(reduced > ceps)
        if entering.size == 0:
            return None
        j = int(entering[0])
        col = T[:, j]
        rows = np.flatnonzero(col > _PIVOT_EPS)
        if rows.size == 0:
            return j
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
        r = int(min(ties, key=lambda i: basis[i]))
        if abs(T[r, j]) < _PIVOT_EPS:
            raise NumericalBreakdown(f"pivot {T[r, j]:.3e} below tolerance")
        _pivot(T, basis, r, j)
    raise NumericalBreakdown(f"simplex exceeded {max_iter} iterations (m={m})")


def lp_solve(lp, tol=None):
    """Solve ``lp`` by the two-phase simplex method.

    Returns an :class:`LpResult`. An optimal point satisfies every
    constraint to within ``tol.lp`` times the right-hand-side scale.
    """
    tol = resolve(tol)
    c = np.asarray(lp.objective, dtype=float)
    nv = c.size
    A_ub = np.asarray(lp.A_ub, dtype=float).reshape(-1, nv)
    A_eq = np.asarray(lp.A_eq, dtype=float).reshape(-1, nv)
    b_ub = np.asarray(lp.b_ub, dtype=float).ravel()
    b_eq = np.asarray(lp.b_eq, dtype=float).ravel()

    if lp.nonneg:
        expand = np.eye(nv)
    else:
        expand = np.hstack([np.eye(nv), -np.eye(nv)])
    ns = expand.shape[1]
    Aub = A_ub @ expand
    Aeq = A_eq @ expand
    cs = c @ expand

    m_ub, m_eq = Aub.shape[0], Aeq.shape[0]
    m = m_ub + m_eq
    # structural | slacks | artificials | rhs
    n_slack = m_ub
    rows = []
    rhs = []
    need_art = []
    for i in range(m_ub):
        row = np.zeros(ns + n_slack)
        row[:ns] = Aub[i]
        row[ns + i] = 1.0
        b = b_ub[i]
        if b < 0:
            row, b = -row, -b
            need_art.append(True)
        else:
            need_art.append(False)
        rows.append(row)
        rhs.append(b)
    for i in range(m_eq):
        row = np.zeros(ns + n_slack)
        row[:ns] = Aeq[i]
        b = b_eq[i]
        if b < 0:
            row, b = -row, -b
        rows.append(row)
        rhs.append(b)
        need_art.append(True)

    n_art = sum(need_art)
    width = ns + n_slack + n_art
    T = np.zeros((m, width + 1))
    basis = np.zeros(m, dtype=int)
    art_cols = []
    a = 0
    for i in range(m):
        T[i, :ns + n_slack] = rows[i]
        T[i, -1] = rhs[i]
        if need_art[i]:
            col = ns + n_slack + a
            T[i, col] = 1.0
            basis[i] = col
            art_cols.append(col)
            a += 1
        else:
            basis[i] = ns + i
    max_iter = 50 * (m + width) + 100
    scale = 1.0 + (np.max(np.abs(T[:, -1])) if m else 0.0)

    is_art = np.zeros(width, dtype=bool)
    is_art[art_cols] = True

    if n_art:
        cost1 = np.zeros(width)
        cost1[is_art] = -1.0
        _run(T, basis, cost1, np.ones(width, dtype=bool), max_iter)
        infeas = float(np.sum(T[is_art[basis], -1]))
        if infeas > tol.lp * scale:
            return LpResult(INFEASIBLE)
        # drive remaining artificials out of the basis
        keep = np.ones(m, dtype=bool)
        for r in range(m):
            if not is_art[basis[r]]:
                continue
            cand = np.flatnonzero((np.abs(T[r, :width]) > 1e-9) & ~is_art)
            if cand.size:
                _pivot(T, basis, r, int(cand[0]))
            else:
                keep[r] = False
        T = T[keep]
        basis = basis[keep]
        T[:, -1] = np.maximum(T[:, -1], 0.0)

    cost2 = np.zeros(width)
    cost2[:ns] = cs
    allowed = ~is_art
    entering = _run(T, basis, cost2, allowed, max_iter)

    z = np.zeros(width)
    z[basis] = T[:, -1]
    x = expand @ z[:ns]
    if entering is not None:
        d = np.zeros(width)
        d[entering] = 1.0
        d[basis] = -T[:, entering]
        return LpResult(UNBOUNDED, value=float(c @ x), x=x, ray=expand @ d[:ns])
    return LpResult(OPTIMAL, value=float(c @ x), x=x)

"""Trajectory sampling as an independent falsifier for invariance claims.

Flows are computed exactly with the matrix exponential, so a reported
counterexample is a genuine escape up to float rounding. Sampling can refute
invariance but never prove it.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDirection
from .linalg import as_matrix
from .tolerances import resolve

_TAYLOR_TERMS = 20
_MAX_RETRIES = 100


@dataclass(frozen=True)
class TrajectoryProbe:
    horizon: float = 20.0
    dt: float = 0.01
    n_samples: int = 200
    seed: int = 42

    def __post_init__(self):
        if not self.horizon > 0:
            raise ValueError("horizon must be positive")
        if not 0 < self.dt <= self.horizon:
            raise ValueError("dt must lie in (0, horizon]")
        if self.n_samples < 1:
            raise ValueError("n_samples must be at least 1")


@dataclass(frozen=True)
class CounterexampleReport:
    x0: np.ndarray
    t: float
    value: float
    sample: int

    def as_dict(self):
        return {"x0": [float(v) for v in self.x0], "t": self.t, "value": self.value,
                "sample": self.sample}


def expm(A, t=1.0):
    """``exp(A t)`` by scaling and squaring a truncated Taylor series."""
    M = as_matrix(A, square=True) * float(t)
    n = M.shape[0]
    norm = np.max(np.sum(np.abs(M), axis=0)) if n else 0.0
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    M = M / (2.0 ** squarings)
    result = np.eye(n)
    term = np.eye(n)
    for j in range(1, _TAYLOR_TERMS + 1):
        term = term @ M / j
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def sample_boundary(F, probe=None):
    """Seeded points ``x`` with ``||F x||_inf = 1``; columns of an ``n x N`` array."""
    probe = probe or TrajectoryProbe()
    F = as_matrix(F)
    n = F.shape[1]
    rng = np.random.default_rng(probe.seed)
    out = np.empty((n, probe.n_samples))
    for j in range(probe.n_samples):
        for _ in range(_MAX_RETRIES):
            d = rng.standard_normal(n)
            v = np.max(np.abs(F @ d))
            if v > 1e-12 * np.linalg.norm(d) * max(1.0, np.max(np.abs(F))):
                out[:, j] = d / v
                break
        else:
            raise DegenerateDirection(f"no usable direction after {_MAX_RETRIES} draws")
    return out


def trajectory_contained(A, F, probe=None, tol=None):
    """First sampled escape from ``||F x||_inf <= 1``, or ``None``.

    Every boundary sample is propagated on the grid ``0, dt, ..., horizon``
    and flagged when ``||F x(t)||_inf`` exceeds ``1 + tol.traj``.
    """
    tol = resolve(tol)
    probe = probe or TrajectoryProbe()
    A = as_matrix(A, square=True)
    F = as_matrix(F)
    X0 = sample_boundary(F, probe)
    steps = int(round(probe.horizon / probe.dt))
    step = expm(A, probe.dt)
    X = X0.copy()
    limit = 1.0 + tol.traj
    for k in range(steps + 1):
        if k and k % 100 == 0:
            X = expm(A, k * probe.dt) @ X0     # resynchronize against drift
        vals = np.max(np.abs(F @ X), axis=0)
        bad = np.flatnonzero(vals > limit)
        if bad.size:
            j = int(bad[0])
            return CounterexampleReport(X0[:, j].copy(), k * probe.dt, float(vals[j]), j)
        X = step @ X
    return None

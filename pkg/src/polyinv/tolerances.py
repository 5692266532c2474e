"""Numerical thresholds used throughout the package.

All comparisons that would be exact in rational arithmetic go through one of
these values. ``DEFAULT`` is used when callers pass ``tol=None``.
"""
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    eig: float = 1e-8       # eigenvalue clustering, relative to 1 + ||A||_max
    rank: float = 1e-9      # singular value cut, relative to the largest one
    recon: float = 1e-7     # ||A - U J U^-1||_max, relative to 1 + ||A||_max
    angle: float = 1e-9     # integrality test on 90 / atan(|a|/|b|)
    lp: float = 1e-9        # primal feasibility in the simplex
    verify: float = 1e-9    # face LP threshold, scaled by 1 + ||A|| ||F||
    cert: float = 1e-8      # B-matrix and FA = XF residual checks
    traj: float = 1e-6      # trajectory oracle overshoot allowance

    def with_(self, **changes):
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


DEFAULT = Tolerances()


def resolve(tol):
    return DEFAULT if tol is None else tol

"""Eigenvalue classification and the face-count bounds derived from it.

Each distinct real eigenvalue and each conjugate pair becomes an
:class:`EigenClass`. From the classes we read off

* a sufficient row count ``s`` for which a ``2s``-face symmetric polyhedral
  invariant ``||F x||_inf <= 1`` is guaranteed to exist (and can be built by
  :mod:`polyinv.synthesis`), and
* a lower bound on ``s`` that any *bounded* such invariant must meet.

A pair ``a +/- i b`` with ``a < 0`` needs a regular polygon with ``2k`` sides
in its invariant plane, where ``k`` relates to the spiral angle
``atan(|a| / |b|)`` through ``90 / k <= atan(|a| / |b|)`` (degrees).
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import as_matrix, eigenvalues, max_norm, rank
from .tolerances import resolve

REAL_NEGATIVE = "real_negative"
REAL_ZERO = "real_zero"
REAL_POSITIVE = "real_positive"
COMPLEX_STRICT = "complex_strict"
COMPLEX_MARGINAL = "complex_marginal"
COMPLEX_BLOCKED = "complex_blocked"

SYNTHESIZABLE = (REAL_NEGATIVE, REAL_ZERO, COMPLEX_STRICT, COMPLEX_MARGINAL)


@dataclass(frozen=True)
class EigenClass:
    """Classification of one distinct real eigenvalue or one conjugate pair.

    For pairs, ``lam`` is the member with positive imaginary part and
    ``algm``/``geom`` are the multiplicities of that member.
    """

    lam: complex
    algm: int
    geom: int
    kind: str
    k: int = None
    margin: float = 0.0

    @property
    def is_complex(self):
        return self.kind.startswith("complex")

    @property
    def dimension(self):
        return 2 * self.algm if self.is_complex else self.algm

    def num(self):
        """Rows this class contributes to the sufficient count, or ``None``."""
        if self.kind == REAL_NEGATIVE:
            return self.algm
        if self.kind == REAL_ZERO:
            return self.geom
        if self.kind == COMPLEX_STRICT:
            return self.k * self.algm
        if self.kind == COMPLEX_MARGINAL:
            return self.k * self.geom
        return None

    def as_dict(self):
        return {
            "re": self.lam.real,
            "im": self.lam.imag,
            "algm": self.algm,
            "geom": self.geom,
            "kind": self.kind,
            "k": self.k,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class Spectrum:
    n: int
    classes: tuple = field(default_factory=tuple)

    def as_list(self):
        return [c.as_dict() for c in self.classes]


@dataclass(frozen=True)
class NecessaryResult:
    """Either ``s`` is the least admissible row count, or no bounded invariant exists."""

    s: int = None
    reason: str = None

    @property
    def bounded_possible(self):
        return self.s is not None

    def as_dict(self):
        if self.s is not None:
            return {"verdict": "min_s", "s": self.s}
        return {"verdict": "no_bounded_li", "reason": self.reason}

    def __str__(self):
        return f"MinS({self.s})" if self.s is not None else f"NoBoundedLI({self.reason})"


def spiral_ratio(a, b):
    """``90 / atan(|a| / |b|)`` with the arctangent in degrees."""
    return 90.0 / math.degrees(math.atan2(abs(a), abs(b)))


def polygon_k(a, b, tol=None, allow_marginal=True):
    """Least half-face count ``k`` of a regular polygon invariant for the pair.

    Returns ``(k, marginal)``. When the ratio is an integer ``K`` (to
    ``tol.angle``) and ``allow_marginal`` is set, ``K`` itself is admissible
    with zero margin; otherwise ``k`` is the least integer strictly above
    the ratio.
    """
    tol = resolve(tol)
    ratio = spiral_ratio(a, b)
    K = round(ratio)
    if abs(ratio - K) <= tol.angle:
        return (K, True) if allow_marginal else (K + 1, False)
    return math.floor(ratio) + 1, False


def classify(A, tol=None):
    """Classify the spectrum of ``A``.

    Real eigenvalues within the clustering radius of zero are ``real_zero``.
    Pairs with ``a >= 0`` (to the same radius) are ``complex_blocked``: no
    polygon can contain a non-contracting rotation. A pair whose ratio is
    an exact integer ``K`` is ``complex_marginal`` with ``k = K`` only when it
    is non-defective; a defective one falls back to ``k = K + 1``.
    """
    tol = resolve(tol)
    A = as_matrix(A, square=True)
    n = A.shape[0]
    radius = tol.eig * (1.0 + max_norm(A))
    classes = []
    for lam, algm in eigenvalues(A, tol):
        if lam.imag < 0:
            continue
        geom = n - rank(A.astype(complex) - lam * np.eye(n), tol.rank)
        geom = max(1, min(geom, algm))
        if lam.imag == 0:
            x = lam.real
            if abs(x) <= radius:
                kind, margin = REAL_ZERO, 0.0
            elif x < 0:
                kind, margin = REAL_NEGATIVE, x
            else:
                kind, margin = REAL_POSITIVE, x
            classes.append(EigenClass(complex(x, 0.0), algm, geom, kind, None, margin))
            continue
        a, b = lam.real, lam.imag
        margin = a + abs(b)
        if a >= -radius:
            classes.append(EigenClass(lam, algm, geom, COMPLEX_BLOCKED, None, margin))
            continue
        k, marginal = polygon_k(a, b, tol, allow_marginal=(geom == algm))
        kind = COMPLEX_MARGINAL if marginal else COMPLEX_STRICT
        classes.append(EigenClass(lam, algm, geom, kind, k, margin))
    return Spectrum(n=n, classes=tuple(classes))


def sufficient_s(spec):
    """Row count guaranteed by the constructive sufficient condition.

    Each conjugate pair is counted once, with its polygon factor ``k``.
    Returns ``None`` if some class (positive real eigenvalue, or pair with
    ``a >= 0``) admits no construction.
    """
    total = 0
    for c in spec.classes:
        num = c.num()
        if num is None:
            return None
        total += num
    return total


def necessary_min_s(spec):
    """Least ``s`` a bounded ``2s``-face invariant could have, or why none exists."""
    s = spec.n
    for c in spec.classes:
        lam = c.lam
        if c.kind == REAL_POSITIVE:
            return NecessaryResult(reason=f"real eigenvalue {lam.real:.6g} > 0")
        if c.kind == REAL_ZERO and c.algm != c.geom:
            return NecessaryResult(
                reason=f"algm(0) = {c.algm} != geom(0) = {c.geom}")
        if c.kind == COMPLEX_BLOCKED:
            return NecessaryResult(
                reason=f"complex eigenvalue {lam.real:.6g}+{lam.imag:.6g}i has a >= 0")
        if c.is_complex:
            # least s with |a|/|b| > tan(90/s), or equality when non-defective
            s = max(s, c.k)
    return NecessaryResult(s=s)

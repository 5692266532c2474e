"""Construct ``||F x||_inf <= 1`` invariants from the real Jordan form.

Every Jordan block gets its own set of faces in Jordan coordinates
``y = U^-1 x``:

* ``(lam, 1)`` block with ``lam < 0``: ``|lam|^i |y_{m-i}| <= 1`` for each
  chain depth ``i``.
* ``(0, 1)`` block: only the conserved coordinate ``|y_m| <= 1``.
* rotation block ``[a, b; -b, a]``: a regular ``2k``-gon of inradius 1 in the
  block plane, and for chains of length ``m > 1`` the same polygon scaled by
  ``rho^i`` at depth ``i`` with ``rho = |a| - |b| tan(90/k deg)``.

The stacked rows are mapped back to ``x`` with ``U^-1``, and the result is
re-checked by the face LPs before it is returned.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import Unsynthesizable, VerificationFailed, ZeroRow
from .linalg import BlockDescriptor, as_matrix, max_norm, rank, real_jordan
from .spectrum import (COMPLEX_MARGINAL, COMPLEX_STRICT, REAL_ZERO, SYNTHESIZABLE, classify,
                       polygon_k, sufficient_s)
from .tolerances import resolve
from .verify import check_invariant

_ROUND = 1e-15


@dataclass(frozen=True)
class BlockFaces:
    block: BlockDescriptor
    rows: np.ndarray
    rho: float
    k: int


@dataclass
class PolyhedralInvariant:
    """The set ``||F x||_inf <= 1``."""

    F: np.ndarray
    bounded: bool
    verification: object = None

    @property
    def s(self):
        return self.F.shape[0]

    @property
    def n(self):
        return self.F.shape[1]


def polygon_rows(k):
    """Unit normals at angles ``j * 180/k`` degrees, ``j = 0..k-1``."""
    theta = np.radians(np.arange(k) * 180.0 / k)
    rows = np.column_stack([np.cos(theta), np.sin(theta)])
    rows[np.abs(rows) < _ROUND] = 0.0
    return rows


def chain_scale(a, b, k):
    """Invariance margin of the ``2k``-gon for the rotation ``[a, b; -b, a]``."""
    return abs(a) - abs(b) * math.tan(math.radians(90.0 / k))


def synthesize_block(block, k_override=None, tol=None):
    """Faces for one Jordan block, in block-local coordinates.

    ``k_override`` requests a polygon with more sides than the minimum for a
    rotation block; smaller values are rejected.
    """
    tol = resolve(tol)
    m = block.m
    if block.kind == "real":
        lam = block.lam
        if k_override is not None and k_override != 1:
            raise ValueError("k_override applies to complex blocks only")
        if abs(lam) <= tol.eig:
            rows = np.zeros((1, m))
            rows[0, m - 1] = 1.0
            return BlockFaces(block, rows, 1.0, 1)
        if lam > 0:
            raise Unsynthesizable(f"real eigenvalue {lam:.6g} > 0")
        rho = abs(lam)
        rows = np.zeros((m, m))
        for i in range(m):
            rows[i, m - 1 - i] = rho ** i
        return BlockFaces(block, rows, rho, 1)

    a, b = block.a, block.b
    if a >= -tol.eig:
        raise Unsynthesizable(f"complex eigenvalue {a:.6g}+{abs(b):.6g}i has a >= 0")
    k_min, marginal = polygon_k(a, b, tol)
    k = k_min
    if k_override is not None:
        if k_override < k_min:
            raise ValueError(f"k_override={k_override} is below the minimum k={k_min}")
        k = int(k_override)
    rho = chain_scale(a, b, k)
    if m > 1 and rho <= tol.angle * (abs(a) + abs(b)):
        raise Unsynthesizable(
            f"chain of length {m} for {a:.6g}+{abs(b):.6g}i has zero margin at k={k}")
    poly = polygon_rows(k)
    rows = np.zeros((k * m, 2 * m))
    for i in range(m):
        p = m - 1 - i
        rows[i * k:(i + 1) * k, 2 * p:2 * p + 2] = (rho ** i) * poly
    return BlockFaces(block, rows, rho, k)


def _class_of(block, spec, tol, scale):
    radius = tol.eig * scale
    lam = block.eigenvalue
    for idx, c in enumerate(spec.classes):
        if abs(c.lam - lam) <= max(radius, 1e-12):
            return idx, c
    raise Unsynthesizable(f"block eigenvalue {lam} not found in spectrum")


def face_rows(A, k_override=None, tol=None, spec=None, jordan=None):
    """Stacked face rows in Jordan coordinates plus the decomposition used."""
    tol = resolve(tol)
    A = as_matrix(A, square=True)
    spec = spec or classify(A, tol)
    k_override = dict(k_override or {})
    for idx, k in k_override.items():
        if not 0 <= idx < len(spec.classes):
            raise ValueError(f"k_override index {idx} out of range")
        c = spec.classes[idx]
        if not c.is_complex:
            raise ValueError(f"k_override index {idx} refers to a real eigenvalue")
        if c.k is not None and k < c.k:
            raise ValueError(f"k_override={k} is below the classification's k={c.k}")
    for idx, c in enumerate(spec.classes):
        if c.kind not in SYNTHESIZABLE:
            raise Unsynthesizable(f"eigenvalue class {idx} ({c.kind}) admits no invariant")
    dec = jordan or real_jordan(A, tol)
    scale = 1.0 + max_norm(A)
    n = A.shape[0]
    parts = []
    for blk in dec.blocks:
        idx, c = _class_of(blk, spec, tol, scale)
        if c.kind == REAL_ZERO:
            blk = BlockDescriptor(blk.offset, blk.m, "real", lam=0.0)
        k = None
        if c.kind in (COMPLEX_STRICT, COMPLEX_MARGINAL):
            k = k_override.get(idx, c.k)
        bf = synthesize_block(blk, k, tol)
        rows = np.zeros((bf.rows.shape[0], n))
        rows[:, blk.offset:blk.offset + blk.width] = bf.rows
        parts.append(rows)
    R = np.vstack(parts) if parts else np.zeros((0, n))
    return R, dec


def synthesize(A, k_override=None, tol=None):
    """Build and verify a polyhedral invariant ``||F x||_inf <= 1`` for ``dx/dt = A x``.

    Parameters
    ----------
    A : array_like
        Square system matrix.
    k_override : dict, optional
        Maps a spectrum class index to a polygon half-face count ``k`` at
        least the classified one.

    Raises
    ------
    Unsynthesizable
        If some eigenvalue is a positive real or a pair with ``a >= 0``.
    VerificationFailed
        If the face LPs reject the constructed ``F``.
    """
    tol = resolve(tol)
    A = as_matrix(A, square=True)
    spec = classify(A, tol)
    if sufficient_s(spec) is None:
        bad = [c.kind for c in spec.classes if c.kind not in SYNTHESIZABLE]
        raise Unsynthesizable(f"no sufficient construction: {', '.join(bad)}")
    R, dec = face_rows(A, k_override, tol, spec)
    F = R @ dec.U_inv
    F[np.abs(F) < _ROUND * max(1.0, max_norm(F))] = 0.0
    if np.any(np.all(F == 0.0, axis=1)):
        raise ZeroRow("synthesized F has a zero row")
    report = check_invariant(A, F, tol)
    if not report.invariant:
        bad = report.failing()[0]
        raise VerificationFailed(
            f"face {bad.index} has derivative {bad.worst_derivative:.3e} > "
            f"{report.threshold:.3e}", report)
    bounded = rank(F, tol.rank) == A.shape[0]
    return PolyhedralInvariant(F=F, bounded=bounded, verification=report)


def row_normalize(F):
    """Scale each row to unit infinity norm (display only)."""
    F = np.asarray(F, dtype=float)
    scale = np.max(np.abs(F), axis=1)
    if np.any(scale == 0.0):
        raise ZeroRow("cannot normalize a zero row")
    return F / scale[:, None]

"""Dense real linear algebra: eigenvalues, ranks, inverses and the real Jordan form.

Eigenvalues come from a Householder reduction to upper Hessenberg form followed
by Francis double-shift QR sweeps. The real Jordan decomposition is then built
eigenvalue by eigenvalue from generalized eigenspaces ker((A - lam I)^k).
"""
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, IllConditioned, NonSquare, NotAnEigenvalue, Singular
from .tolerances import resolve

__all__ = [
    "BlockDescriptor",
    "JordanDecomposition",
    "as_matrix",
    "eigenvalues",
    "geometric_multiplicity",
    "hessenberg",
    "invert",
    "max_norm",
    "null_space",
    "rank",
    "raw_eigenvalues",
    "real_jordan",
]


def as_matrix(A, square=False):
    A = np.array(A, dtype=float)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    elif A.ndim == 1:
        A = A.reshape(1, -1)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    if square and A.shape[0] != A.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {A.shape}")
    return A


def max_norm(M):
    M = np.asarray(M)
    return float(np.max(np.abs(M))) if M.size else 0.0


def _cluster_scale(A):
    return 1.0 + max_norm(A)


# --------------------------------------------------------------------------
# eigenvalues


def hessenberg(A):
    """Householder reduction of ``A`` to upper Hessenberg form.

    Returns ``H`` only; the similarity transform is never needed downstream.
    """
    H = as_matrix(A, square=True).copy()
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        if x[0] > 0:
            alpha = -alpha
        v = x
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        H[k + 1:, k:] -= 2.0 * np.outer(v, v @ H[k + 1:, k:])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v)
        H[k + 2:, k] = 0.0
    return H


def _francis_qr(H, max_sweeps):
    """Eigenvalues of an upper Hessenberg matrix by implicit double-shift QR.

    Works in place on ``H``. Returns a list of complex numbers.
    """
    a = H
    n = a.shape[0]
    wr = np.zeros(n)
    wi = np.zeros(n)
    anorm = float(np.sum(np.abs(np.triu(a, -1))))
    nn = n - 1
    t = 0.0
    its = 0
    sweeps = 0
    while nn >= 0:
        # look for a single small subdiagonal element
        l = nn
        while l >= 1:
            s = abs(a[l - 1, l - 1]) + abs(a[l, l])
            if s == 0.0:
                s = anorm
            if abs(a[l, l - 1]) + s == s:
                a[l, l - 1] = 0.0
                break
            l -= 1

        x = a[nn, nn]
        if l == nn:
            wr[nn] = x + t
            wi[nn] = 0.0
            nn -= 1
            its = 0
            continue

        y = a[nn - 1, nn - 1]
        w = a[nn, nn - 1] * a[nn - 1, nn]
        if l == nn - 1:
            p = 0.5 * (y - x)
            q = p * p + w
            z = math.sqrt(abs(q))
            x += t
            if q >= 0.0:
                z = p + math.copysign(z, p)
                wr[nn - 1] = wr[nn] = x + z
                if z != 0.0:
                    wr[nn] = x - w / z
                wi[nn - 1] = wi[nn] = 0.0
            else:
                wr[nn - 1] = wr[nn] = x + p
                wi[nn - 1] = z
                wi[nn] = -z
            nn -= 2
            its = 0
            continue

        if sweeps >= max_sweeps:
            raise ConvergenceFailure(f"QR iteration did not converge in {max_sweeps} sweeps")
        if its > 0 and its % 10 == 0:
            # exceptional shift to break cycles
            t += x
            for i in range(nn + 1):
                a[i, i] -= x
            s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
            x = y = 0.75 * s
            w = -0.4375 * s * s
        its += 1
        sweeps += 1

        # two consecutive small subdiagonal elements
        m = nn - 2
        while True:
            z = a[m, m]
            r = x - z
            s = y - z
            p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
            q = a[m + 1, m + 1] - z - r - s
            r = a[m + 2, m + 1]
            s = abs(p) + abs(q) + abs(r)
            p /= s
            q /= s
            r /= s
            if m == l:
                break
            u = abs(a[m, m - 1]) * (abs(q) + abs(r))
            v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z) + abs(a[m + 1, m + 1]))
            if u + v == v:
                break
            m -= 1

        for i in range(m + 2, nn + 1):
            a[i, i - 2] = 0.0
            if i != m + 2:
                a[i, i - 3] = 0.0

        # double QR step on rows l..nn and columns m..nn
        for k in range(m, nn):
            if k != m:
                p = a[k, k - 1]
                q = a[k + 1, k - 1]
                r = a[k + 2, k - 1] if k != nn - 1 else 0.0
                x = abs(p) + abs(q) + abs(r)
                if x != 0.0:
                    p /= x
                    q /= x
                    r /= x
            s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
            if s == 0.0:
                continue
            if k == m:
                if l != m:
                    a[k, k - 1] = -a[k, k - 1]
            else:
                a[k, k - 1] = -s * x
            p += s
            x = p / s
            y = q / s
            z = r / s
            q /= p
            r /= p
            for j in range(k, nn + 1):
                p = a[k, j] + q * a[k + 1, j]
                if k != nn - 1:
                    p += r * a[k + 2, j]
                    a[k + 2, j] -= p * z
                a[k + 1, j] -= p * y
                a[k, j] -= p * x
            for i in range(l, min(nn, k + 3) + 1):
                p = x * a[i, k] + y * a[i, k + 1]
                if k != nn - 1:
                    p += z * a[i, k + 2]
                    a[i, k + 2] -= p * r
                a[i, k + 1] -= p * q
                a[i, k] -= p
    return [complex(re, im) for re, im in zip(wr, wi)]


def _sort_key(z):
    return (z.real, abs(z.imag), 0 if z.imag >= 0 else 1)


def raw_eigenvalues(A):
    """All ``n`` eigenvalues of ``A`` (with repetition), sorted deterministically."""
    A = as_matrix(A, square=True)
    n = A.shape[0]
    if n == 0:
        return []
    vals = _francis_qr(hessenberg(A), max_sweeps=100 * n)
    return sorted(vals, key=_sort_key)


def eigenvalues(A, tol=None):
    """Distinct eigenvalues of ``A`` with algebraic multiplicities.

    Eigenvalues closer than ``tol.eig * (1 + ||A||_max)`` are merged into one
    cluster represented by its mean. Conjugate pairs are kept symmetric, and
    values whose imaginary part is inside the cluster radius are reported as
    real.

    Returns
    -------
    list of (complex, int)
        Sorted by real part, then ``|imag|``, with the ``imag >= 0`` member
        of each conjugate pair first.
    """
    tol = resolve(tol)
    A = as_matrix(A, square=True)
    radius = tol.eig * _cluster_scale(A)
    vals = raw_eigenvalues(A)

    clusters = []
    for z in vals:
        for c in clusters:
            if abs(z - c[0] / len(c[1])) <= radius:
                c[0] += z
                c[1].append(z)
                break
        else:
            clusters.append([z, [z]])

    out = []
    for total, members in clusters:
        mean = total / len(members)
        if abs(mean.imag) <= radius:
            mean = complex(mean.real, 0.0)
        out.append((mean, len(members)))

    # force exact conjugate symmetry for the reported pairs
    fixed = []
    for z, m in out:
        if z.imag < 0:
            partner = [w for w, _ in out if w.imag > 0 and abs(w - z.conjugate()) <= radius]
            if partner:
                z = partner[0].conjugate()
        fixed.append((z, m))
    return sorted(fixed, key=lambda zm: _sort_key(zm[0]))


# --------------------------------------------------------------------------
# rank, kernels, inverse


def rank(M, tol=None):
    """Numerical rank: singular values above ``tol`` times the largest one.

    ``tol`` may be a float or a :class:`Tolerances`; default ``1e-9``.
    """
    if tol is None or not isinstance(tol, (int, float)):
        tol = resolve(tol).rank
    M = np.asarray(M)
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def null_space(M, rtol):
    """Orthonormal basis (columns) of the numerical kernel of ``M``."""
    M = np.asarray(M)
    n = M.shape[1]
    if M.size == 0 or not np.any(M):
        return np.eye(n, dtype=M.dtype)
    _, sv, vh = np.linalg.svd(M)
    r = int(np.sum(sv > rtol * sv[0]))
    return vh[r:].conj().T


def invert(M, tol=None):
    """Inverse of a square matrix via LU with partial pivoting.

    Raises :class:`Singular` when a pivot is below ``tol.rank`` relative to
    the largest entry of ``M``.
    """
    tol = resolve(tol)
    M = as_matrix(M, square=True)
    n = M.shape[0]
    scale = max_norm(M)
    if scale == 0.0:
        raise Singular("zero matrix is not invertible")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if np.min(pivots) <= tol.rank * scale:
        raise Singular(f"pivot {np.min(pivots):.3e} below tolerance")
    inv = scipy.linalg.lu_solve((lu, piv), np.eye(n), check_finite=False)
    if max_norm(M @ inv - np.eye(n)) > tol.recon:
        raise Singular("inverse residual exceeds tolerance")
    return inv


def geometric_multiplicity(A, lam, tol=None):
    """Dimension of ker(A - lam I), computed in complex arithmetic."""
    tol = resolve(tol)
    A = as_matrix(A, square=True)
    lam = complex(lam)
    spec = eigenvalues(A, tol)
    radius = tol.eig * _cluster_scale(A)
    match = [(z, m) for z, m in spec if abs(z - lam) <= max(radius, tol.eig)]
    if not match:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue to tolerance")
    z, algm = match[0]
    n = A.shape[0]
    N = A.astype(complex) - z * np.eye(n)
    geom = n - rank(N, tol.rank)
    return max(1, min(geom, algm))


# --------------------------------------------------------------------------
# real Jordan form


@dataclass(frozen=True)
class BlockDescriptor:
    """One Jordan block of the real Jordan form.

    ``kind`` is ``"real"`` (eigenvalue ``lam``) or ``"complex"`` (pair
    ``a +/- i b`` with ``b > 0``). A real block spans ``m`` coordinates, a
    complex one spans ``2 m``.
    """

    offset: int
    m: int
    kind: str
    lam: float = 0.0
    a: float = 0.0
    b: float = 0.0

    @property
    def width(self):
        return self.m if self.kind == "real" else 2 * self.m

    @property
    def eigenvalue(self):
        if self.kind == "real":
            return complex(self.lam, 0.0)
        return complex(self.a, self.b)

    def matrix(self):
        """The block itself: ``(lam, 1)`` or ``([a, b; -b, a], I2)`` Jordan block."""
        w = self.width
        J = np.zeros((w, w))
        if self.kind == "real":
            J += self.lam * np.eye(w)
            J += np.eye(w, k=1)
        else:
            rot = np.array([[self.a, self.b], [-self.b, self.a]])
            for i in range(self.m):
                J[2 * i:2 * i + 2, 2 * i:2 * i + 2] = rot
                if i + 1 < self.m:
                    J[2 * i:2 * i + 2, 2 * i + 2:2 * i + 4] = np.eye(2)
        return J


@dataclass(frozen=True)
class JordanDecomposition:
    """``A = U J U^-1`` with ``J`` in real Jordan form."""

    U: np.ndarray
    J: np.ndarray
    blocks: tuple = field(default_factory=tuple)
    U_inv: np.ndarray = None

    def residual(self, A):
        return max_norm(np.asarray(A) - self.U @ self.J @ self.U_inv)


def _normalize_phase(v):
    # largest-modulus entry (first by coordinate order) made real positive
    mags = np.abs(v)
    i = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
    phase = v[i] / abs(v[i])
    return v / phase / np.linalg.norm(v)


def _orth(cols):
    if not cols:
        return None
    Q, R = np.linalg.qr(np.column_stack(cols))
    return Q


def _jordan_chains(A, lam, algm, tol):
    """Jordan chains of ``A`` for eigenvalue ``lam``.

    Returns a list of chains ``[u_1, ..., u_m]`` with ``u_1`` an eigenvector
    and ``(A - lam I) u_j = u_{j-1}``, longest chains first.
    """
    n = A.shape[0]
    dtype = complex if lam.imag != 0 else float
    N = A.astype(dtype) - (lam if dtype is complex else lam.real) * np.eye(n)

    # kernels of N^k until their dimension reaches algm
    kernels = [np.zeros((n, 0), dtype=dtype)]
    Nk = np.eye(n, dtype=dtype)
    while kernels[-1].shape[1] < algm:
        Nk = N @ Nk
        K = null_space(Nk, tol.rank)
        if K.shape[1] <= kernels[-1].shape[1] or len(kernels) > algm:
            raise IllConditioned(
                f"generalized eigenspace of {lam} stalls at dimension "
                f"{kernels[-1].shape[1]} < algebraic multiplicity {algm}")
        kernels.append(K)
    if kernels[-1].shape[1] != algm:
        raise IllConditioned(
            f"generalized eigenspace of {lam} has dimension {kernels[-1].shape[1]}, "
            f"expected {algm}")

    depth = len(kernels) - 1
    dims = [K.shape[1] for K in kernels]
    # number of chains of length >= k is dims[k] - dims[k-1]
    chains = []     # each chain stored top-first: [v, N v, N^2 v, ...]
    eye = np.eye(n, dtype=dtype)
    for k in range(depth, 0, -1):
        for ch in chains:
            ch.append(N @ ch[-1])
        needed = (dims[k] - dims[k - 1]) - len(chains)
        if needed < 0:
            raise IllConditioned(f"inconsistent kernel dimensions for {lam}")
        if needed == 0:
            continue
        # vectors already at level k plus the lower kernel
        span = [kernels[k - 1][:, j] for j in range(dims[k - 1])]
        span += [ch[-1] for ch in chains]
        Kk = kernels[k]
        proj = Kk @ Kk.conj().T
        candidates = [proj @ eye[:, j] for j in range(n)]
        for _ in range(needed):
            Q = _orth(span)
            best, best_norm = None, 0.0
            for c in candidates:
                res = c if Q is None else c - Q @ (Q.conj().T @ c)
                nr = np.linalg.norm(res)
                if nr > best_norm * (1 + 1e-9):
                    best, best_norm = res, nr
            if best is None or best_norm <= tol.rank:
                raise IllConditioned(f"could not select a chain top for {lam}")
            top = _normalize_phase(best)
            span.append(top)
            chains.append([top])
    return [list(reversed(ch)) for ch in chains]


def real_jordan(A, tol=None):
    """Real Jordan decomposition ``A = U J U^-1``.

    Real eigenvalues give ``(lam, 1)`` Jordan blocks. Each conjugate pair
    ``a +/- i b`` (``b > 0``) gives a ``([a, b; -b, a], I2)`` block whose
    columns in ``U`` are the real and imaginary parts of a complex Jordan
    chain. Blocks are ordered by eigenvalue and then by decreasing chain
    length.

    Raises
    ------
    IllConditioned
        If the generalized eigenspaces cannot be resolved to tolerance or the
        reconstruction residual exceeds ``tol.recon * (1 + ||A||_max)``.
    """
    tol = resolve(tol)
    A = as_matrix(A, square=True)
    n = A.shape[0]
    cols = []
    blocks = []
    offset = 0
    for lam, algm in eigenvalues(A, tol):
        if lam.imag < 0:
            continue
        if lam.imag == 0:
            for chain in _jordan_chains(A, lam, algm, tol):
                cols.extend(np.real(chain))
                blocks.append(BlockDescriptor(offset, len(chain), "real", lam=lam.real))
                offset += len(chain)
        else:
            for chain in _jordan_chains(A, lam, algm, tol):
                for w in chain:
                    cols.append(w.real)
                    cols.append(w.imag)
                blocks.append(BlockDescriptor(offset, len(chain), "complex", a=lam.real, b=lam.imag))
                offset += 2 * len(chain)
    if offset != n:
        raise IllConditioned(f"Jordan blocks cover {offset} of {n} coordinates")
    U = np.column_stack(cols) if cols else np.zeros((0, 0))
    J = np.zeros((n, n))
    for blk in blocks:
        J[blk.offset:blk.offset + blk.width, blk.offset:blk.offset + blk.width] = blk.matrix()
    try:
        U_inv = invert(U, tol)
    except Singular as exc:
        raise IllConditioned(f"Jordan basis is singular: {exc}") from exc
    dec = JordanDecomposition(U=U, J=J, blocks=tuple(blocks), U_inv=U_inv)
    res = dec.residual(A)
    if res > tol.recon * _cluster_scale(A):
        raise IllConditioned(f"reconstruction residual {res:.3e} exceeds tolerance")
    return dec

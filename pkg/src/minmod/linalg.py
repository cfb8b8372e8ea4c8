"""Dense numerical kernel.

One-sided Jacobi SVD, Hermitian eigendecomposition, orthonormalization and
functions of positive semidefinite matrices. Everything works on complex
``numpy`` arrays; real input is promoted.

The Jacobi sweep visits column pairs in cyclic row order ``(0,1), (0,2), ...``.
That ordering is deliberate: pairs of columns with disjoint support are never
rotated, and the relative order of the remaining pairs is the same as for any
column-subset, so a block-diagonal matrix produces bit-for-bit the singular
values of its blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numba
import numpy as np

from .errors import EmptySubspace, InvalidInput, NotHermitian, NotPositive, Singular

EPS = np.finfo(float).eps
RANK_RTOL = 1e-14
HERMITIAN_RTOL = 1e-12
CLAMP_RTOL = 1e-12
MAX_SWEEPS = 60
# fixed (shape-independent) so that block-diagonal inputs rotate exactly like their blocks
JACOBI_TOL = 64 * EPS
NULL_RATIO = EPS**4


def as_matrix(A) -> np.ndarray:
    """Coerce ``A`` to a finite complex 2-D array (copy-free when possible)."""
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    if M.ndim != 2:
        raise InvalidInput(f"expected a 2-D array, got shape {M.shape}")
    if M.size == 0:
        raise InvalidInput("matrix has no entries")
    if not np.all(np.isfinite(M)):
        raise InvalidInput("matrix contains NaN or Inf entries")
    return M


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD ``A = U @ diag(s) @ V^H`` with ``r = min(rows, cols)``."""

    U: np.ndarray
    s: np.ndarray
    V: np.ndarray
    rank_tolerance: float

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.s > self.rank_tolerance))

    def reconstruct(self) -> np.ndarray:
        return (self.U * self.s) @ self.V.conj().T


@dataclass(frozen=True)
class EighResult:
    Q: np.ndarray
    eigenvalues: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.Q * self.eigenvalues) @ self.Q.conj().T


@numba.njit(cache=True)
def _jacobi_sweeps(A, V, tol, max_sweeps):
    m, n = A.shape
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                g = 0j
                for i in range(m):
                    ap = A[i, p]
                    aq = A[i, q]
                    alpha += ap.real * ap.real + ap.imag * ap.imag
                    beta += aq.real * aq.real + aq.imag * aq.imag
                    g += ap.conjugate() * aq
                absg = abs(g)
                if absg == 0.0 or absg <= tol * np.sqrt(alpha) * np.sqrt(beta):
                    continue
                # a column at eps^2 of its partner is numerically null; rotating
                # it only drives it into subnormals and erodes V
                if min(alpha, beta) <= NULL_RATIO * max(alpha, beta):
                    continue
                rotated = True
                phase = (g / absg).conjugate()
                zeta = (beta - alpha) / (2.0 * absg)
                sgn = 1.0 if zeta >= 0.0 else -1.0
                t = sgn / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                for i in range(m):
                    ap = A[i, p]
                    aq = A[i, q] * phase
                    A[i, p] = c * ap - s * aq
                    A[i, q] = s * ap + c * aq
                for i in range(V.shape[0]):
                    vp = V[i, p]
                    vq = V[i, q] * phase
                    V[i, p] = c * vp - s * vq
                    V[i, q] = s * vp + c * vq
        if not rotated:
            return sweep + 1
    return max_sweeps


@numba.njit(cache=True)
def _column_norms(A):
    m, n = A.shape
    out = np.empty(n)
    for j in range(n):
        acc = 0.0
        for i in range(m):
            a = A[i, j]
            acc += a.real * a.real + a.imag * a.imag
        out[j] = np.sqrt(acc)
    return out


def complete_orthonormal(Q: np.ndarray, valid: np.ndarray) -> np.ndarray:
    """Replace the columns of ``Q`` not flagged ``valid`` by an orthonormal completion.

    Each new column is the standard basis vector with the largest component
    orthogonal to the columns accepted so far (at least ``sqrt((d - k) / d)``
    with ``k`` of ``d`` directions taken), projected out twice and normalized.
    """
    Q = Q.copy()
    dim = Q.shape[0]
    basis = Q[:, valid]
    for j in np.flatnonzero(~valid):
        R = np.eye(dim, dtype=np.complex128)
        for _ in range(2):
            R = R - basis @ (basis.conj().T @ R)
        k = int(np.argmax(np.linalg.norm(R, axis=0)))
        v = R[:, k]
        for _ in range(2):
            v = v - basis @ (basis.conj().T @ v)
        v = v / np.linalg.norm(v)
        Q[:, j] = v
        basis = np.column_stack([basis, v])
    return Q


def default_rank_tol(smax: float, shape: tuple[int, int]) -> float:
    return float(smax) * max(shape) * RANK_RTOL


def _svd_tall(A: np.ndarray):
    m, n = A.shape
    W = np.array(A, dtype=np.complex128, order="C", copy=True)
    V = np.eye(n, dtype=np.complex128)
    if n > 1:
        _jacobi_sweeps(W, V, JACOBI_TOL, MAX_SWEEPS)
    s = _column_norms(W)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    W = W[:, order]
    V = V[:, order]
    smax = s[0] if n else 0.0
    good = s > smax * EPS * EPS
    good &= s > 0.0
    U = np.zeros((m, n), dtype=np.complex128)
    if np.any(good):
        # W[:, j] / s_j is accurate only to eps * smax / s_j; a phase-fixed QR
        # restores orthogonality without moving the product U S by more than eps * smax
        Q, R = np.linalg.qr(W[:, good] / s[good])
        d = np.diag(R)
        U[:, good] = Q * (d / np.abs(d))
    if not np.all(good):
        U = complete_orthonormal(U, good)
    return U, s, V


def svd(A, tol: float | None = None) -> SvdResult:
    """Singular value decomposition by one-sided Jacobi rotations.

    Parameters
    ----------
    A : array_like
        Finite matrix of shape ``(m, n)``.
    tol : float, optional
        Rank tolerance. Defaults to ``s_max * max(m, n) * 1e-14``.

    Returns
    -------
    SvdResult
        ``s`` is nonincreasing with length ``min(m, n)``.
    """
    A = as_matrix(A)
    m, n = A.shape
    # power-of-two prescale: exact, and keeps squared norms clear of under/overflow
    amax = float(np.max(np.abs(A)))
    e = int(np.frexp(amax)[1]) if amax > 0 else 0
    B = np.ldexp(A.real, -e) + 1j * np.ldexp(A.imag, -e)
    if m >= n:
        U, s, V = _svd_tall(B)
    else:
        V, s, U = _svd_tall(B.conj().T)
    s = np.ldexp(s, e)
    smax = float(s[0]) if s.size else 0.0
    rtol = default_rank_tol(smax, (m, n)) if tol is None else float(tol)
    return SvdResult(U, s, V, rtol)


def domain_singular_pairs(res: SvdResult) -> tuple[np.ndarray, np.ndarray]:
    """Singular values and right singular vectors over the whole domain.

    For a wide ``m x n`` matrix the thin SVD only covers ``m`` domain
    directions; the rest of the domain is kernel. This pads ``s`` with zeros
    and completes ``V`` to an ``n x n`` unitary.
    """
    n, r = res.V.shape
    if r == n:
        return res.s, res.V
    V = complete_orthonormal(
        np.hstack([res.V, np.zeros((n, n - r), dtype=np.complex128)]),
        np.arange(n) < r,
    )
    return np.concatenate([res.s, np.zeros(n - r)]), V


def min_modulus(A) -> float:
    """Smallest singular value counted over the whole domain (``m(A)``)."""
    s, _ = domain_singular_pairs(svd(A))
    return float(s[-1]) if s.size else 0.0


def singular_values(A) -> np.ndarray:
    return svd(A).s


def norm2(A) -> float:
    """Spectral norm."""
    s = svd(A).s
    return float(s[0]) if s.size else 0.0


def is_hermitian(H, rtol: float = HERMITIAN_RTOL) -> bool:
    H = as_matrix(H)
    if H.shape[0] != H.shape[1]:
        return False
    scale = max(1.0, float(np.abs(H).max(initial=0.0)) * H.shape[0])
    return float(np.abs(H - H.conj().T).max(initial=0.0)) <= rtol * scale


def eigh(H) -> EighResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    H = as_matrix(H)
    if not is_hermitian(H):
        raise NotHermitian("eigh requires a Hermitian matrix")
    Hs = 0.5 * (H + H.conj().T)
    w, Q = np.linalg.eigh(Hs)
    return EighResult(Q, w)


def orthonormalize(vectors: Sequence, tol: float = 1e-12) -> np.ndarray:
    """Orthonormal basis (as columns) for the span of ``vectors``.

    A vector is dropped when its component orthogonal to the basis built so
    far has norm below ``tol`` times the largest input norm.
    """
    X = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    if not X:
        raise EmptySubspace("no vectors supplied")
    dim = X[0].size
    if any(v.size != dim for v in X):
        raise InvalidInput("vectors must share a common dimension")
    scale = max(float(np.linalg.norm(v)) for v in X)
    if scale == 0.0:
        raise EmptySubspace("all input vectors are zero")
    basis: list[np.ndarray] = []
    for v in X:
        w = v.copy()
        for _ in range(2):
            for u in basis:
                w = w - u * np.vdot(u, w)
        nw = float(np.linalg.norm(w))
        if nw > tol * scale:
            basis.append(w / nw)
    return np.column_stack(basis)


def _psd_eig(H):
    res = eigh(H)
    w = res.eigenvalues
    hnorm = float(np.abs(w).max(initial=0.0))
    floor = -CLAMP_RTOL * max(hnorm, 0.0)
    if w.size and w[0] < floor:
        raise NotPositive(f"eigenvalue {w[0]:.3e} below clamp window {floor:.3e}")
    return res.Q, np.clip(w, 0.0, None), hnorm


def psd_sqrt(H) -> np.ndarray:
    """Unique positive square root of a positive semidefinite matrix."""
    Q, w, _ = _psd_eig(H)
    S = (Q * np.sqrt(w)) @ Q.conj().T
    return 0.5 * (S + S.conj().T)


def psd_inv_sqrt(H) -> np.ndarray:
    """Inverse of :func:`psd_sqrt`; ``H`` must be positive definite."""
    Q, w, hnorm = _psd_eig(H)
    tau = default_rank_tol(hnorm, (w.size, w.size))
    if w.size == 0 or w[0] <= tau:
        raise Singular("psd_inv_sqrt of a singular matrix")
    S = (Q / np.sqrt(w)) @ Q.conj().T
    return 0.5 * (S + S.conj().T)

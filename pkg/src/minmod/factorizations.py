"""Moore-Penrose inverse, modulus, polar decomposition and bounded transform.

Each factorization is assembled from a single SVD of its input so that the
identity diagnostics compare quantities expressed in one singular basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractionRequired, DimensionMismatch
from .linalg import as_matrix, min_modulus, norm2, psd_sqrt, svd

CONTRACTION_MARGIN = 1e-10


def _rel(residual: np.ndarray, *scales: float) -> float:
    return float(np.linalg.norm(residual)) / max((1.0, *scales))


def pseudoinverse(T, tol: float | None = None) -> np.ndarray:
    """Moore-Penrose inverse, singular values at or below ``tol`` treated as zero."""
    res = svd(T, tol)
    keep = res.s > res.rank_tolerance
    inv = np.zeros_like(res.s)
    inv[keep] = 1.0 / res.s[keep]
    return (res.V * inv) @ res.U.conj().T


def penrose_residuals(T, S=None) -> dict[str, float]:
    """Relative residuals of the four Penrose equations for ``S = T^+``."""
    T = as_matrix(T)
    S = pseudoinverse(T) if S is None else as_matrix(S)
    scale = (norm2(T), norm2(S))
    TS = T @ S
    ST = S @ T
    return {
        "TST=T": _rel(TS @ T - T, *scale),
        "STS=S": _rel(ST @ S - S, *scale),
        "(TS)*=TS": _rel(TS.conj().T - TS, *scale),
        "(ST)*=ST": _rel(ST.conj().T - ST, *scale),
    }


def _range_projector(T, tol=None) -> np.ndarray:
    res = svd(T, tol)
    Ur = res.U[:, res.s > res.rank_tolerance]
    return Ur @ Ur.conj().T


def _kernel_projector(T) -> np.ndarray:
    # kernel of T is the range complement of T^*
    T = as_matrix(T)
    return np.eye(T.shape[1]) - _range_projector(T.conj().T)


def pinv_identity_residuals(T) -> dict[str, float]:
    """Residuals of the standard Moore-Penrose identities (reverse order laws etc.)."""
    T = as_matrix(T)
    Tp = pseudoinverse(T)
    Ts = T.conj().T
    Tsp = pseudoinverse(Ts)
    TsT_p = pseudoinverse(Ts @ T)
    TTs_p = pseudoinverse(T @ Ts)
    P_ker_Tp = _kernel_projector(Tp)
    P_range_perp = np.eye(T.shape[0]) - _range_projector(T)
    return {
        "T++=T": _rel(pseudoinverse(Tp) - T, norm2(T)),
        "(T*)+=(T+)*": _rel(Tsp - Tp.conj().T, norm2(Tp)),
        "N(T+)=R(T)perp": _rel(P_ker_Tp - P_range_perp),
        "(T*T)+=T+(T*)+": _rel(TsT_p - Tp @ Tsp, norm2(TsT_p)),
        "(TT*)+=(T*)+T+": _rel(TTs_p - Tsp @ Tp, norm2(TTs_p)),
        "TT+ projector": _rel((T @ Tp) @ (T @ Tp) - T @ Tp) + _rel((T @ Tp).conj().T - T @ Tp),
        "T+T projector": _rel((Tp @ T) @ (Tp @ T) - Tp @ T) + _rel((Tp @ T).conj().T - Tp @ T),
    }


def least_squares_min_norm(T, y) -> np.ndarray:
    """Least-squares solution of ``T x = y`` with the smallest norm."""
    T = as_matrix(T)
    y = np.asarray(y, dtype=np.complex128).ravel()
    if y.size != T.shape[0]:
        raise DimensionMismatch(f"y has length {y.size}, T has {T.shape[0]} rows")
    return pseudoinverse(T) @ y


def modulus(T) -> np.ndarray:
    """``|T| = (T^* T)^{1/2}``."""
    res = svd(T)
    M = (res.V * res.s) @ res.V.conj().T
    return 0.5 * (M + M.conj().T)


@dataclass(frozen=True)
class PolarResult:
    V: np.ndarray
    modulus: np.ndarray


def polar(T) -> PolarResult:
    """``T = V |T|`` with ``V`` a partial isometry whose initial space is ``R(T^*)``.

    ``V`` vanishes on singular directions at or below the rank tolerance.
    """
    res = svd(T)
    keep = res.s > res.rank_tolerance
    W = res.U[:, keep] @ res.V[:, keep].conj().T
    M = (res.V * res.s) @ res.V.conj().T
    return PolarResult(W, 0.5 * (M + M.conj().T))


def polar_diagnostics(T, result: PolarResult | None = None) -> dict[str, float]:
    T = as_matrix(T)
    r = polar(T) if result is None else result
    P = r.V.conj().T @ r.V
    res = svd(T)
    Vr = res.V[:, res.s > res.rank_tolerance]
    return {
        "V|T|=T": _rel(r.V @ r.modulus - T, norm2(T)),
        "V*V idempotent": _rel(P @ P - P),
        "V*V = P_R(T*)": _rel(P - Vr @ Vr.conj().T),
        "|T|^2=T*T": _rel(r.modulus @ r.modulus - T.conj().T @ T, norm2(T) ** 2),
    }


@dataclass(frozen=True)
class TransformResult:
    F: np.ndarray
    Q: np.ndarray


def bounded_transform(T) -> TransformResult:
    """``F_T = T (I + T^* T)^{-1/2}`` and ``Q_T = (I + T^* T)^{-1/2}``."""
    T = as_matrix(T)
    res = svd(T)
    n = T.shape[1]
    shrink = 1.0 / np.sqrt(1.0 + res.s**2)
    Q = np.eye(n, dtype=np.complex128) - (res.V * (1.0 - shrink)) @ res.V.conj().T
    F = (res.U * (res.s * shrink)) @ res.V.conj().T
    return TransformResult(F, 0.5 * (Q + Q.conj().T))


def transform_diagnostics(T, result: TransformResult | None = None) -> dict[str, float]:
    T = as_matrix(T)
    r = bounded_transform(T) if result is None else result
    n = T.shape[1]
    I = np.eye(n)
    FsF = r.F.conj().T @ r.F
    return {
        "||F||": norm2(r.F),
        "Q=(I-F*F)^1/2": _rel(r.Q - psd_sqrt(I - FsF)),
        "F*F=I-(I+T*T)^-1": _rel(FsF - (I - np.linalg.inv(I + T.conj().T @ T))),
        "F=TQ": _rel(r.F - T @ r.Q, norm2(T)),
    }


def inverse_transform(F) -> np.ndarray:
    """Recover ``T = F (I - F^* F)^{-1/2}`` from a strict contraction."""
    res = svd(F)
    top = float(res.s[0]) if res.s.size else 0.0
    if top >= 1.0 - CONTRACTION_MARGIN:
        raise ContractionRequired(f"||F|| = {top!r} is not below 1 - {CONTRACTION_MARGIN}")
    return (res.U * (res.s / np.sqrt(1.0 - res.s**2))) @ res.V.conj().T


def transform_moduli_check(T) -> dict[str, tuple[float, float]]:
    """Minimum modulus of the bounded transform, two ways each.

    ``forward``: ``(m(F_T), m(T)/sqrt(1 + m(T)^2))``.
    ``backward``: ``(m(T)^2, m(F_T)^2/(1 - m(F_T)^2))``.
    """
    T = as_matrix(T)
    mT = min_modulus(T)
    mF = min_modulus(bounded_transform(T).F)
    return {
        "forward": (mF, float(mT / np.sqrt(1.0 + mT * mT))),
        "backward": (mT * mT, float(mF * mF / (1.0 - mF * mF))),
    }


def mp_modulus_identities(T) -> dict[str, float]:
    """Residuals of ``|T^+| = |T^*|^+`` and ``|(T^+)^*| = |T|^+``."""
    T = as_matrix(T)
    Tp = pseudoinverse(T)
    scale = max(1.0, norm2(Tp))
    r1 = np.linalg.norm(modulus(Tp) - pseudoinverse(modulus(T.conj().T))) / scale
    r2 = np.linalg.norm(modulus(Tp.conj().T) - pseudoinverse(modulus(T))) / scale
    return {"|T+|=|T*|+": float(r1), "|(T+)*|=|T|+": float(r2)}

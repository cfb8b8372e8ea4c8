"""Minimum modulus, reduced minimum modulus and numerical-range bounds.

For a dense ``m x n`` matrix the minimum modulus is the smallest singular
value over the whole ``n``-dimensional domain (a wide matrix therefore has
``m(T) = 0``), and the reduced minimum modulus is the smallest singular value
above the rank tolerance. For a diagonal operator both are evaluated exactly
from the spectrum description.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotHermitian
from .linalg import as_matrix, domain_singular_pairs, eigh, is_hermitian, min_modulus, svd
from .operators import INFINITE, DiagonalOperator, Operator, SpectrumSpec, TailKind
from .factorizations import modulus


@dataclass(frozen=True)
class ModuliReport:
    m: float
    gamma: float | None
    rank: int | float
    closed_range: bool
    injective: bool
    m_lower_numerical: float | None = None
    M_upper_numerical: float | None = None

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "gamma": self.gamma,
            "rank": self.rank,
            "closed_range": self.closed_range,
            "injective": self.injective,
            "m_lower_numerical": self.m_lower_numerical,
            "M_upper_numerical": self.M_upper_numerical,
        }


dense_minimum_modulus = min_modulus


def reduced_minimum_modulus(T, tol: float | None = None) -> float | None:
    """``gamma(T)``: smallest singular value above the rank tolerance (None for T = 0)."""
    res = svd(T, tol)
    nz = res.s[res.s > res.rank_tolerance]
    return float(nz[-1]) if nz.size else None


# -- exact evaluation on spectrum descriptions ------------------------------


def spectrum_abs_inf(spec: SpectrumSpec, exclude_zero: bool = False) -> Fraction | None:
    """``inf |lambda|`` over the spectrum closure (None when nothing qualifies)."""
    cands: list[Fraction] = []
    for a in spec.atoms:
        if not (exclude_zero and a.value == 0):
            cands.append(abs(a.value))
    for t in spec.tails:
        v, _ = t.abs_inf(exclude_zero=exclude_zero)
        cands.append(v)
    return min(cands) if cands else None


def spectrum_bounds(spec: SpectrumSpec) -> tuple[Fraction, Fraction | float]:
    """``(inf, sup)`` of the real spectrum; sup may be ``inf``."""
    lows: list[Fraction] = [a.value for a in spec.atoms]
    highs: list[Fraction | float] = [a.value for a in spec.atoms]
    for t in spec.tails:
        first = t.value(1)
        if t.kind is TailKind.INCREASING_UNBOUNDED:
            lows.append(first)
            highs.append(INFINITE)
        elif t.kind is TailKind.INCREASING_TO:
            lows.append(first)
            highs.append(t.limit)
        else:
            lows.append(t.limit)
            highs.append(first)
    return min(lows), max(highs)


def _diagonal_report(spec: SpectrumSpec) -> ModuliReport:
    m = spectrum_abs_inf(spec)
    gamma = spectrum_abs_inf(spec, exclude_zero=True)
    if spec.finitely_supported:
        rank: int | float = sum(a.mult for a in spec.atoms if a.value != 0)
    else:
        rank = INFINITE
    lo, hi = spectrum_bounds(spec)
    return ModuliReport(
        m=float(m),
        gamma=None if gamma is None else float(gamma),
        rank=rank,
        closed_range=gamma is None or gamma > 0,
        injective=not spec.has_zero,
        m_lower_numerical=float(lo),
        M_upper_numerical=float(hi),
    )


def moduli(T: Operator) -> ModuliReport:
    """Minimum-modulus summary of a dense matrix or diagonal operator."""
    if isinstance(T, DiagonalOperator):
        return _diagonal_report(T.spectrum)
    T = as_matrix(T)
    res = svd(T)
    s_dom, _ = domain_singular_pairs(res)
    rank = res.rank
    nz = res.s[res.s > res.rank_tolerance]
    lower = upper = None
    if is_hermitian(T):
        w = eigh(T).eigenvalues
        lower, upper = float(w[0]), float(w[-1])
    return ModuliReport(
        m=float(s_dom[-1]) if s_dom.size else 0.0,
        gamma=float(nz[-1]) if nz.size else None,
        rank=rank,
        closed_range=True,
        injective=rank == T.shape[1],
        m_lower_numerical=lower,
        M_upper_numerical=upper,
    )


# -- paired checks: each returns two independently computed numbers ---------


def distance_to_spectrum_check(T: Operator) -> tuple[float, float]:
    """``(m(T), dist(0, sigma(|T|)))``.

    The first number comes from the singular values, the second from the
    eigenvalues of the modulus ``|T| = (T^* T)^{1/2}``.
    """
    if isinstance(T, DiagonalOperator):
        spec = T.spectrum
        m = float(spectrum_abs_inf(spec))
        # closure of |values|: atoms, every tail element, and tail limits
        pts = [abs(a.value) for a in spec.atoms]
        for t in spec.tails:
            pts.extend(abs(t.value(k)) for k in t.abs_candidates())
            if t.bounded:
                pts.append(abs(t.limit))
        return m, float(min(pts))
    T = as_matrix(T)
    w = eigh(modulus(T)).eigenvalues
    return dense_minimum_modulus(T), float(np.min(np.abs(w)))


def power_modulus_check(T: Operator, n: int) -> tuple[float, float]:
    """``(m(T^n), m(T)^n)`` for a Hermitian matrix or diagonal operator."""
    if n < 1:
        raise ValueError("power must be >= 1")
    if isinstance(T, DiagonalOperator):
        spec = T.spectrum
        pts = [abs(a.value) ** n for a in spec.atoms]
        for t in spec.tails:
            pts.extend(abs(t.value(k)) ** n for k in t.abs_candidates())
            if t.bounded:
                pts.append(abs(t.limit) ** n)
        return float(min(pts)), float(spectrum_abs_inf(spec)) ** n
    T = as_matrix(T)
    if not is_hermitian(T):
        raise NotHermitian("power identity is checked for self-adjoint input only")
    Tn = np.linalg.matrix_power(T, n)
    return dense_minimum_modulus(Tn), dense_minimum_modulus(T) ** n


def gram_modulus_check(T: Operator) -> tuple[float, float]:
    """``(m(T^* T), m(T)^2)``."""
    if isinstance(T, DiagonalOperator):
        return power_modulus_check(T, 2)
    T = as_matrix(T)
    return dense_minimum_modulus(T.conj().T @ T), dense_minimum_modulus(T) ** 2


def remark_inverse_check(T) -> tuple[float, float]:
    """``(m(T), 1/||T^{-1}||)`` for an invertible square matrix."""
    T = as_matrix(T)
    inv_norm = svd(np.linalg.inv(T)).s[0]
    return dense_minimum_modulus(T), float(1.0 / inv_norm)


def sampled_minimum(T, samples: int = 10_000, seed: int = 42) -> float:
    """Smallest ``||T x||`` over random unit vectors (an upper bound on ``m(T)``)."""
    T = as_matrix(T)
    rng = np.random.default_rng(seed)
    n = T.shape[1]
    X = rng.standard_normal((n, samples)) + 1j * rng.standard_normal((n, samples))
    X /= np.linalg.norm(X, axis=0)
    return float(np.min(np.linalg.norm(T @ X, axis=0)))


def sampled_numerical_lower_bound(H, samples: int = 10_000, seed: int = 42) -> float:
    """Smallest ``<H x, x>`` over random unit vectors."""
    H = as_matrix(H)
    rng = np.random.default_rng(seed)
    n = H.shape[1]
    X = rng.standard_normal((n, samples)) + 1j * rng.standard_normal((n, samples))
    X /= np.linalg.norm(X, axis=0)
    return float(np.min(np.real(np.einsum("ij,ij->j", X.conj(), H @ X))))


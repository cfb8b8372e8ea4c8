"""Regular Sturm-Liouville problems by finite differences.

``L u = (1/w) [ -(p u')' + q u ]`` on ``[a, b]`` with separated boundary
conditions ``beta u + gamma u' = 0`` at each end. The flux term uses midpoint
values of ``p``; a Robin end keeps its node and eliminates the ghost value
through the boundary condition, with the boundary row halved so the matrix
stays symmetric. A Dirichlet end (``gamma == 0``) drops its node.

The generalized problem ``A u = lambda W u`` is symmetrized to
``S = W^{-1/2} A W^{-1/2}``, a symmetric tridiagonal matrix whose eigenvalues
are located by bisection on Sturm sequence counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Union

import numba
import numpy as np
from numpy.polynomial import Polynomial

from .errors import DegenerateBoundary, InvalidInput, KTooLarge, NonPositiveWeight

Coefficient = Union[Callable[[np.ndarray], np.ndarray], np.ndarray, float]

EIG_RTOL = 1e-10
ZERO_RTOL = 1e-8
MIN_GRID = 16


def const(c: float) -> Polynomial:
    return Polynomial([float(c)])


def poly(coeffs) -> Polynomial:
    """Polynomial coefficient ``c0 + c1 t + c2 t^2 + ...``."""
    return Polynomial([float(c) for c in coeffs])


@dataclass(frozen=True)
class SLProblem:
    p: Coefficient
    q: Coefficient
    w: Coefficient
    a: float
    b: float
    robin_left: tuple[float, float]
    robin_right: tuple[float, float]
    grid_n: int = 2000

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.grid_n - 1)

    def grid(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.grid_n)

    @classmethod
    def from_json(cls, d: dict | str) -> "SLProblem":
        if isinstance(d, str):
            d = json.loads(d)
        try:
            return cls(
                p=_coef_from_json(d["p"]),
                q=_coef_from_json(d.get("q", {"const": 0.0})),
                w=_coef_from_json(d.get("w", {"const": 1.0})),
                a=float(d["a"]),
                b=float(d["b"]),
                robin_left=tuple(float(v) for v in d["robin_left"]),
                robin_right=tuple(float(v) for v in d["robin_right"]),
                grid_n=int(d.get("n", 2000)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed Sturm-Liouville problem: {exc}") from exc


def _coef_from_json(spec) -> Coefficient:
    if not isinstance(spec, dict) or len(spec) != 1:
        raise InvalidInput(f"coefficient must be {{'const': r}}, {{'poly': [...]}} or {{'samples': [...]}}, got {spec!r}")
    if "const" in spec:
        return const(spec["const"])
    if "poly" in spec:
        return poly(spec["poly"])
    if "samples" in spec:
        return np.asarray(spec["samples"], dtype=float)
    raise InvalidInput(f"unknown coefficient form {spec!r}")


def _sample(f: Coefficient, x: np.ndarray, grid_n: int) -> np.ndarray:
    """Coefficient values on the grid nodes."""
    if isinstance(f, np.ndarray):
        if f.shape != (grid_n,):
            raise InvalidInput(f"sampled coefficient needs {grid_n} values, got {f.shape}")
        return f.astype(float)
    if callable(f):
        return np.broadcast_to(np.asarray(f(x), dtype=float), x.shape).copy()
    return np.full(x.shape, float(f))


def _midpoints(f: Coefficient, x: np.ndarray, grid_n: int) -> np.ndarray:
    if isinstance(f, np.ndarray):
        v = _sample(f, x, grid_n)
        return 0.5 * (v[:-1] + v[1:])
    xm = 0.5 * (x[:-1] + x[1:])
    return _sample(f, xm, xm.size) if callable(f) else np.full(xm.shape, float(f))


@dataclass(frozen=True)
class Discretization:
    """``A`` (diag ``d``, offdiag ``e``), weights ``W`` and the symmetrized ``S``."""

    d: np.ndarray
    e: np.ndarray
    weights: np.ndarray
    s_diag: np.ndarray
    s_off: np.ndarray
    nodes: np.ndarray

    def matrix_A(self) -> np.ndarray:
        return np.diag(self.d) + np.diag(self.e, 1) + np.diag(self.e, -1)

    def matrix_S(self) -> np.ndarray:
        return np.diag(self.s_diag) + np.diag(self.s_off, 1) + np.diag(self.s_off, -1)


def discretize(prob: SLProblem) -> Discretization:
    n = prob.grid_n
    if n < MIN_GRID:
        raise InvalidInput(f"grid_n must be at least {MIN_GRID}")
    if not prob.a < prob.b:
        raise InvalidInput("need a < b")
    for beta, gamma in (prob.robin_left, prob.robin_right):
        if abs(beta) + abs(gamma) == 0:
            raise DegenerateBoundary("boundary coefficients cannot both vanish")
    x = prob.grid()
    h = prob.h
    w = _sample(prob.w, x, n)
    if np.any(w <= 0):
        raise NonPositiveWeight("w must be positive at every grid point")
    q = _sample(prob.q, x, n)
    p_nodes = _sample(prob.p, x, n)
    pm = _midpoints(prob.p, x, n)
    if np.any(p_nodes <= 0) or np.any(pm <= 0):
        raise InvalidInput("p must be positive on [a, b]")

    d = np.empty(n)
    d[1:-1] = (pm[:-1] + pm[1:]) / h**2 + q[1:-1]
    e = -pm / h**2
    weights = w.copy()

    beta1, gamma1 = prob.robin_left
    beta2, gamma2 = prob.robin_right
    # half-cell rows: p(a) u'(a) = -p(a) (beta/gamma) u(a), similarly at b
    if gamma1 != 0:
        d[0] = pm[0] / h**2 - p_nodes[0] * beta1 / (gamma1 * h) + 0.5 * q[0]
        weights[0] = 0.5 * w[0]
    if gamma2 != 0:
        d[-1] = pm[-1] / h**2 + p_nodes[-1] * beta2 / (gamma2 * h) + 0.5 * q[-1]
        weights[-1] = 0.5 * w[-1]

    lo = 1 if gamma1 == 0 else 0
    hi = n - 1 if gamma2 == 0 else n
    d = d[lo:hi]
    e = e[lo : hi - 1]
    weights = weights[lo:hi]
    r = 1.0 / np.sqrt(weights)
    return Discretization(d, e, weights, d * r * r, e * r[:-1] * r[1:], x[lo:hi])


@numba.njit(cache=True)
def _count_below(d, e2, x, pivmin):
    """Number of eigenvalues of the symmetric tridiagonal (d, e) strictly below x."""
    count = 0
    t = d[0] - x
    if abs(t) < pivmin:
        t = -pivmin
    if t < 0.0:
        count += 1
    for i in range(1, d.size):
        t = d[i] - x - e2[i - 1] / t
        if abs(t) < pivmin:
            t = -pivmin
        if t < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _bisect(d, e2, indices, lo0, hi0, rtol, atol, pivmin):
    out = np.empty(indices.size)
    for j in range(indices.size):
        idx = indices[j]
        lo = lo0
        hi = hi0
        for _ in range(2000):
            if hi - lo <= max(rtol * max(abs(lo), abs(hi)), atol):
                break
            mid = 0.5 * (lo + hi)
            if _count_below(d, e2, mid, pivmin) > idx:
                hi = mid
            else:
                lo = mid
        out[j] = 0.5 * (lo + hi)
    return out


def tridiagonal_eigenvalues(d, e, k: int, rtol: float = EIG_RTOL) -> np.ndarray:
    """The ``k`` smallest eigenvalues of a real symmetric tridiagonal matrix."""
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    if not 1 <= k <= d.size:
        raise KTooLarge(f"k={k} outside 1..{d.size}")
    radius = np.zeros_like(d)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo, hi = float(np.min(d - radius)), float(np.max(d + radius))
    scale = max(abs(lo), abs(hi), np.finfo(float).tiny)
    pad = 2 * np.finfo(float).eps * scale * d.size
    pivmin = np.finfo(float).tiny * max(1.0, float(np.max(e**2, initial=0.0)))
    return _bisect(d, e * e, np.arange(k), lo - pad, hi + pad, rtol, 1e-15 * scale, pivmin)


@dataclass(frozen=True)
class SLSpectrumReport:
    eigenvalues: np.ndarray
    reciprocals: np.ndarray
    reciprocals_decreasing: bool
    growth_ratio: float | None
    am_certified: bool
    zero_in_point_spectrum: bool
    proxy: str = "unboundedness judged from growth of finitely many eigenvalues"

    def as_dict(self) -> dict:
        return {
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "reciprocal_decay": {
                "reciprocals": [float(v) for v in self.reciprocals],
                "decreasing": self.reciprocals_decreasing,
            },
            "growth_ratio": self.growth_ratio,
            "am_certified": self.am_certified,
            "zero_in_point_spectrum": self.zero_in_point_spectrum,
            "proxy": self.proxy,
        }


def sl_eigenvalues(prob: SLProblem, k: int) -> SLSpectrumReport:
    """First ``k`` eigenvalues and the spectral AM certificate.

    ``am_certified`` requires distinct eigenvalues, ``|lambda_k| >= 2
    |lambda_{k//2}|`` as a stand-in for ``|lambda_n| -> infinity``, and no
    eigenvalue that is numerically zero.
    """
    if k < 1 or k > prob.grid_n - 2:
        raise KTooLarge(f"k must lie in 1..{prob.grid_n - 2}")
    disc = discretize(prob)
    lam = tridiagonal_eigenvalues(disc.s_diag, disc.s_off, k)
    mags = np.abs(lam)
    big = float(mags.max())
    zero = bool(np.any(mags <= ZERO_RTOL * max(big, np.finfo(float).tiny)))
    with np.errstate(divide="ignore"):
        recip = np.where(mags > 0, 1.0 / np.where(mags > 0, mags, 1.0), np.inf)
    gaps = np.diff(lam)
    distinct = bool(np.all(gaps > EIG_RTOL * max(big, 1.0)))
    growth = None
    if k >= 2 and mags[k // 2 - 1] > 0:
        growth = float(mags[-1] / mags[k // 2 - 1])
    certified = distinct and growth is not None and growth >= 2.0 and not zero
    return SLSpectrumReport(
        eigenvalues=lam,
        reciprocals=recip,
        reciprocals_decreasing=bool(np.all(np.diff(recip) < 0)),
        growth_ratio=growth,
        am_certified=bool(certified),
        zero_in_point_spectrum=zero,
    )

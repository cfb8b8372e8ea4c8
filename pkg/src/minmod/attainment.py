"""Minimum attainment, absolute minimum attainment and the related identities.

Dense operators always attain their minimum modulus; the useful output there
is the witness and the residual of the eigen-equation it satisfies. Diagonal
operators are decided exactly from their spectrum description.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    NotPositive,
    NotReducing,
    PositivityRequired,
    Singular,
    StaleCertificate,
    UnvalidatedSpec,
)
from .factorizations import modulus, pseudoinverse
from .linalg import (
    CLAMP_RTOL,
    as_matrix,
    domain_singular_pairs,
    eigh,
    is_hermitian,
    min_modulus,
    norm2,
    orthonormalize,
    psd_sqrt,
    svd,
)
from .moduli import moduli, spectrum_abs_inf
from .operators import (
    DiagonalOperator,
    Operator,
    SpectrumSpec,
    TailKind,
    reciprocal_spectrum,
    restrict,
    subspace_basis,
    truncate,
    validate_spectrum,
)

WITNESS_RTOL = 1e-8


@dataclass(frozen=True)
class AttainmentCertificate:
    """Verdict on minimum attainment.

    ``witness`` is a unit vector for dense input, and a small dict naming the
    atom value or ``(tail, k)`` index for diagonal input.
    """

    attains: bool
    m_value: float
    witness: np.ndarray | dict | None
    residual: float = 0.0


def is_min_attaining(T: Operator) -> AttainmentCertificate:
    if isinstance(T, DiagonalOperator):
        return _diagonal_attainment(T.spectrum)
    T = as_matrix(T)
    s, V = domain_singular_pairs(svd(T))
    m = float(s[-1])
    x = V[:, -1]
    residual = float(np.linalg.norm(modulus(T) @ x - m * x))
    return AttainmentCertificate(True, m, x, residual)


def _diagonal_attainment(spec: SpectrumSpec) -> AttainmentCertificate:
    m = spectrum_abs_inf(spec)
    for a in spec.atoms:
        if abs(a.value) == m:
            return AttainmentCertificate(True, float(m), {"atom": a.value})
    for i, t in enumerate(spec.tails):
        v, k = t.abs_inf()
        if k is not None and v == m:
            return AttainmentCertificate(True, float(m), {"tail": i, "k": k, "value": t.value(k)})
    return AttainmentCertificate(False, float(m), None)


def witness_spectral_check(T, cert: AttainmentCertificate) -> float:
    """Residual ``|| |T| x - m(T) x ||`` of a dense certificate's witness."""
    if not cert.attains or not isinstance(cert.witness, np.ndarray):
        raise StaleCertificate("certificate carries no vector witness")
    T = as_matrix(T)
    m = min_modulus(T)
    x = cert.witness
    residual = float(np.linalg.norm(modulus(T) @ x - m * x))
    if residual > WITNESS_RTOL * max(1.0, m):
        raise StaleCertificate(f"witness residual {residual:.3e} exceeds tolerance")
    return residual


def _is_psd(T: np.ndarray) -> bool:
    if not is_hermitian(T):
        return False
    w = eigh(T).eigenvalues
    return bool(w[0] >= -CLAMP_RTOL * max(1.0, float(np.abs(w).max())))


@dataclass(frozen=True)
class EquivalenceReport:
    memberships: tuple[bool, bool, bool]
    m_T: float
    m_modulus: float
    m_gram: float
    m_sqrt: float | None = None
    m_square: float | None = None

    def relations_hold(self, rtol: float = 1e-8) -> bool:
        ok = abs(self.m_modulus - self.m_T) <= rtol * max(1.0, self.m_T)
        ok &= abs(self.m_gram - self.m_T**2) <= rtol * max(1.0, self.m_T**2)
        if self.m_sqrt is not None:
            ok &= abs(self.m_sqrt - np.sqrt(self.m_T)) <= rtol * max(1.0, self.m_sqrt)
            ok &= abs(self.m_square - self.m_T**2) <= rtol * max(1.0, self.m_T**2)
        return bool(ok)


def min_attaining_equivalences(T, require_positive: bool = False) -> EquivalenceReport:
    """Certificates for ``T``, ``|T|`` and ``T^*T`` and, for positive ``T``, its root and square."""
    T = as_matrix(T)
    certs = [is_min_attaining(X) for X in (T, modulus(T), T.conj().T @ T)]
    positive = _is_psd(T)
    if require_positive and not positive:
        raise NotPositive("square-root and power relations need a positive operator")
    m_sqrt = m_square = None
    if positive:
        m_sqrt = is_min_attaining(psd_sqrt(T)).m_value
        m_square = is_min_attaining(T @ T).m_value
    return EquivalenceReport(
        tuple(c.attains for c in certs),
        certs[0].m_value,
        certs[1].m_value,
        certs[2].m_value,
        m_sqrt,
        m_square,
    )


@dataclass(frozen=True)
class DualityReport:
    m_T: float
    m_adjoint: float
    gamma: float | None
    pinv_norm: float
    pinv_witness: np.ndarray
    pinv_witness_gap: float
    gamma_times_pinv_norm: float | None
    hypothesis_holds: bool
    certificates_agree: bool | None


def adjoint_duality_check(T) -> DualityReport:
    """Compare attainment of ``T`` and ``T^*`` and the norm attainment of ``T^+``."""
    T = as_matrix(T)
    c = is_min_attaining(T)
    c_adj = is_min_attaining(T.conj().T)
    gamma = moduli(T).gamma
    Tp = pseudoinverse(T)
    res = svd(Tp)
    top = float(res.s[0]) if res.s.size else 0.0
    x = res.V[:, 0]
    gap = abs(float(np.linalg.norm(Tp @ x)) - top)
    hypothesis = abs(c.m_value - c_adj.m_value) <= 1e-10
    return DualityReport(
        m_T=c.m_value,
        m_adjoint=c_adj.m_value,
        gamma=gamma,
        pinv_norm=top,
        pinv_witness=x,
        pinv_witness_gap=gap,
        gamma_times_pinv_norm=None if gamma is None else gamma * top,
        hypothesis_holds=hypothesis,
        certificates_agree=(c.attains == c_adj.attains) if hypothesis else None,
    )


def restricted_min(T, M) -> float:
    """Minimum modulus of ``T`` restricted to ``span(M)``."""
    return min_modulus(restrict(T, M))


def restriction_duality_check(T, M) -> tuple[float, float]:
    """``(m(T|_M), 1/||T^{-1}|_{T(M)}||)`` for invertible ``T``."""
    T = as_matrix(T)
    res = svd(T)
    if T.shape[0] != T.shape[1] or res.rank < T.shape[1]:
        raise Singular("restriction duality needs an invertible matrix")
    left = restricted_min(T, M)
    image = orthonormalize(list((T @ subspace_basis(M)).T))
    inv_on_image = np.linalg.solve(T, image)
    return left, 1.0 / norm2(inv_on_image)


@dataclass(frozen=True)
class DecompositionReport:
    m_T: float
    m_blocks: tuple[float, float | None]
    min_law_holds: bool
    pinv_block_residual: float
    pinv_offdiag_norm: float


def reduced_decomposition_check(T, mask: Sequence[bool], tol: float = 1e-12) -> DecompositionReport:
    """Block decomposition along the coordinate subspace selected by ``mask``."""
    T = as_matrix(T)
    mask = np.asarray(mask, dtype=bool)
    if T.shape[0] != T.shape[1] or mask.size != T.shape[0]:
        raise ValueError("mask must select coordinates of a square matrix")
    P = np.diag(mask.astype(float))
    if np.linalg.norm(P @ T - T @ P) > tol * max(1.0, norm2(T)):
        raise NotReducing("the coordinate subspace does not reduce T")
    T1 = T[np.ix_(mask, mask)]
    T2 = T[np.ix_(~mask, ~mask)]
    m1 = min_modulus(T1) if T1.size else None
    m2 = min_modulus(T2) if T2.size else None
    m = min_modulus(T)
    parts = [x for x in (m1, m2) if x is not None]
    Tp = pseudoinverse(T)
    resid = 0.0
    for blk, sel in ((T1, mask), (T2, ~mask)):
        if blk.size:
            resid = max(resid, float(np.linalg.norm(Tp[np.ix_(sel, sel)] - pseudoinverse(blk))))
    off = float(np.linalg.norm(Tp[np.ix_(mask, ~mask)]) + np.linalg.norm(Tp[np.ix_(~mask, mask)]))
    return DecompositionReport(m, (m1, m2), m == min(parts), resid, off)


# -- symbolic classification ----------------------------------------------


class FailedCondition(enum.Enum):
    INCREASING_SEQUENCE_PRESENT = "INCREASING_SEQUENCE_PRESENT"
    DECREASING_TAIL_PRESENT = "DECREASING_TAIL_PRESENT"
    MULTIPLE_LIMIT_POINTS = "MULTIPLE_LIMIT_POINTS"
    MULTIPLE_INFINITE_MULTIPLICITIES = "MULTIPLE_INFINITE_MULTIPLICITIES"
    LIMIT_POINT_MISMATCH = "LIMIT_POINT_MISMATCH"
    INF_NOT_ATTAINED = "INF_NOT_ATTAINED"
    NOT_CLOSED_RANGE = "NOT_CLOSED_RANGE"
    FINITE_LIMIT_POINT = "FINITE_LIMIT_POINT"
    INFINITE_MULTIPLICITY = "INFINITE_MULTIPLICITY"


@dataclass(frozen=True)
class NormAttainingVerdict:
    passed: bool
    failed_condition: FailedCondition | None = None


def _require_positive(spec: SpectrumSpec):
    if not spec.positive:
        raise PositivityRequired("spectrum must be declared positive")


def _limit_multiplicity_conditions(spec: SpectrumSpec) -> FailedCondition | None:
    limits = spec.limit_points()
    infinite = spec.infinite_atoms()
    if len(limits) > 1:
        return FailedCondition.MULTIPLE_LIMIT_POINTS
    if len(infinite) > 1:
        return FailedCondition.MULTIPLE_INFINITE_MULTIPLICITIES
    if limits and infinite and limits[0] != infinite[0].value:
        return FailedCondition.LIMIT_POINT_MISMATCH
    return None


def is_norm_attaining_spec(spec: SpectrumSpec) -> NormAttainingVerdict:
    """Structural test for absolutely norm attaining positive diagonal operators.

    Every subset of eigenvalues must have a maximum (no increasing tails),
    there is at most one limit point and at most one eigenvalue of infinite
    multiplicity, and if both exist they coincide.
    """
    _require_positive(spec)
    if any(t.kind is not TailKind.DECREASING_TO for t in spec.tails):
        return NormAttainingVerdict(False, FailedCondition.INCREASING_SEQUENCE_PRESENT)
    failed = _limit_multiplicity_conditions(spec)
    return NormAttainingVerdict(failed is None, failed)


class AMMode(enum.Enum):
    BOUNDED_INVERTIBLE = "BOUNDED_INVERTIBLE"
    UNBOUNDED_SELFADJOINT = "UNBOUNDED_SELFADJOINT"
    NECESSARY_SCREEN = "NECESSARY_SCREEN"


@dataclass(frozen=True)
class AMVerdict:
    """Absolute-minimum-attainment verdict.

    ``is_am`` is None when only necessary conditions were checked and they
    all passed; ``necessary_conditions_passed`` is set in that screening mode.
    """

    is_am: bool | None
    mode: AMMode
    failed_condition: FailedCondition | None = None
    necessary_conditions_passed: bool | None = None

    def as_dict(self) -> dict:
        return {
            "is_am": self.is_am,
            "mode": self.mode.value,
            "failed_condition": None if self.failed_condition is None else self.failed_condition.value,
            "necessary_conditions_passed": self.necessary_conditions_passed,
        }


def _classify_unbounded(spec: SpectrumSpec) -> AMVerdict:
    mode = AMMode.UNBOUNDED_SELFADJOINT
    if any(t.kind is TailKind.DECREASING_TO for t in spec.tails):
        return AMVerdict(False, mode, FailedCondition.DECREASING_TAIL_PRESENT)
    if any(t.kind is TailKind.INCREASING_TO for t in spec.tails):
        return AMVerdict(False, mode, FailedCondition.FINITE_LIMIT_POINT)
    # the kernel splits off as a reducing block and never obstructs attainment
    infinite = [a for a in spec.infinite_atoms() if a.value != 0]
    if len(infinite) > 1:
        return AMVerdict(False, mode, FailedCondition.MULTIPLE_INFINITE_MULTIPLICITIES)
    if infinite:
        return AMVerdict(False, mode, FailedCondition.INFINITE_MULTIPLICITY)
    return AMVerdict(True, mode)


_AN_TO_AM = {FailedCondition.INCREASING_SEQUENCE_PRESENT: FailedCondition.DECREASING_TAIL_PRESENT}


def _classify_bounded_invertible(spec: SpectrumSpec) -> AMVerdict:
    verdict = is_norm_attaining_spec(reciprocal_spectrum(spec))
    failed = verdict.failed_condition
    return AMVerdict(verdict.passed, AMMode.BOUNDED_INVERTIBLE, _AN_TO_AM.get(failed, failed))


def _screen(spec: SpectrumSpec) -> AMVerdict:
    mode = AMMode.NECESSARY_SCREEN
    failed = None
    if any(t.kind is TailKind.DECREASING_TO for t in spec.tails):
        failed = FailedCondition.DECREASING_TAIL_PRESENT
    else:
        failed = _limit_multiplicity_conditions(spec)
    if failed is None:
        gamma = spectrum_abs_inf(spec, exclude_zero=True)
        if gamma is not None and gamma == 0:
            failed = FailedCondition.NOT_CLOSED_RANGE
        elif not _diagonal_attainment(spec).attains:
            failed = FailedCondition.INF_NOT_ATTAINED
    if failed is None:
        return AMVerdict(None, mode, None, True)
    return AMVerdict(False, mode, failed, False)


def classify_am(spec: SpectrumSpec) -> AMVerdict:
    """Decide absolute minimum attainment of a positive diagonal operator.

    * An increasing unbounded tail puts the operator in the unbounded
      self-adjoint regime, where AM is equivalent to a compact inverse on the
      kernel complement: finite multiplicities and no finite limit point.
    * A bounded spectrum bounded away from zero is AM exactly when the
      inverse is absolutely norm attaining.
    * Anything else only gets the necessary conditions; a failure rules AM
      out, a pass leaves it undecided.
    """
    if not spec.validated:
        raise UnvalidatedSpec("run validate_spectrum first")
    _require_positive(spec)
    if any(t.kind is TailKind.INCREASING_UNBOUNDED for t in spec.tails):
        return _classify_unbounded(spec)
    inf = spectrum_abs_inf(spec)
    if inf is not None and inf > 0:
        return _classify_bounded_invertible(spec)
    return _screen(spec)


# -- finite-section audit ---------------------------------------------------


@dataclass(frozen=True)
class AuditEntry:
    n: int
    m_n: float
    gamma_n: float | None
    rank_n: int
    pinv_norm: float
    restricted_min_lowest: float
    restricted_ok: bool


@dataclass(frozen=True)
class AuditReport:
    m_spec: float
    gamma_spec: float | None
    closed_range: bool
    predicted_pinv_norm: float | None
    entries: list[AuditEntry] = field(default_factory=list)
    consistent: bool = True


def am_truncation_audit(
    spec: SpectrumSpec, sizes: Sequence[int], trials: int = 16, seed: int = 42
) -> AuditReport:
    """Compare finite diagonal sections against the exact spectral quantities.

    For every size the section's ``m``, ``gamma`` and ``||T^+||`` are computed
    densely; ``trials`` random coordinate subspaces check that restricted
    minimum moduli never drop below ``m(spec)``.
    """
    if not spec.validated:
        spec = validate_spectrum(spec)
    rep = moduli(DiagonalOperator(spec))
    m_spec = Fraction(spectrum_abs_inf(spec))
    gamma_spec = spectrum_abs_inf(spec, exclude_zero=True)
    if gamma_spec is None:
        predicted = None
    elif gamma_spec == 0:
        predicted = float("inf")
    else:
        predicted = float(1 / gamma_spec)
    rng = np.random.default_rng(seed)
    entries = []
    for n in sizes:
        D = truncate(spec, n)
        dim = D.shape[0]
        r = moduli(D)
        pn = norm2(pseudoinverse(D))
        lowest = float("inf")
        for _ in range(trials):
            k = int(rng.integers(1, dim + 1))
            coords = np.sort(rng.choice(dim, size=k, replace=False))
            lowest = min(lowest, restricted_min(D, np.eye(dim)[coords]))
        ok = trials == 0 or lowest >= float(m_spec) - 1e-12
        entries.append(AuditEntry(n, r.m, r.gamma, r.rank, pn, lowest, ok))
    consistent = all(e.restricted_ok for e in entries)
    gammas = [e.gamma_n for e in entries if e.gamma_n is not None]
    if gamma_spec is not None and gammas:
        if rep.closed_range:
            consistent &= all(g >= float(gamma_spec) * (1 - 1e-12) for g in gammas)
            consistent &= all(e.pinv_norm <= predicted * (1 + 1e-12) for e in entries)
        elif len(gammas) > 1:
            consistent &= all(b <= a for a, b in zip(gammas, gammas[1:])) and gammas[-1] < gammas[0]
    return AuditReport(
        m_spec=float(m_spec),
        gamma_spec=None if gamma_spec is None else float(gamma_spec),
        closed_range=rep.closed_range,
        predicted_pinv_norm=predicted,
        entries=entries,
        consistent=bool(consistent),
    )

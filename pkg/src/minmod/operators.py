"""Operator representations: dense matrices and symbolic diagonal operators on l2.

A diagonal operator is described by its eigenvalue multiset: finitely many
*atoms* ``(value, multiplicity)`` plus monotone *tails*. Every tail belongs to
one of three closed-form families, all evaluated in exact rational arithmetic:

* ``inc_unbounded``: ``value(k) = a + c*k``
* ``inc_to``:        ``value(k) = L - c/(k + a)``
* ``dec_to``:        ``value(k) = L + c/(k + a)``

with ``k = 1, 2, ...``, ``c > 0`` and, for the bounded families, ``a > -1``
(``a`` shifts the index so that e.g. ``1/(k+1)`` is expressible). The families
are closed under taking reciprocals, which keeps :func:`reciprocal_spectrum`
exact.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Union

import numpy as np

from .errors import (
    DuplicateValue,
    InvalidInput,
    NegativeValueInPositiveMode,
    NonMonotoneTail,
    NotBoundedlyInvertible,
)
from .linalg import as_matrix, orthonormalize

INFINITE = math.inf

# enumeration cap when deciding whether two tails with different limits collide
_COLLISION_SCAN_LIMIT = 1_000_000


def to_fraction(x) -> Fraction:
    """Exact rational from int/str/Fraction; floats go through their shortest repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInput("boolean is not a number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InvalidInput(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidInput(f"cannot interpret {x!r} as a rational number")


class TailKind(enum.Enum):
    INCREASING_TO = "inc_to"
    DECREASING_TO = "dec_to"
    INCREASING_UNBOUNDED = "inc_unbounded"


@dataclass(frozen=True)
class Tail:
    kind: TailKind
    a: Fraction = Fraction(0)
    c: Fraction = Fraction(1)
    limit: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", to_fraction(self.a))
        object.__setattr__(self, "c", to_fraction(self.c))
        if self.limit is not None:
            object.__setattr__(self, "limit", to_fraction(self.limit))
        if self.kind is TailKind.INCREASING_UNBOUNDED:
            if self.limit is not None:
                raise InvalidInput("an unbounded tail has no limit")
        elif self.limit is None:
            raise InvalidInput(f"{self.kind.value} tail needs a limit")

    @classmethod
    def unbounded(cls, a=0, c=1) -> "Tail":
        return cls(TailKind.INCREASING_UNBOUNDED, a, c, None)

    @classmethod
    def increasing_to(cls, limit, c=1, a=0) -> "Tail":
        return cls(TailKind.INCREASING_TO, a, c, limit)

    @classmethod
    def decreasing_to(cls, limit, c=1, a=0) -> "Tail":
        return cls(TailKind.DECREASING_TO, a, c, limit)

    @property
    def bounded(self) -> bool:
        return self.kind is not TailKind.INCREASING_UNBOUNDED

    @property
    def _signed_c(self) -> Fraction:
        return -self.c if self.kind is TailKind.INCREASING_TO else self.c

    def value(self, k: int) -> Fraction:
        if k < 1:
            raise ValueError("tail indices start at 1")
        if self.kind is TailKind.INCREASING_UNBOUNDED:
            return self.a + self.c * k
        return self.limit + self._signed_c / (k + self.a)

    def values(self, count: int) -> list[Fraction]:
        return [self.value(k) for k in range(1, count + 1)]

    def index_of(self, v: Fraction) -> int | None:
        """Index ``k >= 1`` with ``value(k) == v``, or None."""
        v = to_fraction(v)
        if self.kind is TailKind.INCREASING_UNBOUNDED:
            k = (v - self.a) / self.c
        else:
            if v == self.limit:
                return None
            k = self._signed_c / (v - self.limit) - self.a
        if k.denominator == 1 and k >= 1:
            return int(k)
        return None

    def contains(self, v) -> bool:
        return self.index_of(v) is not None

    def zero_crossing(self) -> Fraction | None:
        """Real index at which the closed form vanishes, if the sequence changes sign."""
        if self.kind is TailKind.INCREASING_UNBOUNDED:
            k = -self.a / self.c
        else:
            if self.limit == 0:
                return None
            k = -self._signed_c / self.limit - self.a
        return k if k > 1 else None

    def abs_candidates(self) -> list[int]:
        """Indices that can carry the smallest ``|value|`` among tail elements."""
        ks = {1}
        z = self.zero_crossing()
        if z is not None:
            ks.update({math.floor(z), math.ceil(z)})
        return sorted(k for k in ks if k >= 1)

    def abs_inf(self, exclude_zero: bool = False) -> tuple[Fraction, int | None]:
        """``inf |value(k)|`` over the tail and an attaining index (None if not attained).

        With ``exclude_zero`` the infimum runs over the nonzero elements only.
        """
        best: Fraction | None = None
        best_k = None
        for k in self.abs_candidates():
            v = abs(self.value(k))
            if exclude_zero and v == 0:
                for kk in (k - 1, k + 1):
                    if kk >= 1:
                        w = abs(self.value(kk))
                        if w != 0 and (best is None or w < best):
                            best, best_k = w, kk
                continue
            if best is None or v < best:
                best, best_k = v, k
        if self.bounded and abs(self.limit) < best:
            return abs(self.limit), None
        return best, best_k

    def first_index_with_sign_of_limit(self) -> int:
        """Smallest ``k`` from which the tail keeps one strict sign (1 if it never crosses zero)."""
        z = self.zero_crossing()
        if z is None:
            return 1
        return math.floor(z) + 1

    def shifted(self, k0: int) -> "Tail":
        """The tail ``value(k + k0)``."""
        if self.kind is TailKind.INCREASING_UNBOUNDED:
            return replace(self, a=self.a + self.c * k0)
        return replace(self, a=self.a + k0)

    def scaled(self, factor) -> "Tail":
        f = to_fraction(factor)
        if f <= 0:
            raise InvalidInput("scale factor must be positive")
        if self.kind is TailKind.INCREASING_UNBOUNDED:
            return replace(self, a=self.a * f, c=self.c * f)
        return replace(self, c=self.c * f, limit=self.limit * f)

    def reciprocal(self) -> "Tail":
        """Tail of reciprocals; requires a sequence bounded away from zero with one sign."""
        if self.kind is TailKind.INCREASING_UNBOUNDED:
            if self.value(1) <= 0:
                raise NotBoundedlyInvertible("tail must be positive before inversion")
            # 1/(a + c k) = (1/c) / (k + a/c)
            return Tail(TailKind.DECREASING_TO, self.a / self.c, 1 / self.c, Fraction(0))
        L = self.limit
        if L == 0:
            raise NotBoundedlyInvertible("tail accumulates at zero")
        if self.value(1) * L <= 0:
            raise NotBoundedlyInvertible("tail must keep the sign of its limit")
        d = self._signed_c
        # 1/(L + d/(k+a)) = 1/L - (d/L^2) / (k + a + d/L)
        new_d = -d / (L * L)
        kind = TailKind.DECREASING_TO if new_d > 0 else TailKind.INCREASING_TO
        return Tail(kind, self.a + d / L, abs(new_d), 1 / L)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "limit": None if self.limit is None else _num_out(self.limit),
            "a": _num_out(self.a),
            "c": _num_out(self.c),
        }

    @classmethod
    def from_json(cls, d: dict) -> "Tail":
        try:
            kind = TailKind(d["kind"])
        except (KeyError, ValueError) as exc:
            raise InvalidInput(f"bad tail kind in {d!r}") from exc
        return cls(kind, d.get("a", 0), d.get("c", 1), d.get("limit"))


def _num_out(x: Fraction):
    if x.denominator == 1:
        return int(x)
    f = float(x)
    return f if Fraction(repr(f)) == x else str(x)


@dataclass(frozen=True)
class Atom:
    value: Fraction
    mult: Union[int, float] = 1

    def __post_init__(self):
        object.__setattr__(self, "value", to_fraction(self.value))
        m = self.mult
        if m != INFINITE and (not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 1):
            raise InvalidInput(f"multiplicity must be a positive integer or INFINITE, got {m!r}")
        if m != INFINITE:
            object.__setattr__(self, "mult", int(m))

    @property
    def infinite(self) -> bool:
        return self.mult == INFINITE


@dataclass(frozen=True)
class SpectrumSpec:
    """Exact eigenvalue multiset of a self-adjoint diagonal operator."""

    atoms: tuple[Atom, ...] = ()
    tails: tuple[Tail, ...] = ()
    positive: bool = False
    _validated: bool = field(default=False, init=False, repr=False, compare=False)

    def __post_init__(self):
        atoms = tuple(a if isinstance(a, Atom) else Atom(*a) for a in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "tails", tuple(self.tails))

    @property
    def validated(self) -> bool:
        return self._validated

    @property
    def has_zero(self) -> bool:
        return any(a.value == 0 for a in self.atoms) or any(t.contains(0) for t in self.tails)

    @property
    def finitely_supported(self) -> bool:
        return not self.tails and all(not a.infinite for a in self.atoms if a.value != 0)

    def limit_points(self) -> list[Fraction]:
        """Finite accumulation points of the spectrum, deduplicated and sorted."""
        return sorted({t.limit for t in self.tails if t.bounded})

    def infinite_atoms(self) -> list[Atom]:
        return [a for a in self.atoms if a.infinite]

    def scaled(self, factor) -> "SpectrumSpec":
        f = to_fraction(factor)
        return SpectrumSpec(
            tuple(Atom(a.value * f, a.mult) for a in self.atoms),
            tuple(t.scaled(f) for t in self.tails),
            self.positive,
        )

    def to_json(self) -> dict:
        return {
            "atoms": [
                {"value": _num_out(a.value), "mult": "inf" if a.infinite else a.mult}
                for a in self.atoms
            ],
            "tails": [t.to_json() for t in self.tails],
            "positive": self.positive,
        }

    @classmethod
    def from_json(cls, d: dict | str) -> "SpectrumSpec":
        if isinstance(d, str):
            d = json.loads(d)
        if not isinstance(d, dict):
            raise InvalidInput("spectrum spec must be a JSON object")
        atoms = []
        for a in d.get("atoms", []):
            mult = a.get("mult", 1)
            if mult == "inf":
                mult = INFINITE
            atoms.append(Atom(a["value"], mult))
        tails = [Tail.from_json(t) for t in d.get("tails", [])]
        return cls(tuple(atoms), tuple(tails), bool(d.get("positive", False)))


@dataclass(frozen=True)
class DiagonalOperator:
    """``T e_i = lambda_i e_i`` on l2, eigenvalues given by ``spectrum``."""

    spectrum: SpectrumSpec
    self_adjoint: bool = True


Operator = Union[np.ndarray, DiagonalOperator]


def _hull(t: Tail) -> tuple[Fraction, Fraction | None]:
    """Closed interval containing every tail value; None stands for +infinity."""
    first = t.value(1)
    if t.kind is TailKind.INCREASING_UNBOUNDED:
        return first, None
    return (first, t.limit) if t.kind is TailKind.INCREASING_TO else (t.limit, first)


def _values_outside(t: Tail, centre: Fraction, radius: Fraction) -> Iterator[Fraction]:
    """Tail values at distance >= radius from ``centre`` (finite when centre is the limit)."""
    # |c/(k+a)| >= radius  <=>  k <= c/radius - a
    kmax = math.floor(t.c / radius - t.a)
    if kmax > _COLLISION_SCAN_LIMIT:
        raise NonMonotoneTail("tails too close to decide collisions exactly")
    for k in range(1, kmax + 1):
        yield t.value(k)


def _linear_collide(c1: Fraction, a1: Fraction, c2: Fraction, a2: Fraction) -> bool:
    """Do ``a1 + c1*k == a2 + c2*j`` have solutions with large positive ``k, j``?"""
    den = math.lcm(c1.denominator, c2.denominator, a1.denominator, a2.denominator)
    C1, C2, R = int(c1 * den), int(c2 * den), int((a2 - a1) * den)
    return R % math.gcd(C1, C2) == 0


def _tails_collide(s: Tail, t: Tail) -> bool:
    ls, lt = s.limit, t.limit
    if not s.bounded and not t.bounded:
        return _linear_collide(s.c, s.a, t.c, t.a)
    if s.bounded and t.bounded and ls == lt:
        if s.kind is not t.kind:
            return False
        # L + d1/(k+a1) == L + d2/(j+a2)  <=>  c1*j - c2*k == c2*a1 - c1*a2
        return _linear_collide(s.c, s.c * t.a, t.c, t.c * s.a)
    if not s.bounded:
        s, t = t, s
    if not t.bounded:
        lo, hi = _hull(s)
        k_lo = max(1, math.ceil((lo - t.a) / t.c))
        k_hi = math.floor((hi - t.a) / t.c)
        if k_hi - k_lo > _COLLISION_SCAN_LIMIT:
            raise NonMonotoneTail("tails too close to decide collisions exactly")
        return any(s.contains(t.value(k)) for k in range(k_lo, k_hi + 1))
    lo_s, hi_s = _hull(s)
    lo_t, hi_t = _hull(t)
    if hi_s < lo_t or hi_t < lo_s:
        return False
    radius = abs(ls - lt) / 2
    for v in _values_outside(s, ls, radius):
        if t.contains(v):
            return True
    for v in _values_outside(t, lt, radius):
        if s.contains(v):
            return True
    return False


def validate_spectrum(spec: SpectrumSpec) -> SpectrumSpec:
    """Check a spectrum description exactly and return it marked as validated.

    Raises
    ------
    NonMonotoneTail
        A tail's closed form is not strictly monotone in its declared direction.
    DuplicateValue
        Two atoms share a value, an atom lies on a tail, or two tails meet.
    NegativeValueInPositiveMode
        ``positive`` is set and some value is negative.
    """
    for t in spec.tails:
        if t.c <= 0:
            raise NonMonotoneTail(f"tail {t} needs c > 0")
        if t.bounded and t.a <= -1:
            raise NonMonotoneTail(f"tail {t} needs a > -1 so that k + a > 0")
    seen: set[Fraction] = set()
    for a in spec.atoms:
        if a.value in seen:
            raise DuplicateValue(f"atom value {a.value} repeated")
        seen.add(a.value)
        for t in spec.tails:
            k = t.index_of(a.value)
            if k is not None:
                raise DuplicateValue(f"atom value {a.value} equals tail element k={k}")
    tails = spec.tails
    for i in range(len(tails)):
        for j in range(i + 1, len(tails)):
            if _tails_collide(tails[i], tails[j]):
                raise DuplicateValue(f"tails {i} and {j} share values")
    if spec.positive:
        for a in spec.atoms:
            if a.value < 0:
                raise NegativeValueInPositiveMode(f"atom {a.value} < 0")
        for t in spec.tails:
            low = t.limit if t.kind is TailKind.DECREASING_TO else t.value(1)
            if low < 0:
                raise NegativeValueInPositiveMode(f"tail {t} takes negative values")
    out = replace(spec)
    object.__setattr__(out, "_validated", True)
    return out


def adjoint(T: Operator) -> Operator:
    if isinstance(T, DiagonalOperator):
        return T
    return as_matrix(T).conj().T


def subspace_basis(M) -> np.ndarray:
    """Orthonormal columns spanning the vectors in ``M`` (rows of an array)."""
    return orthonormalize(np.atleast_2d(M) if isinstance(M, np.ndarray) else M)


def restrict(T, M) -> np.ndarray:
    """``T Q`` with ``Q`` an orthonormal basis of ``span(M)``: ``T`` restricted to ``M``."""
    T = as_matrix(T)
    Q = subspace_basis(M)
    if Q.shape[0] != T.shape[1]:
        raise InvalidInput(f"subspace vectors have dimension {Q.shape[0]}, domain is {T.shape[1]}")
    return T @ Q


def truncation_values(spec: SpectrumSpec, n: int) -> list[Fraction]:
    """The eigenvalues placed on the diagonal by :func:`truncate`, in order."""
    if n < 1:
        raise InvalidInput("truncation size must be >= 1")
    pool: list[Fraction] = []
    for a in spec.atoms:
        pool.extend([a.value] * int(min(a.mult, n)))
    for t in spec.tails:
        pool.extend(t.values(n))
    pool.sort(key=lambda v: (abs(v), v))
    return pool[:n]


def truncate(spec: SpectrumSpec, n: int) -> np.ndarray:
    """Finite diagonal section built from the ``n`` smallest-modulus eigenvalues.

    Atoms contribute up to ``min(mult, n)`` copies, each tail its first ``n``
    terms; the pool is ordered by ``(|value|, value)`` and cut at ``n``.
    A spectrum with fewer than ``n`` eigenvalues yields a smaller matrix.
    """
    vals = truncation_values(spec, n)
    return np.diag(np.array([float(v) for v in vals], dtype=np.complex128))


def reciprocal_spectrum(spec: SpectrumSpec) -> SpectrumSpec:
    """Spectrum of the inverse operator (``v -> 1/v``, multiplicities kept).

    Tail elements before a sign change are peeled off as simple atoms so the
    remaining tail is monotone after inversion.
    """
    for a in spec.atoms:
        if a.value == 0:
            raise NotBoundedlyInvertible("zero is an eigenvalue")
    for t in spec.tails:
        if t.bounded and t.limit == 0:
            raise NotBoundedlyInvertible("zero is a limit point of the spectrum")
        if t.contains(0):
            raise NotBoundedlyInvertible("zero lies on a tail")
    atoms = [Atom(1 / a.value, a.mult) for a in spec.atoms]
    tails = []
    for t in spec.tails:
        k0 = t.first_index_with_sign_of_limit() - 1
        atoms.extend(Atom(1 / v, 1) for v in t.values(k0))
        tails.append((t.shifted(k0) if k0 else t).reciprocal())
    return SpectrumSpec(tuple(atoms), tuple(tails), spec.positive)

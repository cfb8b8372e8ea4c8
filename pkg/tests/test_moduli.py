from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from corpus import complex_matrices, low_rank_matrices
from minmod.errors import NotHermitian
from minmod.moduli import (
    distance_to_spectrum_check,
    gram_modulus_check,
    moduli,
    power_modulus_check,
    reduced_minimum_modulus,
    remark_inverse_check,
    sampled_minimum,
    sampled_numerical_lower_bound,
    spectrum_abs_inf,
    spectrum_bounds,
)
from minmod.factorizations import pseudoinverse
from minmod.linalg import norm2
from minmod.operators import INFINITE, Atom, DiagonalOperator, SpectrumSpec, Tail, validate_spectrum


def close(a, b, rtol=1e-10):
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


def test_diag_023():
    rep = moduli(np.diag([0.0, 2.0, 3.0]))
    assert rep.m == 0.0
    assert rep.gamma == 2.0
    assert rep.rank == 2
    assert not rep.injective
    assert (rep.m_lower_numerical, rep.M_upper_numerical) == (0.0, 3.0)


def test_zero_operator_has_no_gamma():
    rep = moduli(np.zeros((2, 3)))
    assert rep.gamma is None and rep.rank == 0


def test_wide_matrix_not_injective():
    rep = moduli(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]))
    assert rep.m == 0.0 and rep.gamma == 1.0


def test_diagonal_report_exact():
    spec = validate_spectrum(SpectrumSpec((), (Tail.decreasing_to(0, 1, 1),), True))
    rep = moduli(DiagonalOperator(spec))
    assert rep.m == 0.0 and rep.gamma == 0.0 and not rep.closed_range and rep.injective
    spec = validate_spectrum(SpectrumSpec((Atom(0, INFINITE),), (Tail.unbounded(),), True))
    rep = moduli(DiagonalOperator(spec))
    assert rep.m == 0.0 and rep.gamma == 1.0 and rep.closed_range and rep.rank == INFINITE


def test_spectrum_abs_inf_and_bounds():
    spec = SpectrumSpec((Atom(Fraction(-1, 2)),), (Tail.increasing_to(3, 1, Fraction(1, 2)),))
    assert spectrum_abs_inf(spec) == Fraction(1, 2)
    lo, hi = spectrum_bounds(spec)
    assert lo == Fraction(-1, 2) and hi == 3


@given(complex_matrices())
def test_gamma_times_pinv_norm(A):
    g = reduced_minimum_modulus(A)
    if g is None:
        return
    assert close(g * norm2(pseudoinverse(A)), 1.0, 1e-8)


@given(complex_matrices())
def test_distance_and_gram_pairs(A):
    a, b = distance_to_spectrum_check(A)
    assert abs(a - b) <= 1e-8 * max(1.0, norm2(A))
    a, b = gram_modulus_check(A)
    assert abs(a - b) <= 1e-8 * max(1.0, norm2(A) ** 2)


@given(complex_matrices(square=True))
def test_power_pair_hermitian(A):
    H = A + A.conj().T
    for n in (2, 3):
        a, b = power_modulus_check(H, n)
        assert abs(a - b) <= 1e-8 * max(1.0, norm2(H) ** n)


def test_power_pair_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        power_modulus_check(np.array([[0.0, 1.0], [0.0, 0.0]]), 2)


def test_symbolic_pairs():
    T = DiagonalOperator(validate_spectrum(SpectrumSpec((Atom(-2),), (Tail.decreasing_to(3, 1),))))
    assert distance_to_spectrum_check(T) == (2.0, 2.0)
    assert power_modulus_check(T, 3) == (8.0, 8.0)


def test_remark_inverse_and_sampling():
    T = np.array([[3.0, 1.0], [0.0, 2.0]])
    a, b = remark_inverse_check(T)
    assert close(a, b, 1e-12)
    # sampling only ever sees values at or above the infimum
    assert sampled_minimum(T) >= a - 1e-12
    H = np.diag([1.0, 4.0])
    assert sampled_numerical_lower_bound(H) >= 1.0 - 1e-12
    assert sampled_minimum(T, seed=1) == sampled_minimum(T, seed=1)


@given(low_rank_matrices())
def test_rank_deficient_closed_range(A):
    rep = moduli(A)
    assert rep.rank < min(A.shape)
    assert rep.closed_range
    assert rep.m <= 1e-12 * max(1.0, norm2(A))

import numpy as np
import pytest
from hypothesis import given

from corpus import complex_matrices, low_rank_matrices
from minmod.errors import ContractionRequired, DimensionMismatch
from minmod.factorizations import (
    bounded_transform,
    inverse_transform,
    least_squares_min_norm,
    modulus,
    mp_modulus_identities,
    penrose_residuals,
    pinv_identity_residuals,
    polar,
    polar_diagnostics,
    pseudoinverse,
    transform_diagnostics,
    transform_moduli_check,
)
from minmod.linalg import norm2

TOL = 1e-8


def test_pinv_examples():
    assert np.allclose(pseudoinverse([[1.0], [1.0]]), [[0.5, 0.5]])
    assert np.allclose(pseudoinverse(np.diag([0.0, 2.0])), np.diag([0.0, 0.5]))
    assert np.array_equal(pseudoinverse(np.zeros((2, 3))), np.zeros((3, 2)))


@given(complex_matrices())
def test_pinv_matches_numpy(A):
    ref = np.linalg.pinv(A, rcond=1e-10)
    if np.linalg.cond(A) > 1e8 and min(A.shape) > 1:
        return
    assert np.linalg.norm(pseudoinverse(A) - ref) <= 1e-8 * max(1.0, norm2(ref))


@given(low_rank_matrices())
def test_penrose_and_identities_rank_deficient(A):
    for v in penrose_residuals(A).values():
        assert v <= TOL
    for v in pinv_identity_residuals(A).values():
        assert v <= TOL
    for v in mp_modulus_identities(A).values():
        assert v <= TOL


def test_penrose_detects_wrong_inverse():
    A = np.array([[1.0, 0.0], [0.0, 2.0]])
    res = penrose_residuals(A, np.eye(2))
    assert res["TST=T"] > 0.1


def test_least_squares_min_norm():
    A = np.array([[1.0, 1.0], [1.0, 1.0]])
    x = least_squares_min_norm(A, [2.0, 0.0])
    assert np.allclose(x, [0.5, 0.5])
    with pytest.raises(DimensionMismatch):
        least_squares_min_norm(A, [1.0])


@given(complex_matrices())
def test_modulus_squares_to_gram(A):
    M = modulus(A)
    assert np.linalg.norm(M @ M - A.conj().T @ A) <= 1e-10 * max(1.0, norm2(A) ** 2)
    assert np.all(np.linalg.eigvalsh(M) >= -1e-10 * max(1.0, norm2(A)))


def test_polar_example():
    T = np.array([[0.0, 2.0], [0.0, 0.0]])
    r = polar(T)
    assert np.allclose(r.modulus, np.diag([0.0, 2.0]))
    assert np.allclose(r.V, [[0.0, 1.0], [0.0, 0.0]])


@given(complex_matrices())
def test_polar_diagnostics(A):
    for v in polar_diagnostics(A).values():
        assert v <= TOL


def test_transform_scalar():
    r = bounded_transform(np.array([[1.0]]))
    assert np.isclose(r.F[0, 0], 1 / np.sqrt(2))
    pairs = transform_moduli_check(np.array([[1.0]]))
    assert np.isclose(pairs["forward"][0], 0.7071067811865476, rtol=0, atol=1e-15)
    assert np.isclose(pairs["forward"][0], pairs["forward"][1], rtol=0, atol=1e-15)


@given(complex_matrices())
def test_transform_is_contraction_and_invertible(A):
    d = transform_diagnostics(A)
    assert d["||F||"] < 1.0
    for k, v in d.items():
        if k != "||F||":
            assert v <= TOL
    back = inverse_transform(bounded_transform(A).F)
    assert np.linalg.norm(back - A) <= TOL * max(1.0, norm2(A)) ** 3


@given(complex_matrices())
def test_transform_moduli_pairs(A):
    p = transform_moduli_check(A)
    f, g = p["forward"]
    assert abs(f - g) <= TOL
    f, g = p["backward"]
    assert abs(f - g) <= TOL * max(1.0, f) * max(1.0, norm2(A)) ** 2


def test_inverse_transform_needs_strict_contraction():
    with pytest.raises(ContractionRequired):
        inverse_transform(np.eye(2))

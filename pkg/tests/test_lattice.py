import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from exceptions import ResourceCapExceeded
from lattice import (
    as_object,
    check_certificate,
    check_solution,
    invariant_factors_of,
    kernel_mod,
    smith_normal_form,
    solve_mod,
)

A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]


def test_smith_normal_form_with_transforms():
    D, U, V = smith_normal_form(A)
    assert (U.dot(as_object(A)).dot(V) == D).all()
    assert [int(D[i, i]) for i in range(3)] == [2, 6, 12]
    assert round(abs(np.linalg.det(U.astype(float)))) == 1
    assert round(abs(np.linalg.det(V.astype(float)))) == 1


@pytest.mark.parametrize("matrix", [
    A,
    [[0, 3], [6, 0]],
    [[4, 0, 0], [0, 6, 0], [0, 0, 10]],
    [[1, 2, 3], [4, 5, 6], [7, 8, 10]],
])
def test_invariant_factors_agree_with_sympy(matrix):
    reference = sympy_snf(Matrix(matrix), domain=ZZ)
    expected = sorted(abs(int(reference[i, i])) for i in range(len(matrix)))
    assert sorted(invariant_factors_of(matrix)) == expected


def test_solvable_system():
    B = [[1, 1], [0, 3]]
    r = [5, 6]
    solution = solve_mod(B, r, 12)
    assert solution.solvable
    assert check_solution(B, r, solution.x, 12)


def test_unsolvable_system_has_certificate():
    solution = solve_mod([[2]], [1], 4)
    assert not solution.solvable
    assert solution.failing_prime == 2
    assert check_certificate([[2]], [1], solution.certificate, 4)


def test_unsolvable_at_one_prime_only():
    """3x = 1 has no solution mod 6; the obstruction lives at p = 3."""
    B, r = [[3], [0]], [1, 0]
    solution = solve_mod(B, r, 6)
    assert not solution.solvable
    assert solution.failing_prime == 3
    assert check_certificate(B, r, solution.certificate, 6)


def test_inconsistent_rows():
    B, r = [[1, 2], [2, 4]], [1, 3]
    solution = solve_mod(B, r, 7)
    assert not solution.solvable
    assert check_certificate(B, r, solution.certificate, 7)


def test_random_systems_agree_with_brute_force():
    rng = np.random.default_rng(3)
    modulus = 12
    for _ in range(40):
        B = rng.integers(0, modulus, (3, 2))
        r = rng.integers(0, modulus, 3)
        brute = any(
            ((B @ np.array([a, b]) - r) % modulus == 0).all()
            for a in range(modulus) for b in range(modulus)
        )
        solution = solve_mod(B, r, modulus)
        assert solution.solvable == brute
        if brute:
            assert check_solution(B, r, solution.x, modulus)
        else:
            assert check_certificate(B, r, solution.certificate, modulus)


def test_row_cap():
    with pytest.raises(ResourceCapExceeded):
        solve_mod(np.zeros((10, 2), dtype=np.int64), np.zeros(10, dtype=np.int64), 5, max_rows=5)


def test_kernel_mod():
    a = [[2, 0], [0, 3]]
    orders, gens = kernel_mod(a, 6)
    assert int(np.prod(orders)) == 6
    for i in range(gens.shape[1]):
        assert (as_object(a).dot(gens[:, i]) % 6 == 0).all()

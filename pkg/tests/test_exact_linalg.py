import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfatlas.errors import NotSymmetricError, SingularMatrixError
from hopfatlas.exact_linalg import det, identity, inertia, mat_mul, mat_vec, signature, solve, transpose
from oracles import cofactor_det, cramer_solve, descartes_signature, sturm_signature


def square(n, lo=-5, hi=5):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


def symmetric(n, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=n * n, max_size=n * n).map(
        lambda xs: [[xs[min(i, j) * n + max(i, j)] for j in range(n)] for i in range(n)]
    )


def stacked(p):
    return [[0 if i == j else -1 for j in range(p + 1)] for i in range(p + 1)]


def test_det_identity():
    assert det(identity(3)) == 1


def test_det_empty_matrix_is_one():
    assert det([]) == 1


def test_det_stacked_unknots_p2():
    assert det(stacked(2)) == -2


@pytest.mark.parametrize("p", range(2, 12))
def test_det_stacked_unknots_is_minus_p(p):
    assert det(stacked(p)) == -p


def test_det_needs_row_swap():
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det([[1, 2, 3], [4, 5, 6]])


def test_det_large_entries_stay_exact():
    big = 10**30
    M = [[big, 1], [1, big]]
    assert det(M) == big * big - 1


@settings(max_examples=300)
@given(st.integers(1, 5).flatmap(lambda n: square(n, -3, 3)))
def test_det_matches_cofactor_expansion(M):
    assert det(M) == cofactor_det(M)


def test_det_random_4x4_matches_cofactor():
    rng = random.Random(7)
    for _ in range(200):
        M = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)]
        assert det(M) == cofactor_det(M)


def test_solve_identity():
    b = [Fraction(3, 7), -2, 5]
    assert list(solve(identity(3), b)) == b


def test_solve_returns_fractions():
    x = solve([[2, 0], [0, 3]], [1, 1])
    assert x == (Fraction(1, 2), Fraction(1, 3))


def test_solve_singular_raises():
    with pytest.raises(SingularMatrixError):
        solve([[1, 2], [2, 4]], [1, 1])


def test_solve_c2_left_p3():
    p = 3
    n = p + 3
    M = [[(-2 if i == 0 else 0) if i == j else -1 for j in range(n)] for i in range(n)]
    x = solve(M, [2] + [0] * (n - 1))
    assert x[0] == -2 - Fraction(2, 3)
    assert all(v == Fraction(2, 3) for v in x[1:])


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(square(n, -4, 4), st.lists(st.integers(-6, 6), min_size=n, max_size=n))))
def test_solve_matches_cramer_and_multiplies_back(args):
    M, b = args
    if cofactor_det(M) == 0:
        with pytest.raises(SingularMatrixError):
            solve(M, b)
        return
    x = solve(M, b)
    assert list(x) == cramer_solve(M, b)
    assert list(mat_vec(M, x)) == b


def test_signature_hyperbolic_pair():
    assert signature([[1, 0], [0, -1]]) == 0
    assert signature([[0, 1], [1, 0]]) == 0


def test_signature_stacked_unknots_p4():
    assert signature(stacked(4)) == 3


@pytest.mark.parametrize("p", range(2, 10))
def test_signature_single_framing_minus_p(p):
    assert signature([[-p]]) == -1


def test_signature_rejects_non_symmetric():
    with pytest.raises(NotSymmetricError):
        signature([[1, 2], [3, 4]])


def test_signature_zero_matrix():
    assert inertia([[0, 0], [0, 0]]) == (0, 0, 2)


@settings(max_examples=300)
@given(st.integers(1, 4).flatmap(symmetric))
def test_signature_matches_sturm_oracle(M):
    assert signature(M) == sturm_signature(M) == descartes_signature(M)


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(symmetric))
def test_inertia_accounts_for_every_dimension(M):
    pos, neg, zero = inertia(M)
    n = len(M)
    assert pos + neg + zero == n
    assert signature(M) + zero == n - 2 * neg
    assert (zero == 0) == (det(M) != 0)


def _unimodular(rng, n):
    U = [list(r) for r in identity(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        for r in range(n):
            U[r][j] += c * U[r][i]
    return U


def test_signature_congruence_invariant():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 5)
        vals = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        M = [[vals[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
        U = _unimodular(rng, n)
        assert abs(det(U)) == 1
        C = mat_mul(mat_mul(transpose(U), M), U)
        assert inertia(C) == inertia(M)

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import det_by_permutations, rank_by_minors
from cigrid import linalg


def rand_mat(rng, d, n, lo=-6, hi=6):
    return [[Fraction(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(n)] for _ in range(d)]


def test_rank_small_cases():
    assert linalg.rank([]) == 0
    assert linalg.rank(linalg.identity(3)) == 3
    assert linalg.rank(linalg.mat([[1, 2], [2, 4]])) == 1
    assert linalg.rank(linalg.zeros(2, 5)) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_rank_matches_minor_search(d, n, seed):
    rng = random.Random(seed)
    m = rand_mat(rng, d, n)
    assert linalg.rank(m) == rank_by_minors(m)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_det_matches_permutation_sum(n, seed):
    rng = random.Random(seed)
    m = rand_mat(rng, n, n)
    assert linalg.det(m) == det_by_permutations(m)


def test_kernel_vectors_are_annihilated():
    rng = random.Random(2)
    for _ in range(20):
        m = rand_mat(rng, 3, 5)
        basis = linalg.kernel_basis(m)
        assert len(basis) == 5 - linalg.rank(m)
        for v in basis:
            prod = [sum(a * b for a, b in zip(row, v)) for row in m]
            assert all(x == 0 for x in prod)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_mod_p_rank_never_exceeds_exact_rank(d, n, seed):
    rng = random.Random(seed)
    m = rand_mat(rng, d, n)
    rp = linalg.rank_mod_p(m)
    rq = linalg.rank(m)
    assert rp is not None
    assert rp <= rq
    if rp == n:
        assert rq == n


def test_mod_p_declines_when_prime_divides_denominator():
    p = linalg.SHADOW_PRIME
    m = [[Fraction(1, p)]]
    assert linalg.rank_mod_p(m, p) is None


def test_matrix_text_round_trip():
    rng = random.Random(9)
    m = rand_mat(rng, 2, 3)
    text = linalg.matrix_to_text(m)
    assert linalg.matrix_from_text(text) == m
    assert text.splitlines()[0] == "2 3"


def test_column_and_row_submatrix_use_one_based_indices():
    m = linalg.mat([[1, 2, 3], [4, 5, 6]])
    assert linalg.column_submatrix(m, [1, 3]) == linalg.mat([[1, 3], [4, 6]])
    assert linalg.row_submatrix(m, [2]) == linalg.mat([[4, 5, 6]])


def test_matmul_transpose():
    a = linalg.mat([[1, 2], [3, 4]])
    b = linalg.mat([[0, 1], [1, 0]])
    assert linalg.matmul(a, b) == linalg.mat([[2, 1], [4, 3]])
    assert linalg.transpose(a) == linalg.mat([[1, 3], [2, 4]])

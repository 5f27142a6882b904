from fractions import Fraction

import numpy as np
import pytest

from echelonmotion import linalg
from echelonmotion.errors import SingularMatrixError
from echelonmotion.linalg import (ExactMatrix, PermutationMatrix, bruhat_permutation,
                                  bruhat_permutation_fast, inverse, mod_p_rank_prescreen, nullspace,
                                  rank, rank_grid_oracle)

from conftest import P_R5_ONES, W_R5


def random_invertible(rng, n, lo=-2, hi=2):
    while True:
        M = rng.integers(lo, hi + 1, size=(n, n)).tolist()
        if rank(M) == n:
            return ExactMatrix(M)


def test_rank_examples():
    assert rank(ExactMatrix.identity(4)) == 4
    assert rank([[1] * 3] * 3) == 1
    W = ExactMatrix(W_R5)
    assert rank(W.submatrix(range(1, 5), range(0, 4))) == 3


def test_rank_of_empty():
    assert rank(ExactMatrix.zeros(0, 3)) == 0


def test_bruhat_r5_matches_printed():
    cert = bruhat_permutation(ExactMatrix(W_R5))
    assert sorted((i + 1, j + 1) for i, j in cert.P.ones()) == sorted(P_R5_ONES)
    assert cert.U1.is_upper_triangular() and cert.U2.is_upper_triangular()
    assert cert.product() == ExactMatrix(W_R5)
    assert rank_grid_oracle(ExactMatrix(W_R5)) == cert.P


def test_bruhat_trivial_cases():
    cert = bruhat_permutation(ExactMatrix.identity(4))
    assert cert.P.image == (0, 1, 2, 3)
    assert cert.U1 == ExactMatrix.identity(4) and cert.U2 == ExactMatrix.identity(4)
    Q = PermutationMatrix((2, 0, 3, 1))
    assert bruhat_permutation(Q.matrix()).P == Q
    anti = PermutationMatrix((3, 2, 1, 0))
    assert rank_grid_oracle(anti.matrix()) == anti


def test_bruhat_singular():
    with pytest.raises(SingularMatrixError):
        bruhat_permutation(ExactMatrix([[1, 1], [1, 1]]))
    with pytest.raises(SingularMatrixError):
        inverse(ExactMatrix([[1, 1], [1, 1]]))


def test_bruhat_against_oracle_and_laws():
    rng = np.random.default_rng(11)
    for k in range(300):
        M = random_invertible(rng, 2 + k % 5)
        cert = bruhat_permutation(M)
        assert cert.verify(M)
        assert rank_grid_oracle(M) == cert.P == bruhat_permutation_fast(M)
        # refactoring the factored product gives the same permutation
        assert bruhat_permutation(cert.product()).P == cert.P
        # the permutation of the inverse is the inverse permutation
        assert bruhat_permutation(inverse(M)).P == cert.P.inverse()


def test_inverse_examples():
    assert inverse(ExactMatrix.identity(3)) == ExactMatrix.identity(3)
    chain3 = ExactMatrix([[1, 0, 0], [1, 1, 0], [1, 1, 1]])
    assert inverse(chain3) == ExactMatrix([[1, 0, 0], [-1, 1, 0], [0, -1, 1]])
    assert inverse(ExactMatrix(W_R5))[4, 0] == 0


def test_fraction_entries():
    M = ExactMatrix([[Fraction(1, 2), 1], [0, Fraction(2, 3)]])
    assert inverse(M) @ M == ExactMatrix.identity(2)
    assert rank(M) == 2


def test_prescreen_examples():
    assert mod_p_rank_prescreen(ExactMatrix.identity(4)) == (4, True)
    assert mod_p_rank_prescreen([[1] * 3] * 3) == (1, True)
    rng = np.random.default_rng(3)
    for _ in range(100):
        M = rng.integers(0, 2, size=(5, 6)).tolist()
        assert mod_p_rank_prescreen(M).rank <= rank(M)


def test_prescreen_detects_small_prime_collapse():
    # rank 2 over the rationals, rank 1 modulo 3
    M = [[1, 1], [1, 4]]
    ranks = [linalg.kernels.rank_mod(M, p) for p in (3, 5)]
    assert ranks == [1, 2] and rank(M) == 2


def test_nullspace():
    M = ExactMatrix([[1, 2, 3], [2, 4, 6]])
    basis = nullspace(M)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M.rows)

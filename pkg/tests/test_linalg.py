import random

import pytest
from hypothesis import given, settings, strategies as st

from syzlab.errors import TooLarge
from syzlab.field import PrimeField, sample_verification_primes
from syzlab.linalg import (PrimePolicy, SparseMatrix, consensus_rank, dense_rational_rank,
                           echelon_leading, kernel_basis, rank, record_matrices)

F = PrimeField(2**31 - 1)


def matvec(m, x, p):
    out = [0] * m.nrows
    for j, col in enumerate(m.cols):
        if x[j]:
            for i, v in col.items():
                out[i] = (out[i] + v * x[j]) % p
    return out


@st.composite
def integer_matrices(draw, max_rows=8, max_cols=8, lo=-4, hi=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r))
    return SparseMatrix.from_dense(rows)


def random_sparse(nrows, ncols, density, seed, lo=1, hi=50):
    rng = random.Random(seed)
    trip = [(i, j, rng.randint(lo, hi) * rng.choice((1, -1)))
            for i in range(nrows) for j in range(ncols) if rng.random() < density]
    return SparseMatrix.from_triplets(nrows, ncols, trip)


def test_identity_and_zero():
    eye = SparseMatrix.from_dense([[1 if i == j else 0 for j in range(3)] for i in range(3)])
    assert rank(eye.mod(F), F).rank == 3
    assert rank(SparseMatrix.from_dense([[0] * 7] * 5), F).rank == 0
    assert kernel_basis(eye, F) == []


def test_kernel_examples():
    zero = SparseMatrix.from_dense([[0] * 4] * 3)
    assert sorted(kernel_basis(zero, F)) == sorted([[int(i == j) for i in range(4)] for j in range(4)])
    (v,) = kernel_basis(SparseMatrix.from_dense([[1, 1]], F.p), F)
    assert sorted(v) == [1, F.p - 1]


@pytest.mark.parametrize("seed", range(5))
def test_random_sparse_matches_dense_oracle(seed):
    m = random_sparse(50, 60, 0.05, seed)
    assert rank(m.mod(F), F).rank == dense_rational_rank(m)


def test_dense_oracle_examples():
    assert dense_rational_rank([[1, 2], [2, 4]]) == 1
    assert dense_rational_rank([[int(i == j) for j in range(4)] for i in range(4)]) == 4
    with pytest.raises(TooLarge):
        dense_rational_rank(SparseMatrix(1, 501, tuple({} for _ in range(501))))


@settings(max_examples=80)
@given(integer_matrices())
def test_rank_matches_oracle_at_three_primes(m):
    primes = sample_verification_primes(3, seed=3)
    assert max(rank(m.mod(P), P).rank for P in primes) == dense_rational_rank(m)


@settings(max_examples=60)
@given(integer_matrices(lo=-3, hi=3))
def test_rank_nullity(m):
    mp = m.mod(F)
    r = rank(mp, F).rank
    ker = kernel_basis(mp, F)
    assert r + len(ker) == m.ncols
    for v in ker:
        assert not any(matvec(mp, v, F.p))


@settings(max_examples=40)
@given(integer_matrices())
def test_rank_of_transpose(m):
    t = SparseMatrix.from_dense([list(r) for r in zip(*m.to_dense())])
    assert rank(m.mod(F), F).rank == rank(t.mod(F), F).rank


@settings(max_examples=40)
@given(integer_matrices())
def test_echelon_leading_count_is_rank(m):
    assert len(echelon_leading(m.mod(F).rows(), F.p)) == rank(m.mod(F), F).rank


def test_matrix_market_round_trip():
    m = random_sparse(7, 9, 0.3, 1)
    text = m.to_matrix_market()
    assert text.startswith("%%MatrixMarket matrix coordinate integer general")
    assert SparseMatrix.from_matrix_market(text) == m


def test_matmul():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[1, -2], [0, 1]])
    assert a.matmul(b, F.p).to_dense() == [[1, 0], [0, 1]]
    assert SparseMatrix.from_dense([[0, 0]]).is_zero()


def test_consensus_agrees_on_small_matrix():
    res = consensus_rank(SparseMatrix.from_dense([[2]]), PrimePolicy())
    assert res.rank == 1 and res.agreement and res.retries == 0


def test_consensus_recovers_from_bad_prime():
    p1, p2 = sample_verification_primes(2)
    res = consensus_rank(SparseMatrix.from_dense([[p1.p]]), [p1, p2])
    assert res.ranks[:2] == (0, 1)
    assert res.rank == 1 and res.agreement and res.retries == 1


def test_consensus_reports_persistent_disagreement():
    primes = sample_verification_primes(2)
    seen = []

    def builder(P):
        seen.append(P.p)
        return SparseMatrix.from_dense([[1 if P.p == seen[0] else 0]], P.p)

    res = consensus_rank(builder, primes)
    assert res.rank == 1 and not res.agreement and res.retries == 4


def test_record_matrices_collects_integer_inputs():
    m = random_sparse(5, 5, 0.5, 2)
    with record_matrices(max_cols=10) as log:
        consensus_rank(m, PrimePolicy(), label="x")
    assert [r[0] for r in log.records] == ["x"]

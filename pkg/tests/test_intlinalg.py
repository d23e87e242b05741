import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariants

from mackey_kit import intlinalg as ila


def matrices(max_rows=5, max_cols=5, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def oracle_invariants(A):
    return sorted(abs(int(x)) for x in sympy_invariants(Matrix(A)) if x != 0)


def test_snf_small_example():
    D, U, V = ila.snf([[2, 4], [6, 8]])
    assert D == [[2, 0], [0, 4]]
    assert ila.matmul(ila.matmul(U, [[2, 4], [6, 8]]), V) == D


def test_snf_zero_and_empty():
    assert ila.invariant_factors([[0, 0], [0, 0]]) == []
    assert ila.invariant_factors([], 3) == []
    assert ila.rank([[0, 0, 0]]) == 0


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_invariant_factors_match_sympy(A):
    assert ila.invariant_factors(A) == oracle_invariants(A)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_snf_transforms(A):
    D, U, V = ila.snf(A)
    assert ila.matmul(ila.matmul(U, A), V) == D
    assert abs(ila.det(U)) == 1 and abs(ila.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert nz == ila.snf_diagonal(A)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_hnf(A):
    H, U = ila.hnf(A)
    assert ila.matmul(U, A) == H
    assert abs(ila.det(U)) == 1
    assert Matrix(H).rank() == Matrix(A).rank()


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_basis(A):
    n = len(A[0])
    K = ila.kernel_basis(A)
    assert len(K) == n - Matrix(A).rank()
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    if K:
        # a basis of a saturated lattice extends to a unimodular matrix
        assert ila.invariant_factors(K) == [1] * len(K)


@settings(max_examples=100, deadline=None)
@given(matrices(4, 4, 4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_recovers_solution(A, x):
    n = len(A[0])
    x = x[:n]
    B = [[sum(a * y for a, y in zip(row, x))] for row in A]
    X = ila.solve(A, B)
    assert X is not None
    assert ila.matmul(A, X) == B


def test_solve_detects_no_integer_solution():
    assert ila.solve([[2]], [[1]]) is None
    assert ila.solve([[1, 1], [1, 1]], [[0], [1]]) is None


@settings(max_examples=60, deadline=None)
@given(matrices(5, 6, 3))
def test_lattice_membership(A):
    L = ila.Lattice(len(A[0]))
    for row in A:
        L.add({j: x for j, x in enumerate(row) if x})
    assert L.rank == Matrix(A).rank()
    for row in A:
        assert {j: x for j, x in enumerate(row) if x} in L


def test_sparse_matrix_roundtrip():
    A = [[1, 0, 2], [0, 0, 0], [3, 4, 0]]
    S = ila.SparseMatrix.from_dense(A, 3)
    assert S.to_dense() == A
    assert S.transpose().to_dense() == ila.transpose(A)
    assert S.matmul(S.transpose()).to_dense() == ila.matmul(A, ila.transpose(A))


def test_cancellation():
    tok = ila.CancelToken()
    tok.cancel()
    with pytest.raises(ila.Cancelled):
        ila.invariant_factors([[2, 1], [1, 3]], cancel=tok)

import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import sympy_matrix, to_sympy
from pseudored.errors import DimensionMismatch, ParseError, Singular
from pseudored.fields import base_field
from pseudored.linalg import (
    Matrix,
    Subspace,
    charpoly,
    det,
    format_matrix,
    kernel,
    matinv,
    parse_matrix,
    poly_eval_matrix,

    rref,
    solve,
    spin,
)

F2 = base_field(2, ("t",))
F3 = base_field(3, ("t", "u"))
F3t = base_field(3, ("t",))


def rand_matrix(F, n, m, seed, deg=1, rank_drop=0):
    rng = random.Random(seed)
    rows = [[F.random(rng, deg) for _ in range(m)] for _ in range(n)]
    for k in range(rank_drop):
        # overwrite the last rows with combinations of the first one
        c = F.random(rng, 1)
        rows[n - 1 - k] = [c * x + y for x, y in zip(rows[0], rows[1 % n])]
    return Matrix(F, rows)


def same(K, a, b):
    # sympy does not normalise GF(p)(t) fractions, so compare the difference
    return K.is_zero(a - b)


def same_matrix(K, A, B_sym):
    rows = B_sym.to_Matrix().tolist()
    return all(same(K, to_sympy(K, A[i, j]), K.from_sympy(rows[i][j]))
               for i in range(A.shape[0]) for j in range(A.shape[1]))


shapes = st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6), st.sampled_from([F2, F3t]))


@settings(max_examples=25, deadline=None)
@given(shapes)
def test_rref_matches_sympy(args):
    n, m, seed, F = args
    A = rand_matrix(F, n, m, seed, rank_drop=min(1, n - 1) if seed % 2 else 0)
    R, r, piv = rref(A)
    S, K = sympy_matrix(A)
    S_r, S_piv = S.rref()
    assert r == len(S_piv) == A.rank()
    assert list(piv) == list(S_piv)
    assert same_matrix(K, R, S_r)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6), st.sampled_from([F2, F3t]))
def test_det_matches_sympy(n, seed, F):
    A = rand_matrix(F, n, n, seed, rank_drop=seed % 2)
    S, K = sympy_matrix(A)
    assert same(K, to_sympy(K, det(A)), S.det())
    assert A.det() == det(A)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.integers(1, 5), st.integers(0, 10**6))
def test_kernel_dimension_and_vectors(n, m, seed):
    A = rand_matrix(F3t, n, m, seed, rank_drop=1)
    K = kernel(A)
    S, _ = sympy_matrix(A)
    assert K.dim == m - S.rank() == m - A.rank()
    for v in K.basis():
        assert all(x.is_zero() for x in A.apply(v))


def test_inverse_and_solve():
    A = rand_matrix(F3, 4, 4, 11)
    assert not det(A).is_zero()
    Ai = matinv(A)
    assert (A @ Ai).is_identity() and A.inverse() == Ai
    b = [F3.gen("t"), F3.one, F3.zero, F3.gen("u")]
    x = solve(A, b)
    assert list(A.apply(x)) == b
    B = rand_matrix(F3, 3, 3, 2, rank_drop=1)
    with pytest.raises(Singular):
        matinv(B)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        rand_matrix(F2, 2, 3, 0) @ rand_matrix(F2, 2, 3, 1)


def test_charpoly_cayley_hamilton():
    for seed in range(5):
        A = rand_matrix(F3, 4, 4, seed)
        f = charpoly(A)
        assert len(f) == 5 and f[-1] == F3.one
        assert poly_eval_matrix(f, A).is_zero()
        # constant term is (-1)^n det
        assert f[0] == det(A)


def test_subspace_operations():
    U = Subspace.from_vectors(F2, 3, [[F2.one, F2.zero, F2.zero], [F2.zero, F2.one, F2.one]])
    V = Subspace.from_vectors(F2, 3, [[F2.zero, F2.one, F2.one], [F2.zero, F2.zero, F2.one]])
    assert U.dim == V.dim == 2
    assert (U + V).is_full()
    assert U.intersection(V).dim == 1
    assert U.contains([F2.one, F2.one, F2.one])
    assert not U.contains([F2.zero, F2.zero, F2.one])
    assert U.annihilator().dim == 1


def test_spin_invariant_subspace():
    # upper triangular generators fix the first coordinate line
    t = F2.gen("t")
    g = Matrix(F2, [[F2.one, t, F2.one], [F2.zero, F2.one, t], [F2.zero, F2.zero, F2.one]])
    h = Matrix(F2, [[t, F2.zero, F2.zero], [F2.zero, F2.one, F2.zero], [F2.zero, F2.zero, t + 1]])
    W = spin([g, h], [[F2.one, F2.zero, F2.zero]])
    assert W.dim == 1 and W.is_invariant([g, h])
    assert spin([g, h], [[F2.zero, F2.zero, F2.one]]).dim == 3


def test_format_round_trip():
    A = rand_matrix(F3, 3, 2, 4, deg=2)
    assert parse_matrix(F3, format_matrix(A)) == A
    with pytest.raises(ParseError):
        parse_matrix(F3, "1 2\n3")

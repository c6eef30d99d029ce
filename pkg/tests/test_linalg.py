from fractions import Fraction

from hypothesis import given, settings, strategies as st

from gsmash import linalg as la
from gsmash.linalg import Subspace

import oracles

small = st.integers(min_value=-3, max_value=3)
matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=4))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_agrees_with_oracle(M):
    assert la.rank(M, len(M[0])) == oracles.rank(M)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rref_is_idempotent_and_nullspace_is_killed(M):
    n = len(M[0])
    R, piv = la.rref(M, n)
    assert la.rref(R, n) == (R, piv)
    for v in la.nullspace(M, n):
        assert la.is_zero(la.matvec([[Fraction(x) for x in r] for r in M], v))
    assert len(la.nullspace(M, n)) + len(piv) == n


def test_solve_returns_none_when_inconsistent():
    A = [[1, 1], [2, 2]]
    assert la.solve(A, [1, 3], 2) is None
    x = la.solve(A, [1, 2], 2)
    assert la.matvec(A, x) == (1, 2)


def test_subspace_equality_is_canonical():
    U = Subspace(3, [(1, 2, 0), (0, 1, 1)])
    V = Subspace(3, [(1, 3, 1), (2, 5, 1)])
    assert U == V and hash(U) == hash(V)
    assert U.contains((1, 1, -1)) and not U.contains((0, 0, 1))


def test_subspace_sum_and_intersection_dimensions():
    U = Subspace.coordinate(4, [0, 1])
    V = Subspace(4, [(0, 1, 1, 0), (0, 0, 0, 1)])
    assert U.sum(V).rank == 4
    assert U.intersect(V) == Subspace(4, [])
    W = Subspace(4, [(1, 1, 0, 0)])
    assert U.intersect(U.sum(W)) == U


def test_coordinates_round_trip():
    U = Subspace(3, [(1, 0, 2), (0, 1, -1)])
    v = (3, -2, 8)
    c = U.coordinates(v)
    assert U.combine(c) == la.vec(v)
    assert U.coordinates((0, 0, 1)) is None

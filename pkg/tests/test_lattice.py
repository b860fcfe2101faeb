from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tpqr.lattice import (DimensionMismatch, IntMatrix, SingularMatrix, cokernel_invariants,
                          is_unimodular, is_upper_unitriangular, rational_inverse,
                          smith_normal_form)
from oracles import det, smith_by_minors


def matrices(max_rows=4, max_cols=4, bound=12):
    return st.integers(1, max_rows).flatmap(lambda m: st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                           min_size=m, max_size=m))).map(IntMatrix.from_rows)


def unimodular(n, rng_moves):
    m = IntMatrix.identity(n).tolist()
    for i, j, f in rng_moves:
        i, j = i % n, j % n
        if i != j:
            m[i] = [a + f * b for a, b in zip(m[i], m[j])]
    return IntMatrix.from_rows(m)


def test_smith_hand_example():
    snf = smith_normal_form(IntMatrix.diag([2, 3]))
    assert snf.diagonal == (1, 6)
    assert cokernel_invariants(IntMatrix.diag([2, 3])) == (0, (6,))


def test_smith_zero_and_rectangular():
    assert smith_normal_form(IntMatrix.zeros(2, 3)).diagonal == (0, 0)
    assert cokernel_invariants(IntMatrix.zeros(2, 3)) == (3, ())
    assert cokernel_invariants(IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12]])) == (1, (2, 6))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_smith_matches_determinantal_divisors(m):
    snf = smith_normal_form(m, transforms=True)
    nonzero = [d for d in snf.diagonal if d]
    assert nonzero == smith_by_minors(m.tolist())
    assert snf.U @ m @ snf.V == snf.diagonal_matrix()
    assert is_unimodular(snf.U) and is_unimodular(snf.V)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


@settings(max_examples=80, deadline=None)
@given(matrices(4, 4, 6).filter(lambda m: m.is_square()),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3)), max_size=8))
def test_cokernel_invariant_under_conjugation(m, moves):
    u = unimodular(m.rows, moves)
    assert cokernel_invariants(u @ m @ u.inverse()) == cokernel_invariants(m)


@settings(max_examples=80, deadline=None)
@given(matrices(4, 4, 6).filter(lambda m: m.is_square()))
def test_determinant_matches_cofactor(m):
    assert m.determinant() == det(m.tolist())


def test_inverse_and_errors():
    m = IntMatrix.from_rows([[1, 2], [0, 1]])
    assert m @ m.inverse() == IntMatrix.identity(2)
    with pytest.raises(SingularMatrix):
        IntMatrix.from_rows([[2, 0], [0, 1]]).inverse()
    with pytest.raises(SingularMatrix):
        rational_inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    with pytest.raises(DimensionMismatch):
        IntMatrix.identity(2) @ IntMatrix.identity(3)


def test_unitriangular_predicate():
    assert is_upper_unitriangular(IntMatrix.from_rows([[1, 5], [0, 1]]))
    assert not is_upper_unitriangular(IntMatrix.from_rows([[1, 0], [1, 1]]))
    assert not is_upper_unitriangular(IntMatrix.from_rows([[2, 0], [0, 1]]))
    assert not is_upper_unitriangular(IntMatrix.zeros(2, 3))


def test_big_integers_do_not_overflow():
    big = 2 ** 80
    m = IntMatrix.from_rows([[big, 0], [0, big * 3]])
    assert smith_normal_form(m).diagonal == (big, 3 * big)
    assert m.determinant() == 3 * big * big

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncpoisson.exactlin import QMatrix, SingularMatrixError, mat_inverse, mat_rank_exact

F = Fraction


def test_rank_proportional_rows():
    assert mat_rank_exact(QMatrix([[1, 2], [2, 4]])) == 1


def test_rank_identity():
    assert mat_rank_exact(QMatrix.identity(3)) == 3


def test_rank_zero_matrix():
    assert mat_rank_exact(QMatrix.zeros(2, 2)) == 0


def test_rank_rectangular_with_fractions():
    m = QMatrix([[F(1, 2), F(1, 3), 0], [F(1, 4), F(1, 6), 0]])
    assert m.rank() == 1


def test_inverse_scalar():
    assert mat_inverse(QMatrix([[2]])) == QMatrix([[F(1, 2)]])


def test_inverse_identity():
    assert mat_inverse(QMatrix.identity(4)) == QMatrix.identity(4)


def test_inverse_singular_raises():
    with pytest.raises(SingularMatrixError):
        mat_inverse(QMatrix([[1, 1], [1, 1]]))


def test_det_known():
    assert QMatrix([[1, 2], [3, 4]]).det() == -2
    assert QMatrix([[F(1, 2), 0], [0, F(2, 3)]]).det() == F(1, 3)
    assert QMatrix([[1, 1], [1, 1]]).det() == 0


def test_matmul_and_trace():
    a = QMatrix([[1, 2], [3, 4]])
    b = QMatrix([[0, 1], [1, 0]])
    assert a @ b == QMatrix([[2, 1], [4, 3]])
    assert a.trace() == 5


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def small_matrices(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_n))
    rows = draw(
        st.lists(st.lists(rationals, min_size=m, max_size=m), min_size=n, max_size=n)
    )
    return QMatrix(rows)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_invariant_under_row_permutation_and_scaling(m):
    rows = list(m.entries)
    permuted = QMatrix(list(reversed(rows)))
    assert permuted.rank() == m.rank()
    scaled = QMatrix([[F(3, 2) * x for x in rows[0]]] + [list(r) for r in rows[1:]])
    assert scaled.rank() == m.rank()


@settings(max_examples=40, deadline=None)
@given(small_matrices(max_n=3))
def test_inverse_times_matrix_is_identity(m):
    if m.rows != m.cols:
        return
    try:
        inv = m.inverse()
    except SingularMatrixError:
        assert m.det() == 0
        return
    assert inv @ m == QMatrix.identity(m.rows)
    assert m @ inv == QMatrix.identity(m.rows)


@settings(max_examples=40, deadline=None)
@given(small_matrices(max_n=3))
def test_rank_matches_gauss_oracle(m):
    # independent oracle: plain fraction Gauss elimination
    rows = [list(r) for r in m.entries]
    rank = 0
    for col in range(m.cols):
        piv = next((i for i in range(rank, m.rows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        rows[rank] = [x / p for x in rows[rank]]
        for i in range(m.rows):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    assert m.rank() == rank

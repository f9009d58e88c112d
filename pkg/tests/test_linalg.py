from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from backstrom import ExactMatrix, GroundField, block_diag_embed, kernel_basis, rank

F2 = GroundField.prime(2)
F3 = GroundField.prime(3)
F5 = GroundField.prime(5)
Q = GroundField.rationals()


def test_field_validation():
    with pytest.raises(ValueError):
        GroundField.prime(4)
    with pytest.raises(ValueError):
        GroundField.prime(2**31 + 11)
    assert GroundField.prime(2147483647).p == 2147483647
    assert str(Q) == "Q"


def test_field_arithmetic():
    assert F5.add(3, 4) == 2
    assert F5.mul(3, 4) == 2
    assert F5.inv(3) == 2
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)


def test_rank_identity_over_f5():
    assert rank(ExactMatrix.identity(F5, 2)) == 2


def test_rank_all_ones_over_f2():
    m = ExactMatrix.from_rows(F2, [[1, 1], [1, 1]])
    assert rank(m) == 1


def test_rank_rational_dependent_rows():
    m = ExactMatrix.from_rows(Q, [[1, 2], [2, 4]])
    assert rank(m) == 1


def test_kernel_of_identity_is_empty():
    assert kernel_basis(ExactMatrix.identity(Q, 3)) == []


def test_kernel_of_zero_matrix_is_full():
    basis = kernel_basis(ExactMatrix.zeros(F3, 2, 3))
    assert len(basis) == 3


def test_kernel_single_equation_over_f3():
    m = ExactMatrix.from_rows(F3, [[1, 1]])
    basis = kernel_basis(m)
    assert len(basis) == 1
    (v,) = basis
    # proportional to (1, 2): x + y = 0 mod 3
    assert (v[0] + v[1]) % 3 == 0 and v != [0, 0]


def test_block_diag_empty():
    m = block_diag_embed([])
    assert (m.rows, m.cols) == (0, 0)


def test_block_diag_identities():
    m = block_diag_embed([ExactMatrix.identity(F5, 2), ExactMatrix.identity(F5, 3)])
    assert m.to_rows() == ExactMatrix.identity(F5, 5).to_rows()


def test_block_diag_mixed_over_f2():
    m = block_diag_embed(
        [ExactMatrix.from_rows(F2, [[1]]), ExactMatrix.from_rows(F2, [[0]])]
    )
    assert m.to_rows() == [[1, 0], [0, 0]]
    assert rank(m) == 1


def test_block_diag_field_mismatch():
    with pytest.raises(ValueError):
        block_diag_embed([ExactMatrix.identity(F2, 1), ExactMatrix.identity(F3, 1)])


@st.composite
def matrices(draw):
    field = draw(st.sampled_from([F2, F5, Q]))
    rows = draw(st.integers(0, 5))
    cols = draw(st.integers(0, 5))
    entries = draw(
        st.lists(st.integers(-6, 6), min_size=rows * cols, max_size=rows * cols)
    )
    return ExactMatrix(field, rows, cols, [field.element(x) for x in entries])


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(st.lists(matrices(), max_size=4))
@settings(max_examples=80, deadline=None)
def test_block_diag_rank_additive(blocks):
    blocks = [b for b in blocks if b.field == (blocks[0].field if blocks else None)]
    if not blocks:
        return
    assert rank(block_diag_embed(blocks)) == sum(rank(b) for b in blocks)


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_kernel_vectors_annihilate(m):
    f = m.field
    for v in kernel_basis(m):
        for i in range(m.rows):
            acc = f.zero
            for j in range(m.cols):
                acc = f.add(acc, f.mul(m.entry(i, j), v[j]))
            assert f.is_zero(acc)

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlrc.errors import DimensionMismatch, InvalidInput
from qlrc.galois import build_tower
from qlrc.matrix import (
    GFMatrix,
    contains_rows,
    export_matrix,
    identity,
    in_row_space,
    kernel,
    matmul,
    parse_matrix,
    rank,
    row_space_equal,
    rref,
    stripped_rref,
    zeros,
)

from oracles import NaiveField
from oracles import rank as naive_rank

F16 = build_tower(2, 1, 4)
F81 = build_tower(3, 1, 4)
F25 = build_tower(5, 1, 2)


def test_trivial_cases():
    I = identity(F16, 16, 4)
    R, piv = rref(I)
    assert R == I and piv == (0, 1, 2, 3)
    Z = zeros(F16, 16, 3, 5)
    R, piv = rref(Z)
    assert R == Z and piv == ()
    M = GFMatrix(F16, 16, [[1, 2, 3], [2, F16.mul(2, 2), F16.mul(2, 3)]])
    assert stripped_rref(M).rows == 1
    assert rank(I) == 4
    assert kernel(I).rows == 0
    assert kernel(Z).rows == 5
    assert row_space_equal(M, rref(M)[0])
    assert in_row_space([0, 0, 0], M)


def test_entries_checked_against_field():
    with pytest.raises(InvalidInput):
        GFMatrix(F16, 4, [[2]])  # 2 is not in F_4 = {0,1,6,7}
    GFMatrix(F16, 4, [[6, 7, 1]])


def test_dimension_errors():
    A = identity(F16, 16, 3)
    B = identity(F16, 16, 4)
    with pytest.raises(DimensionMismatch):
        row_space_equal(A, B)
    with pytest.raises(DimensionMismatch):
        in_row_space([1, 0], A)
    with pytest.raises(DimensionMismatch):
        matmul(A, B)


def test_export_roundtrip():
    M = GFMatrix(F16, 16, [[1, 2, 3], [4, 5, 6]])
    text = export_matrix(M)
    assert text == "2 3 16\n1 2 3\n4 5 6\n"
    assert parse_matrix(text, F16) == M


@st.composite
def matrices(draw):
    T, order = draw(st.sampled_from([(F16, 16), (F16, 4), (F16, 2), (F81, 9), (F81, 3), (F25, 25)]))
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 8))
    elems = T.subfield_elements(order).tolist()
    # bias toward low rank by sometimes duplicating combinations
    data = [[draw(st.sampled_from(elems)) for _ in range(c)] for _ in range(r)]
    return GFMatrix(T, order, data)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(M):
    K = kernel(M)
    assert rank(M) + K.rows == M.cols
    if K.rows:
        assert not np.any(matmul(M, K.T).data)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_matches_naive_elimination(M):
    T = M.tower
    F = NaiveField(T.p, T.degree, T.poly)
    assert rank(M) == naive_rank(M.data.tolist(), F)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_rref_canonical(M, data):
    R, _ = rref(M)
    assert rref(R)[0] == R
    # random invertible row operations keep the canonical form
    T, ops = M.tower, M.ops
    elems = [e for e in T.subfield_elements(M.field_order).tolist() if e]
    A = M.data.copy()
    for _ in range(3):
        i = data.draw(st.integers(0, A.shape[0] - 1))
        j = data.draw(st.integers(0, A.shape[0] - 1))
        c = data.draw(st.sampled_from(elems))
        if i != j:
            A[i] = ops.add(A[i], ops.mul(c, A[j]))
        else:
            A[i] = ops.mul(c, A[i])
    M2 = M.with_data(A)
    assert row_space_equal(M, M2)
    assert stripped_rref(M) == stripped_rref(M2)
    assert contains_rows(M, M2) and contains_rows(M2, M)

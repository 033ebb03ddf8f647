"""Dense exact linear algebra over a subfield of a tower."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidInput
from .galois import FieldOps, GaloisTower


class GFMatrix:
    """An immutable rows x cols matrix of element codes lying in F_field_order."""

    __slots__ = ("tower", "field_order", "data")

    def __init__(self, tower: GaloisTower, field_order: int, data, check: bool = True):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise DimensionMismatch("matrix data must be two-dimensional")
        tower.check_subfield(field_order)
        if check and arr.size:
            if arr.min() < 0 or arr.max() >= tower.order:
                raise InvalidInput("entry code out of range")
            if not np.all(tower.in_subfield(arr, field_order)):
                raise InvalidInput(f"entries outside F_{field_order}")
        arr.setflags(write=False)
        self.tower = tower
        self.field_order = field_order
        self.data = arr

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def ops(self) -> FieldOps:
        return self.tower.ops(self.field_order)

    def with_data(self, data, field_order: int | None = None) -> "GFMatrix":
        return GFMatrix(self.tower, self.field_order if field_order is None else field_order,
                        data, check=False)

    def transpose(self) -> "GFMatrix":
        return self.with_data(self.data.T.copy())

    @property
    def T(self) -> "GFMatrix":
        return self.transpose()

    def __eq__(self, other) -> bool:
        return (isinstance(other, GFMatrix) and self.tower.key == other.tower.key
                and self.shape == other.shape and bool(np.array_equal(self.data, other.data)))

    def __repr__(self) -> str:
        return f"GFMatrix({self.rows}x{self.cols} over F_{self.field_order})"


def zeros(tower: GaloisTower, field_order: int, rows: int, cols: int) -> GFMatrix:
    return GFMatrix(tower, field_order, np.zeros((rows, cols), dtype=np.int64), check=False)


def identity(tower: GaloisTower, field_order: int, n: int) -> GFMatrix:
    return GFMatrix(tower, field_order, np.eye(n, dtype=np.int64), check=False)


def rref_array(A: np.ndarray, ops: FieldOps) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a copy of A; zero rows are kept at the bottom."""
    A = np.array(A, dtype=np.int64, copy=True)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        piv = A[r, c]
        if piv != 1:
            A[r] = ops.mul(A[r], ops.inv(piv))
        f = A[:, c].copy()
        f[r] = 0
        idx = np.flatnonzero(f)
        if idx.size:
            A[idx] = ops.sub(A[idx], ops.mul(f[idx, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def kernel_array(A: np.ndarray, ops: FieldOps) -> np.ndarray:
    rows, cols = A.shape
    R, pivots = rref_array(A, ops)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    if free:
        K[np.arange(len(free)), free] = 1
        if pivots:
            K[:, pivots] = ops.neg(R[: len(pivots)][:, free].T)
    return K


def rref(M: GFMatrix) -> tuple[GFMatrix, tuple[int, ...]]:
    R, piv = rref_array(M.data, M.ops)
    return M.with_data(R), tuple(piv)


def rank(M: GFMatrix) -> int:
    return len(rref_array(M.data, M.ops)[1])


def kernel(M: GFMatrix) -> GFMatrix:
    """Basis (as rows) of {x : M x^T = 0}."""
    return M.with_data(kernel_array(M.data, M.ops))


def stripped_rref(M: GFMatrix) -> GFMatrix:
    R, piv = rref_array(M.data, M.ops)
    return M.with_data(R[: len(piv)])


def _compatible(A: GFMatrix, B: GFMatrix) -> None:
    if A.tower.key != B.tower.key:
        raise DimensionMismatch("matrices live in different towers")
    if A.cols != B.cols:
        raise DimensionMismatch(f"column counts differ: {A.cols} vs {B.cols}")


def _joint_order(A: GFMatrix, B: GFMatrix) -> int:
    return max(A.field_order, B.field_order)


def vstack(mats: Sequence[GFMatrix]) -> GFMatrix:
    first = mats[0]
    for m in mats[1:]:
        _compatible(first, m)
    order = max(m.field_order for m in mats)
    data = np.vstack([m.data.reshape(-1, first.cols) for m in mats])
    return GFMatrix(first.tower, order, data, check=False)


def row_space_equal(M1: GFMatrix, M2: GFMatrix) -> bool:
    _compatible(M1, M2)
    order = _joint_order(M1, M2)
    ops = M1.tower.ops(order)
    R1, p1 = rref_array(M1.data, ops)
    R2, p2 = rref_array(M2.data, ops)
    return p1 == p2 and bool(np.array_equal(R1[: len(p1)], R2[: len(p2)]))


def in_row_space(v, M: GFMatrix) -> bool:
    v = np.asarray(v.data if isinstance(v, GFMatrix) else v, dtype=np.int64).reshape(1, -1)
    if v.shape[1] != M.cols:
        raise DimensionMismatch(f"vector length {v.shape[1]} vs {M.cols} columns")
    if not np.any(v):
        return True
    ops = M.tower.ops(M.tower.order)
    base = len(rref_array(M.data, ops)[1])
    return len(rref_array(np.vstack([M.data, v]), ops)[1]) == base


def contains_rows(big: GFMatrix, small: GFMatrix) -> bool:
    """True iff every row of small lies in the row space of big."""
    _compatible(big, small)
    if small.rows == 0:
        return True
    ops = big.tower.ops(_joint_order(big, small))
    r = len(rref_array(big.data, ops)[1])
    return len(rref_array(np.vstack([big.data, small.data]), ops)[1]) == r


def matmul(A: GFMatrix, B: GFMatrix) -> GFMatrix:
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    order = _joint_order(A, B)
    data = A.tower.ops(order).matmul(A.data, B.data)
    return GFMatrix(A.tower, order, data, check=False)


def export_matrix(M: GFMatrix) -> str:
    lines = [f"{M.rows} {M.cols} {M.field_order}"]
    lines += [" ".join(str(int(x)) for x in row) for row in M.data]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, tower: GaloisTower) -> GFMatrix:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise InvalidInput("empty matrix text")
    try:
        rows, cols, order = (int(t) for t in lines[0].split())
        body = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise InvalidInput(f"malformed matrix text: {exc}") from None
    if len(body) != rows or any(len(r) != cols for r in body):
        raise DimensionMismatch("matrix body does not match its header")
    data = np.array(body, dtype=np.int64).reshape(rows, cols)
    return GFMatrix(tower, order, data)

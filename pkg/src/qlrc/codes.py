"""Linear codes, their duals and transforms, and exact minimum-distance oracles."""
from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyIndexSet,
    FieldNotSquare,
    IndexOutOfRange,
    Infeasible,
    InvalidInput,
    NotASubfield,
    VerificationMismatch,
    ZeroCode,
)
from .galois import FieldOps, GaloisTower, build_tower
from .matrix import (
    GFMatrix,
    contains_rows,
    export_matrix,
    kernel_array,
    parse_matrix,
    rref_array,
)

ENUM_LIMIT = 10**8
COLUMN_MAX_WEIGHT = 6
# DFS nodes the column search may visit for a single target weight
NODE_LIMIT = 2_000_000
# auto mode re-runs full enumeration as a cross-check only up to this many messages
CROSS_CHECK_LIMIT = 10**6


class LinearCode:
    """An F_field_order-linear code held as a canonical RREF generator (no zero rows)."""

    def __init__(self, tower: GaloisTower, field_order: int, generator, n: int | None = None,
                 check: bool = False):
        if isinstance(generator, GFMatrix):
            data = generator.data
        else:
            data = np.asarray(generator, dtype=np.int64)
        if data.ndim == 1:
            data = data.reshape(1, -1) if data.size else np.zeros((0, n or 0), dtype=np.int64)
        if n is None:
            n = data.shape[1]
        if data.shape[0] == 0:
            data = np.zeros((0, n), dtype=np.int64)
        if data.shape[1] != n:
            raise DimensionMismatch(f"generator has {data.shape[1]} columns, expected {n}")
        tower.check_subfield(field_order)
        if check:
            GFMatrix(tower, field_order, data)
        R, piv = rref_array(data, tower.ops(field_order))
        self.tower = tower
        self.field_order = field_order
        self.n = n
        self.generator = GFMatrix(tower, field_order, R[: len(piv)], check=False)
        self.pivots = tuple(piv)
        self._distance: tuple[int, str] | None = None
        self._parity: np.ndarray | None = None

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def dimension(self) -> int:
        return self.k

    @property
    def ops(self) -> FieldOps:
        return self.tower.ops(self.field_order)

    @property
    def G(self) -> np.ndarray:
        return self.generator.data

    def parity_check(self) -> np.ndarray:
        if self._parity is None:
            self._parity = kernel_array(self.G, self.ops)
        return self._parity

    @property
    def distance(self) -> tuple[int, str] | None:
        return self._distance

    def set_distance(self, d: int, method: str) -> None:
        self._distance = (int(d), method)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinearCode) and self.tower.key == other.tower.key
                and self.n == other.n and self.generator.shape == other.generator.shape
                and bool(np.array_equal(self.G, other.G)))

    def __hash__(self) -> int:
        return hash((self.tower.key, self.n, self.G.tobytes()))

    def __contains__(self, word) -> bool:
        v = np.asarray(word, dtype=np.int64).reshape(1, -1)
        if not np.any(v):
            return True
        ops = self.tower.ops(self.tower.order)
        return len(rref_array(np.vstack([self.G, v]), ops)[1]) == self.k

    def __repr__(self) -> str:
        d = self._distance[0] if self._distance else "?"
        return f"[{self.n},{self.k},{d}]_{self.field_order}"

    def to_json(self) -> dict:
        d, method = self._distance if self._distance else (None, "none")
        return {"field": self.field_order, "n": self.n, "k": self.k, "d": d,
                "d_method": method, "generator": export_matrix(self.generator),
                "tower": self.tower.to_json()}

    @classmethod
    def from_json(cls, obj: dict, tower: GaloisTower | None = None) -> "LinearCode":
        if tower is None:
            t = obj["tower"]
            tower = build_tower(int(t["p"]), int(t["q_exponent"]), int(t["s"]), t["mode"])
        M = parse_matrix(obj["generator"], tower)
        n = int(obj["n"])
        if M.cols != n and M.rows:
            raise DimensionMismatch("generator width does not match n")
        return cls(tower, int(obj["field"]), M.data.reshape(M.rows, n), n=n)


def zero_code(tower: GaloisTower, field_order: int, n: int) -> LinearCode:
    return LinearCode(tower, field_order, np.zeros((0, n), dtype=np.int64), n=n)


def full_space(tower: GaloisTower, field_order: int, n: int) -> LinearCode:
    return LinearCode(tower, field_order, np.eye(n, dtype=np.int64), n=n)


def code_from_matrix(M: GFMatrix) -> LinearCode:
    return LinearCode(M.tower, M.field_order, M.data, n=M.cols)


def is_subcode(small: LinearCode, big: LinearCode) -> bool:
    if small.n != big.n:
        raise DimensionMismatch("codes have different lengths")
    return contains_rows(big.generator, small.generator)


def same_code(a: LinearCode, b: LinearCode) -> bool:
    return a.n == b.n and a.k == b.k and bool(np.array_equal(a.G, b.G))


# ---------------------------------------------------------------- duals

def euclidean_dual(C: LinearCode) -> LinearCode:
    return LinearCode(C.tower, C.field_order, C.parity_check(), n=C.n)


def conjugate_root(C: LinearCode) -> int:
    """sqrt of the field order, raising FieldNotSquare when it is not a square."""
    t = C.tower.check_subfield(C.field_order)
    if t % 2:
        raise FieldNotSquare(f"F_{C.field_order} is not a quadratic extension")
    return C.tower.p ** (t // 2)


def conjugate(C: LinearCode) -> LinearCode:
    r = conjugate_root(C)
    return LinearCode(C.tower, C.field_order, C.tower.power(C.G, r), n=C.n)


def hermitian_dual(C: LinearCode) -> LinearCode:
    r = conjugate_root(C)
    conj = C.tower.power(C.G, r)
    return LinearCode(C.tower, C.field_order, kernel_array(conj, C.ops), n=C.n)


def dual(C: LinearCode, mode: str) -> LinearCode:
    if mode == "euclidean":
        return euclidean_dual(C)
    if mode == "hermitian":
        return hermitian_dual(C)
    raise InvalidInput(f"unknown mode {mode!r}")


# ---------------------------------------------------------------- puncture / shorten

def _index_set(C: LinearCode, T: Iterable[int]) -> list[int]:
    idx = sorted(set(int(t) for t in T))
    if not idx:
        raise EmptyIndexSet("index set is empty")
    if idx[0] < 0 or idx[-1] >= C.n:
        raise IndexOutOfRange(f"indices must lie in 0..{C.n - 1}")
    return idx


def puncture(C: LinearCode, T: Iterable[int]) -> LinearCode:
    """Projection of every codeword onto the (sorted) coordinates T."""
    idx = _index_set(C, T)
    return LinearCode(C.tower, C.field_order, C.G[:, idx], n=len(idx))


def shorten(C: LinearCode, T: Iterable[int]) -> LinearCode:
    """Projection onto T of the codewords vanishing outside T."""
    idx = _index_set(C, T)
    inside = set(idx)
    out = [j for j in range(C.n) if j not in inside]
    if not out or C.k == 0:
        return LinearCode(C.tower, C.field_order, C.G[:, idx], n=len(idx))
    M = kernel_array(C.G[:, out].T, C.ops)
    if M.shape[0] == 0:
        return zero_code(C.tower, C.field_order, len(idx))
    return LinearCode(C.tower, C.field_order, C.ops.matmul(M, C.G[:, idx]), n=len(idx))


# ---------------------------------------------------------------- subfields

def _extension(C: LinearCode, target: int) -> int:
    t_src = C.tower.check_subfield(C.field_order)
    t_dst = C.tower.check_subfield(target)
    if t_src % t_dst:
        raise NotASubfield(f"F_{target} is not a subfield of F_{C.field_order}")
    return t_src // t_dst


def _basis(C: LinearCode, ext: int) -> list[int]:
    # powers of a primitive element of the source field span it over any subfield
    h = C.tower.subfield_primitive(C.field_order)
    return [C.tower.power(h, b) for b in range(ext)]


def subfield_subcode(C: LinearCode, target: int) -> LinearCode:
    """Codewords of C with every coordinate in F_target, as an F_target-code."""
    ext = _extension(C, target)
    if ext == 1:
        return C
    H = C.parity_check()
    if H.shape[0] == 0:
        return full_space(C.tower, target, C.n)
    tower = C.tower
    rows = [tower.trace(tower.mul(gamma, H), target, C.field_order) for gamma in _basis(C, ext)]
    A = np.vstack(rows)
    K = kernel_array(A, tower.ops(target))
    return LinearCode(tower, target, K, n=C.n)


def trace_code(C: LinearCode, target: int) -> LinearCode:
    """Coordinatewise trace image of C onto F_target."""
    ext = _extension(C, target)
    if C.k == 0:
        return zero_code(C.tower, target, C.n)
    tower = C.tower
    rows = [tower.trace(tower.mul(gamma, C.G), target, C.field_order) for gamma in _basis(C, ext)]
    return LinearCode(tower, target, np.vstack(rows), n=C.n)


# ---------------------------------------------------------------- enumeration

def _message_count(C: LinearCode) -> int:
    return C.field_order ** C.k


class _Packer:
    """Characteristic-2 codewords as bit planes packed into uint64 words."""

    def __init__(self, tower: GaloisTower, order: int, n: int):
        used = 0
        for c in tower.subfield_elements(order):
            used |= int(c)
        self.bits = [b for b in range(tower.degree) if used >> b & 1]
        self.n = n
        self.words = (n + 63) // 64

    def pack(self, V: np.ndarray) -> np.ndarray:
        V = V.reshape(-1, self.n)
        pad = self.words * 64 - self.n
        planes = []
        for b in self.bits:
            bits = ((V >> b) & 1).astype(np.uint8)
            if pad:
                bits = np.concatenate([bits, np.zeros((bits.shape[0], pad), np.uint8)], axis=1)
            planes.append(np.packbits(bits, axis=1, bitorder="little").view(np.uint64))
        return np.stack(planes, axis=1)

    @staticmethod
    def weights(X: np.ndarray) -> np.ndarray:
        support = np.bitwise_or.reduce(X, axis=1)
        return np.bitwise_count(support).sum(axis=-1, dtype=np.int64)


def _split(order: int, k: int, cap: int = 1 << 17) -> int:
    k1 = 0
    while k1 < k and order ** (k1 + 1) <= cap:
        k1 += 1
    return max(k1, 1) if k else 0


def enumerate_min_weight(C: LinearCode, floor: int = 0) -> int:
    """Minimum nonzero weight by enumerating all messages.

    Stops early once a weight <= floor is seen (the returned value is then
    only guaranteed to be <= floor).
    """
    if C.k == 0:
        raise ZeroCode("the zero code has no nonzero codewords")
    if _message_count(C) > ENUM_LIMIT:
        raise Infeasible(f"{C.field_order}^{C.k} messages exceed the 1e8 enumeration guard")
    tower, order, G = C.tower, C.field_order, C.G
    scalars = tower.subfield_elements(order)
    k1 = _split(order, C.k)
    best = C.n + 1
    if tower.p == 2:
        pk = _Packer(tower, order, C.n)
        mults = [pk.pack(tower.mul(scalars[:, None], G[i][None, :])) for i in range(C.k)]

        def table(rows):
            T = np.zeros((1, len(pk.bits), pk.words), dtype=np.uint64)
            for i in rows:
                T = (T[None, :] ^ mults[i][:, None]).reshape(-1, len(pk.bits), pk.words)
            return T

        T1 = table(range(k1))
        T2 = table(range(k1, C.k))
        for j in range(T2.shape[0]):
            w = pk.weights(T1 ^ T2[j])
            if j == 0:
                w[0] = C.n + 1
            best = min(best, int(w.min()))
            if best <= floor:
                break
        return best
    # odd characteristic: local indices with an addition table
    if order > 4096:
        raise Infeasible(f"enumeration over F_{order} is not supported")
    local = {int(c): i for i, c in enumerate(scalars)}
    lut = np.zeros(tower.order, dtype=np.int64)
    lut[scalars] = np.arange(order)
    addtab = lut[tower.add(scalars[:, None], scalars[None, :])].astype(np.int32)
    mults = [lut[tower.mul(scalars[:, None], G[i][None, :])].astype(np.int32)
             for i in range(C.k)]
    del local

    def table(rows):
        T = np.zeros((1, C.n), dtype=np.int32)
        for i in rows:
            T = addtab[T[None, :, :], mults[i][:, None, :]].reshape(-1, C.n)
        return T

    T1 = table(range(k1))
    T2 = table(range(k1, C.k))
    for j in range(T2.shape[0]):
        w = np.count_nonzero(addtab[T1, T2[j][None, :]], axis=1)
        if j == 0:
            w[0] = C.n + 1
        best = min(best, int(w.min()))
        if best <= floor:
            break
    return best


def all_codewords(C: LinearCode, limit: int = 1 << 20) -> np.ndarray:
    """Every codeword as rows of element codes (small codes only)."""
    if _message_count(C) > limit:
        raise Infeasible("too many codewords to list")
    tower = C.tower
    scalars = tower.subfield_elements(C.field_order)
    words = np.zeros((1, C.n), dtype=np.int64)
    for i in range(C.k):
        mult = tower.mul(scalars[:, None], C.G[i][None, :])
        words = tower.add(words[None, :, :], mult[:, None, :]).reshape(-1, C.n)
    return words


# ---------------------------------------------------------------- column dependencies

def _parallel_pair(V: np.ndarray, ops: FieldOps) -> bool:
    """True iff two columns of V are proportional or some column is zero."""
    m = V.shape[1]
    if m == 0:
        return False
    if V.shape[0] == 0:
        return True
    nz = V != 0
    if not nz.any(axis=0).all():
        return True
    if m < 2:
        return False
    first = np.argmax(nz, axis=0)
    lead = V[first, np.arange(m)]
    Vn = ops.mul(V, ops.inv(lead)[None, :])
    return np.unique(Vn.T, axis=0).shape[0] < m


def _nodes(n: int, depth: int) -> int:
    return sum(comb(n, i) for i in range(depth + 1))


def _has_dependency(H: np.ndarray, ops: FieldOps, w: int) -> bool:
    """Is some set of w columns of H dependent?  Assumes none of size < w is."""
    n = H.shape[1]
    if w > n:
        return False
    if w == 1:
        return bool((~(H != 0).any(axis=0)).any())

    def rec(M: np.ndarray, start: int, depth: int) -> bool:
        if depth == 0:
            return _parallel_pair(M[:, start:], ops)
        for c in range(start, n - depth - 1):
            col = M[:, c]
            nzr = np.flatnonzero(col)
            if nzr.size == 0:
                return True
            i = int(nzr[0])
            row = ops.mul(M[i], ops.inv(col[i]))
            rest = np.delete(M, i, axis=0)
            f = rest[:, c]
            sel = np.flatnonzero(f)
            if sel.size:
                rest[sel] = ops.sub(rest[sel], ops.mul(f[sel, None], row[None, :]))
            if rec(rest, c + 1, depth - 1):
                return True
        return False

    return rec(H, 0, w - 2)


def smallest_dependency(H: np.ndarray, ops: FieldOps, max_w: int) -> int | None:
    """Size of the smallest linearly dependent column set of H, if it is <= max_w.

    H must have linearly independent rows.  Returns None when every set of at
    most max_w columns is independent.
    """
    r, n = H.shape
    for w in range(1, max_w + 1):
        if w > n:
            return None
        if w == r + 1:
            return w
        if _nodes(n, w - 2) > NODE_LIMIT:
            raise Infeasible(f"column search for weight {w} exceeds {NODE_LIMIT} nodes")
        if _has_dependency(H, ops, w):
            return w
    return None


def _column_feasible(C: LinearCode, w: int) -> bool:
    return _nodes(C.n, max(w - 2, 0)) <= NODE_LIMIT


def min_distance(C: LinearCode, method: str = "auto") -> int:
    """Exact minimum distance; the result is cached on C with tag "verified"."""
    if C.k == 0:
        raise ZeroCode("the zero code has no minimum distance")
    if C._distance is not None and C._distance[1] == "verified":
        return C._distance[0]
    enum_ok = _message_count(C) <= ENUM_LIMIT
    if method == "full_enum":
        if not enum_ok:
            raise Infeasible(f"{C.field_order}^{C.k} messages exceed the 1e8 enumeration guard")
        d = enumerate_min_weight(C)
    elif method == "column_dependency":
        d = smallest_dependency(C.parity_check(), C.ops, COLUMN_MAX_WEIGHT)
        if d is None:
            raise Infeasible(f"minimum distance exceeds {COLUMN_MAX_WEIGHT}")
    elif method == "auto":
        d_col = None
        try:
            d_col = smallest_dependency(C.parity_check(), C.ops, COLUMN_MAX_WEIGHT)
        except Infeasible:
            d_col = None
        if enum_ok and (d_col is None or _message_count(C) <= CROSS_CHECK_LIMIT):
            d = enumerate_min_weight(C)
            if d_col is not None and d_col != d:
                raise VerificationMismatch(
                    f"distance oracles disagree: enumeration {d}, columns {d_col}")
        elif d_col is not None:
            d = d_col
        else:
            raise Infeasible(f"distance exceeds {COLUMN_MAX_WEIGHT} and "
                             f"{C.field_order}^{C.k} exceeds the enumeration guard")
    else:
        raise InvalidInput(f"unknown method {method!r}")
    C.set_distance(d, "verified")
    return d


def distance_exceeds(C: LinearCode, w: int) -> bool:
    """True iff C has no nonzero codeword of weight <= w."""
    if C.k == 0 or w < 1:
        return True
    if C._distance is not None and C._distance[1] == "verified":
        return C._distance[0] > w
    if w >= C.n - C.k + 1:
        return False
    enum_ok = _message_count(C) <= ENUM_LIMIT
    if _column_feasible(C, w) and (not enum_ok or _message_count(C) > 1 << 16):
        return smallest_dependency(C.parity_check(), C.ops, w) is None
    if enum_ok:
        return enumerate_min_weight(C, floor=w) > w
    raise Infeasible(f"cannot certify weight > {w}")


def minimum_weight_words(C: LinearCode, weight: int) -> np.ndarray:
    """All codewords of the given weight (enumeration; small codes only)."""
    words = all_codewords(C, limit=ENUM_LIMIT)
    return words[np.count_nonzero(words, axis=1) == weight]


def restricted(C: LinearCode, T: Sequence[int]) -> np.ndarray:
    return C.G[:, list(T)]

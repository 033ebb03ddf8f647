"""Evaluation point domains and the generator matrices of evaluation codes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cosets import ExponentSet
from .errors import (
    AxisNotInSubfield,
    DivisibilityViolation,
    ExponentOutOfRange,
    InvalidInput,
    ModulusMismatch,
)
from .galois import GaloisTower
from .matrix import GFMatrix


@dataclass(frozen=True, eq=False)
class EvaluationDomain:
    """lam homothetic blocks of the n-th roots of unity.

    Point i*n + j is a^i * zeta^j with a a primitive N-th root of unity and
    zeta = a^(N/n); block i therefore occupies coordinates i*n .. i*n + n - 1.
    """

    tower: GaloisTower
    N: int
    n: int
    lam: int
    points: np.ndarray
    kind: str

    @property
    def length(self) -> int:
        return self.lam * self.n

    def blocks(self) -> list[tuple[int, ...]]:
        return [tuple(range(i * self.n, (i + 1) * self.n)) for i in range(self.lam)]

    def to_json(self) -> dict:
        return {"N": self.N, "n": self.n, "lambda": self.lam, "kind": self.kind,
                "points": [int(x) for x in self.points]}


def build_domain(tower: GaloisTower, N: int, n: int, lam: int) -> EvaluationDomain:
    if n < 1 or N < 1 or N % n or (tower.order - 1) % N:
        raise DivisibilityViolation(f"need n | N | {tower.order - 1}, got n={n}, N={N}")
    if not 1 <= lam <= N // n:
        raise DivisibilityViolation(f"lambda must lie in 1..{N // n}, got {lam}")
    step = (tower.order - 1) // N
    i = np.arange(lam)[:, None]
    j = np.arange(n)[None, :]
    logs = (step * (i + (N // n) * j)).reshape(-1)
    points = tower.power_of_generator(logs)
    points.setflags(write=False)
    if lam * n == N:
        kind = "full"
    elif N % (lam * n) == 0:
        kind = "divisor"
    else:
        kind = "partial"
    return EvaluationDomain(tower, N, n, lam, points, kind)


def full_domain(tower: GaloisTower, N: int) -> EvaluationDomain:
    """All N-th roots of unity in the order 1, a, a^2, ..."""
    return build_domain(tower, N, N, 1)


def _power_rows(tower: GaloisTower, points: np.ndarray, exps: Sequence[int]) -> np.ndarray:
    out = np.empty((len(exps), len(points)), dtype=np.int64)
    for r, e in enumerate(exps):
        out[r] = tower.power(points, int(e))
    return out


def evaluation_code(delta: ExponentSet, domain: EvaluationDomain) -> GFMatrix:
    if delta.N != domain.N:
        raise ModulusMismatch(f"exponent modulus {delta.N} vs domain modulus {domain.N}")
    tower = domain.tower
    data = _power_rows(tower, domain.points, delta.elements).reshape(len(delta), domain.length)
    return GFMatrix(tower, tower.order, data, check=False)


@dataclass(frozen=True, eq=False)
class CartesianDomain:
    """Z_1 x Z_2 x ... x Z_w, enumerated with axis 1 fastest."""

    base: EvaluationDomain
    axes: tuple[tuple[int, ...], ...]
    field_order: int

    @property
    def tower(self) -> GaloisTower:
        return self.base.tower

    @property
    def axis_sizes(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.axes)

    @property
    def length(self) -> int:
        return self.base.length * int(np.prod(self.axis_sizes, dtype=np.int64))

    @property
    def beta(self) -> int:
        return self.length

    def coordinates(self) -> np.ndarray:
        """Array (length, w) of point coordinates; column 0 is the base axis."""
        grids = [np.asarray(self.base.points)] + [np.asarray(a, dtype=np.int64) for a in self.axes]
        mesh = np.meshgrid(*grids[::-1], indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh[::-1]], axis=1)

    def blocks(self) -> list[tuple[int, ...]]:
        L = self.base.length
        out = []
        for outer in range(self.length // L):
            for b in self.base.blocks():
                out.append(tuple(outer * L + j for j in b))
        return out

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "axes": [list(a) for a in self.axes],
                "field_order": self.field_order}


def cartesian_domain(base: EvaluationDomain, axes: Sequence[Sequence[int]], field_order: int
                     ) -> CartesianDomain:
    tower = base.tower
    clean = []
    for ax in axes:
        pts = tuple(int(x) for x in ax)
        if len(pts) < 2:
            raise ExponentOutOfRange("every extra axis needs at least 2 points")
        if len(set(pts)) != len(pts):
            raise InvalidInput("axis points must be distinct")
        if any(x < 0 or x >= tower.order for x in pts) or \
                not np.all(tower.in_subfield(np.array(pts), field_order)):
            raise AxisNotInSubfield(f"axis points must lie in F_{field_order}")
        clean.append(pts)
    return CartesianDomain(base, tuple(clean), field_order)


def cartesian_code(gamma: Sequence[Sequence[int] | ExponentSet], Z: CartesianDomain) -> GFMatrix:
    """Rows: monomials prod_l X_l^{e_l} over the product of the factors of gamma."""
    if len(gamma) != 1 + len(Z.axes):
        raise ExponentOutOfRange("gamma needs one factor per axis")
    first = gamma[0]
    if isinstance(first, ExponentSet):
        if first.N != Z.base.N:
            raise ModulusMismatch(f"exponent modulus {first.N} vs domain modulus {Z.base.N}")
        first = first.elements
    factors = [tuple(int(e) for e in first)]
    for ell, (fac, ax) in enumerate(zip(gamma[1:], Z.axes), start=2):
        fac = tuple(int(e) for e in fac)
        if len(ax) < 2:
            raise ExponentOutOfRange("axis sizes must be at least 2")
        if any(e < 0 or e >= len(ax) for e in fac):
            raise ExponentOutOfRange(f"axis {ell} exponents must lie in 0..{len(ax) - 1}")
        factors.append(fac)
    tower = Z.tower
    coords = Z.coordinates()
    # per-axis tables of point^exponent, with 0^0 = 1
    tables = [{e: tower.power(coords[:, a], e) for e in fac} for a, fac in enumerate(factors)]
    rows = []
    for tup in itertools.product(*factors):
        row = tables[0][tup[0]]
        for a in range(1, len(tup)):
            row = tower.mul(row, tables[a][tup[a]])
        rows.append(row)
    data = np.array(rows, dtype=np.int64).reshape(len(rows), Z.length)
    return GFMatrix(tower, tower.order, data, check=False)

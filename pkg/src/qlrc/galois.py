"""Finite field towers F_p <= F_sub <= F_{q^s} with table-driven arithmetic.

An element is stored as an integer code whose base-p digits are its
coordinates in the basis 1, g, g^2, ..., g^{m-1}, where g is the root of the
defining primitive polynomial (digit 0 is the least significant).  Subfields
are never modelled separately: F_{p^t} is the set of codes fixed by x -> x^{p^t}.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    DivisionByZero,
    DoesNotDivideGroupOrder,
    FieldTooLarge,
    HermitianNeedsEvenS,
    InvalidInput,
    NotASubfield,
    NotPrime,
    TowerMismatch,
)

MAX_FIELD_ORDER = 1 << 20
MODES = ("euclidean", "hermitian")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n in ascending order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(order: int) -> tuple[int, int] | None:
    """Return (p, e) with order == p**e, or None."""
    if order < 2:
        return None
    p = prime_factors(order)
    if len(p) != 1:
        return None
    e, x = 0, order
    while x > 1:
        x //= p[0]
        e += 1
    return p[0], e


def _poly_mulmod(a: list[int], b: list[int], tail: tuple[int, ...], p: int) -> list[int]:
    # a, b have length m; the modulus is x^m + sum tail[j] x^j
    m = len(tail)
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(2 * m - 2, m - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(m):
                prod[d - m + j] = (prod[d - m + j] - c * tail[j]) % p
    return prod[:m]


def _poly_powmod(base: list[int], e: int, tail: tuple[int, ...], p: int) -> list[int]:
    m = len(tail)
    result = [1] + [0] * (m - 1)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, tail, p)
        base = _poly_mulmod(base, base, tail, p)
        e >>= 1
    return result


def _x_mod(tail: tuple[int, ...], p: int) -> list[int]:
    m = len(tail)
    if m == 1:
        return [(-tail[0]) % p]
    x = [0] * m
    x[1] = 1
    return x


def is_primitive_polynomial(tail: tuple[int, ...], p: int) -> bool:
    """True iff x^m + sum tail[j] x^j is primitive over F_p."""
    m = len(tail)
    order = p**m - 1
    one = [1] + [0] * (m - 1)
    if tail[0] == 0:
        return False
    x = _x_mod(tail, p)
    if _poly_powmod(x, order, tail, p) != one:
        return False
    return all(_poly_powmod(x, order // r, tail, p) != one for r in prime_factors(order))


def find_primitive_polynomial(p: int, m: int) -> tuple[int, ...]:
    """Lowest-order coefficients (c_0, ..., c_{m-1}) of the first monic primitive
    polynomial of degree m, scanning i = sum c_j p^j upward from 0."""
    for i in range(p**m):
        tail = tuple((i // p**j) % p for j in range(m))
        if is_primitive_polynomial(tail, p):
            return tail
    raise AssertionError("no primitive polynomial found")


class _Tables:
    """Log/antilog (and Zech) tables for F_{p^m}; shared between towers."""

    _cache: dict[tuple[int, int], "_Tables"] = {}

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.order = p**m
        self.poly = find_primitive_polynomial(p, m)
        Q1 = self.order - 1
        # multiplication-by-g matrix on digit column vectors
        mx = np.zeros((m, m), dtype=np.int64)
        for j in range(m - 1):
            mx[j + 1, j] = 1
        for j in range(m):
            mx[j, m - 1] = (-self.poly[j]) % p
        digits = np.zeros((1, m), dtype=np.int64)
        digits[0, 0] = 1
        step = mx.copy()
        while digits.shape[0] < Q1:
            nxt = (digits @ step.T) % p
            digits = np.vstack([digits, nxt])
            step = (step @ step) % p
        digits = digits[:Q1]
        weights = p ** np.arange(m, dtype=np.int64)
        codes = digits @ weights
        exp = np.empty(2 * Q1, dtype=np.int64)
        exp[:Q1] = codes
        exp[Q1:] = codes
        log = np.zeros(self.order, dtype=np.int64)
        log[codes] = np.arange(Q1, dtype=np.int64)
        self.exp = exp
        self.log = log
        self.exp.setflags(write=False)
        self.log.setflags(write=False)
        if p != 2:
            # zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0
            one_plus = np.where(codes % p == p - 1, codes - (p - 1), codes + 1)
            self.zech = np.where(one_plus == 0, -1, log[one_plus])
            self.zech.setflags(write=False)
        else:
            self.zech = None

    @classmethod
    def get(cls, p: int, m: int) -> "_Tables":
        key = (p, m)
        if key not in cls._cache:
            cls._cache[key] = cls(p, m)
        return cls._cache[key]


def _as_array(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64)


def _ret(x: np.ndarray, scalar: bool):
    return int(x) if scalar else x


class GaloisTower:
    """The chain F_p <= F_frak_q <= F_{q^s}.

    Arithmetic methods accept integer codes or integer arrays and are
    vectorized; scalars in, scalars out.
    """

    def __init__(self, p: int, q_exponent: int, s: int, mode: str = "euclidean"):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if q_exponent < 1 or s < 1:
            raise InvalidInput("q_exponent and s must be positive")
        if mode not in MODES:
            raise InvalidInput(f"unknown mode {mode!r}")
        if mode == "hermitian" and s % 2:
            raise HermitianNeedsEvenS(f"hermitian mode needs even s, got s={s}")
        m = q_exponent * s
        if p**m > MAX_FIELD_ORDER:
            raise FieldTooLarge(f"field order {p}^{m} exceeds 2^20")
        self.p = p
        self.q_exponent = q_exponent
        self.q = p**q_exponent
        self.s = s
        self.mode = mode
        self.degree = m
        self.order = p**m
        self.frak_q = self.q if mode == "euclidean" else self.q**2
        self._t = _Tables.get(p, m)
        self.poly = self._t.poly
        self._exp = self._t.exp
        self._log = self._t.log
        self._zech = self._t.zech

    # identity -----------------------------------------------------------
    @property
    def key(self) -> tuple[int, int]:
        return (self.p, self.degree)

    @property
    def big_order(self) -> int:
        return self.order

    @property
    def log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        return self._exp[: self.order - 1], self._log

    @property
    def generator(self) -> "FieldElement":
        return FieldElement(self, int(self._exp[1]))

    def to_json(self) -> dict:
        return {"p": self.p, "q_exponent": self.q_exponent, "s": self.s, "mode": self.mode}

    def __repr__(self) -> str:
        return (f"GaloisTower(p={self.p}, q={self.q}, s={self.s}, mode={self.mode!r}, "
                f"order={self.order})")

    def __eq__(self, other) -> bool:
        return isinstance(other, GaloisTower) and self.to_json() == other.to_json()

    def __hash__(self) -> int:
        return hash(tuple(self.to_json().values()))

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    # arithmetic ---------------------------------------------------------
    def add(self, a, b):
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        a, b = _as_array(a), _as_array(b)
        if self.p == 2:
            return _ret(a ^ b, scalar)
        Q1 = self.order - 1
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % Q1]
        res = np.where(z < 0, 0, self._exp[la + np.maximum(z, 0)])
        res = np.where(a == 0, b, np.where(b == 0, a, res))
        return _ret(res, scalar)

    def neg(self, a):
        if self.p == 2:
            return a if np.ndim(a) == 0 else _as_array(a)
        return self.mul(a, self.p - 1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        a, b = _as_array(a), _as_array(b)
        res = self._exp[self._log[a] + self._log[b]]
        res = np.where((a == 0) | (b == 0), 0, res)
        return _ret(res, scalar)

    def inv(self, a):
        scalar = np.ndim(a) == 0
        a = _as_array(a)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        Q1 = self.order - 1
        return _ret(self._exp[(Q1 - self._log[a]) % Q1], scalar)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        scalar = np.ndim(a) == 0
        a = _as_array(a)
        Q1 = self.order - 1
        if e < 0:
            if np.any(a == 0):
                raise DivisionByZero("negative power of zero")
            return self.power(self.inv(a), -e)
        if e == 0:
            return _ret(np.ones_like(a), scalar)
        res = self._exp[(self._log[a] * (e % Q1)) % Q1]
        res = np.where(a == 0, 0, res)
        return _ret(res, scalar)

    def frobenius(self, a, k: int = 1):
        """x -> x^{p^k}."""
        return self.power(a, self.p ** (k % self.degree))

    def power_of_generator(self, e):
        scalar = np.ndim(e) == 0
        return _ret(self._exp[_as_array(e) % (self.order - 1)], scalar)

    def log(self, a):
        scalar = np.ndim(a) == 0
        a = _as_array(a)
        if np.any(a == 0):
            raise DivisionByZero("log of zero")
        return _ret(self._log[a], scalar)

    # subfields ----------------------------------------------------------
    def check_subfield(self, sub_order: int) -> int:
        """Return t with sub_order = p^t, t | m; raise NotASubfield otherwise."""
        pe = prime_power(sub_order)
        if pe is None or pe[0] != self.p or self.degree % pe[1]:
            raise NotASubfield(f"F_{sub_order} is not a subfield of F_{self.order}")
        return pe[1]

    def in_subfield(self, a, sub_order: int):
        self.check_subfield(sub_order)
        if sub_order == self.p:
            return _as_array(a) < self.p
        return self.power(a, sub_order) == _as_array(a)

    def subfield_elements(self, sub_order: int) -> np.ndarray:
        """Codes of F_sub_order, ascending."""
        self.check_subfield(sub_order)
        step = (self.order - 1) // (sub_order - 1)
        nz = self._exp[np.arange(sub_order - 1) * step]
        return np.sort(np.concatenate([[0], nz]))

    def subfield_primitive(self, sub_order: int) -> int:
        self.check_subfield(sub_order)
        return int(self._exp[(self.order - 1) // (sub_order - 1)])

    def trace(self, a, sub_order: int, from_order: int | None = None):
        """Relative trace from F_from_order (default the big field) onto F_sub_order."""
        scalar = np.ndim(a) == 0
        src = self.order if from_order is None else from_order
        t_sub = self.check_subfield(sub_order)
        t_src = self.check_subfield(src)
        if t_src % t_sub:
            raise NotASubfield(f"F_{sub_order} is not a subfield of F_{src}")
        a = _as_array(a)
        acc = np.zeros_like(a)
        x = a
        for _ in range(t_src // t_sub):
            acc = self.add(acc, x)
            x = self.power(x, sub_order)
        return _ret(acc, scalar)

    def root_of_unity(self, N: int) -> int:
        if N < 1 or (self.order - 1) % N:
            raise DoesNotDivideGroupOrder(f"{N} does not divide {self.order - 1}")
        return int(self._exp[(self.order - 1) // N])

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        Q1 = self.order - 1
        l = int(self._log[a])
        from math import gcd
        return Q1 // gcd(l, Q1)

    def ops(self, field_order: int | None = None) -> "FieldOps":
        """Arithmetic specialised to the subfield F_field_order."""
        if field_order is not None and field_order == self.p:
            return PrimeFieldOps(self)
        return FieldOps(self)


class FieldOps:
    """Vectorized arithmetic on arrays of element codes."""

    def __init__(self, tower: GaloisTower):
        self.tower = tower
        self.add = tower.add
        self.sub = tower.sub
        self.neg = tower.neg
        self.mul = tower.mul
        self.inv = tower.inv

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            col = A[:, j]
            if np.any(col):
                acc = self.add(acc, self.mul(col[:, None], B[j][None, :]))
        return acc


class PrimeFieldOps(FieldOps):
    """Arithmetic on codes 0..p-1, which coincide with residues mod p."""

    def __init__(self, tower: GaloisTower):
        super().__init__(tower)
        p = self.p = tower.p
        self._inv = np.array([0] + [pow(i, -1, p) for i in range(1, p)], dtype=np.int64) \
            if p <= 1 << 16 else None
        if p == 2:
            self.add = self.sub = lambda a, b: _as_array(a) ^ _as_array(b)
            self.neg = lambda a: _as_array(a)
            self.mul = lambda a, b: _as_array(a) & _as_array(b)
        else:
            self.add = lambda a, b: (_as_array(a) + _as_array(b)) % p
            self.sub = lambda a, b: (_as_array(a) - _as_array(b)) % p
            self.neg = lambda a: (-_as_array(a)) % p
            self.mul = lambda a, b: (_as_array(a) * _as_array(b)) % p
        self.inv = self._inverse

    def _inverse(self, a):
        a = _as_array(a)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        if self._inv is not None:
            return self._inv[a]
        return self.tower.inv(a)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return (A @ B) % self.p


@dataclass(frozen=True)
class FieldElement:
    tower: GaloisTower
    code: int

    def __post_init__(self):
        if not 0 <= int(self.code) < self.tower.order:
            raise InvalidInput(f"code {self.code} outside F_{self.tower.order}")
        object.__setattr__(self, "code", int(self.code))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.tower.key != self.tower.key:
                raise TowerMismatch("elements live in different towers")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.tower.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.tower, self.tower.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.tower, self.tower.sub(self.code, o))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.tower, self.tower.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.tower, self.tower.div(self.code, o))

    def __pow__(self, e: int):
        return FieldElement(self.tower, self.tower.power(self.code, int(e)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.tower, self.tower.inv(self.code))

    def frobenius(self, k: int = 1) -> "FieldElement":
        return FieldElement(self.tower, self.tower.frobenius(self.code, k))

    def is_zero(self) -> bool:
        return self.code == 0

    def __int__(self) -> int:
        return self.code

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.tower.key == other.tower.key and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.tower.key, self.code))

    def __repr__(self) -> str:
        if self.code == 0:
            return "0"
        return f"g^{int(self.tower._log[self.code])}"


def build_tower(p: int, q_exponent: int, s: int, mode: str = "euclidean") -> GaloisTower:
    return GaloisTower(p, q_exponent, s, mode)


def tower_for(q: int, s: int, mode: str = "euclidean") -> GaloisTower:
    """Tower from the base order q rather than its exponent."""
    pe = prime_power(q)
    if pe is None:
        raise NotPrime(f"{q} is not a prime power")
    return GaloisTower(pe[0], pe[1], s, mode)


def nth_root_of_unity(tower: GaloisTower, N: int) -> FieldElement:
    return FieldElement(tower, tower.root_of_unity(N))


def trace_to_subfield(x: FieldElement, sub_order: int) -> FieldElement:
    return FieldElement(x.tower, x.tower.trace(x.code, sub_order))


def field_arithmetic(x: FieldElement, y: FieldElement | int | None, op: str, k: int = 1):
    """Dispatch helper: op in add, sub, mul, div, inv, pow, frobenius."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    if op == "frobenius":
        return x.frobenius(k)
    raise InvalidInput(f"unknown op {op!r}")


def elements(tower: GaloisTower, codes: Iterable[int]) -> list[FieldElement]:
    return [FieldElement(tower, int(c)) for c in codes]

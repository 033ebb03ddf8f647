"""Exponent subsets of Z_N: cyclotomic cosets, completeness, sums and negations."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Iterator

from .errors import (
    BaseNotCoprime,
    IndexOutOfRange,
    InvalidInput,
    ModulusMismatch,
    NotADivisor,
    NotComplete,
)


@dataclass(frozen=True)
class ExponentSet:
    """A sorted, duplicate-free subset of {0, ..., N-1}."""

    N: int
    elements: tuple[int, ...] = field(default=())
    base: int | None = None

    def __post_init__(self):
        if self.N < 1:
            raise InvalidInput("modulus must be positive")
        els = tuple(sorted(set(int(e) for e in self.elements)))
        if els and (els[0] < 0 or els[-1] >= self.N):
            raise InvalidInput(f"elements must lie in [0, {self.N})")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, N: int, elements: Iterable[int], base: int | None = None) -> "ExponentSet":
        return cls(N, tuple(elements), base)

    @classmethod
    def reduced(cls, N: int, elements: Iterable[int]) -> "ExponentSet":
        """Build from arbitrary integers, reducing them mod N."""
        return cls(N, tuple(int(e) % N for e in elements))

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e) -> bool:
        return int(e) in self._lookup

    @property
    def _lookup(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def representative(self) -> int | None:
        return self.elements[0] if self.elements else None

    def union(self, other: "ExponentSet") -> "ExponentSet":
        _same_modulus(self, other)
        return ExponentSet(self.N, self.elements + other.elements)

    def difference(self, other: "ExponentSet") -> "ExponentSet":
        _same_modulus(self, other)
        drop = set(other.elements)
        return ExponentSet(self.N, tuple(e for e in self.elements if e not in drop))

    def intersection(self, other: "ExponentSet") -> "ExponentSet":
        _same_modulus(self, other)
        keep = set(other.elements)
        return ExponentSet(self.N, tuple(e for e in self.elements if e in keep))

    def complement(self) -> "ExponentSet":
        s = set(self.elements)
        return ExponentSet(self.N, tuple(e for e in range(self.N) if e not in s))

    def lift(self, N: int) -> "ExponentSet":
        """Reinterpret the integer representatives inside Z_N (N a multiple of self.N)."""
        if N % self.N:
            raise NotADivisor(f"{self.N} does not divide {N}")
        return ExponentSet(N, self.elements)

    def to_json(self) -> dict:
        return {"N": self.N, "elements": list(self.elements)}

    @classmethod
    def from_json(cls, obj: dict) -> "ExponentSet":
        return cls(int(obj["N"]), tuple(obj["elements"]))


def _same_modulus(a: ExponentSet, b: ExponentSet) -> None:
    if a.N != b.N:
        raise ModulusMismatch(f"moduli differ: {a.N} vs {b.N}")


def _check_base(z: int, N: int) -> None:
    if gcd(z, N) != 1:
        raise BaseNotCoprime(f"base {z} is not coprime to {N}")


def _check_divisor(M: int, N: int) -> None:
    if M < 1 or N % M:
        raise NotADivisor(f"{M} does not divide {N}")


def cyclotomic_coset(e: int, N: int, z: int) -> ExponentSet:
    _check_base(z, N)
    if not 0 <= e < N:
        raise IndexOutOfRange(f"exponent {e} outside Z_{N}")
    orbit = [e]
    x = (e * z) % N
    while x != e:
        orbit.append(x)
        x = (x * z) % N
    return ExponentSet(N, tuple(orbit), z)


def coset_partition(N: int, z: int) -> list[ExponentSet]:
    """All cyclotomic cosets of Z_N under z, ordered by representative."""
    _check_base(z, N)
    seen = [False] * N
    out = []
    for e in range(N):
        if not seen[e]:
            c = cyclotomic_coset(e, N, z)
            for x in c:
                seen[x] = True
            out.append(c)
    return out


def coset_representatives(N: int, z: int) -> list[int]:
    return [c.representative for c in coset_partition(N, z)]


def is_complete(D: ExponentSet, z: int) -> bool:
    _check_base(z, D.N)
    members = D._lookup
    return all((z * e) % D.N in members for e in D.elements)


def complete_closure(B: ExponentSet, z: int) -> ExponentSet:
    _check_base(z, B.N)
    out: set[int] = set()
    for e in B.elements:
        if e not in out:
            out.update(cyclotomic_coset(e, B.N, z).elements)
    return ExponentSet(B.N, tuple(out), z)


def minkowski_sum(A: ExponentSet, B: ExponentSet) -> ExponentSet:
    _same_modulus(A, B)
    return ExponentSet(A.N, tuple((a + b) % A.N for a in A.elements for b in B.elements))


def reduce_mod(D: ExponentSet, M: int) -> ExponentSet:
    _check_divisor(M, D.N)
    return ExponentSet(M, tuple(d % M for d in D.elements))


def negate_mod(D: ExponentSet, M: int) -> ExponentSet:
    _check_divisor(M, D.N)
    return ExponentSet(M, tuple((-d) % M for d in D.elements))


def negate_q_mod(D: ExponentSet, M: int, q: int) -> ExponentSet:
    _check_divisor(M, D.N)
    return ExponentSet(M, tuple((-q * d) % M for d in D.elements))


def a_set(n: int, N: int) -> ExponentSet:
    _check_divisor(n, N)
    return ExponentSet(N, tuple(range(0, N, n)))


def delta_range(t: int, t_prime: int, N: int, z: int) -> ExponentSet:
    """Union of the cosets whose representatives have indices t..t_prime."""
    parts = coset_partition(N, z)
    if not 0 <= t <= t_prime < len(parts):
        raise IndexOutOfRange(f"indices ({t}, {t_prime}) outside 0..{len(parts) - 1}")
    out: list[int] = []
    for c in parts[t:t_prime + 1]:
        out.extend(c.elements)
    return ExponentSet(N, tuple(out), z)


def consecutive_run(D: ExponentSet) -> int:
    """Longest run of consecutive integers inside D restricted to 1..N-1 (no wraparound)."""
    best = cur = 0
    prev = None
    for e in D.elements:
        if e == 0:
            continue
        cur = cur + 1 if prev is not None and e == prev + 1 else 1
        best = max(best, cur)
        prev = e
    return best


def dual_exponents(delta: ExponentSet, mode: str, q: int) -> ExponentSet:
    """Exponents of the dual evaluation code on the full set of N-th roots of unity.

    The euclidean case removes -delta, the hermitian case removes -q*delta.
    """
    base = q if mode == "euclidean" else q * q
    if mode not in ("euclidean", "hermitian"):
        raise InvalidInput(f"unknown mode {mode!r}")
    if not is_complete(delta, base):
        raise NotComplete(f"exponent set is not {base}-complete mod {delta.N}")
    if mode == "euclidean":
        drop = negate_mod(delta, delta.N)
    else:
        drop = negate_q_mod(delta, delta.N, q)
    return ExponentSet(delta.N, drop.elements).complement()


def complete_sets(N: int, z: int, max_size: int | None = None, max_cosets: int | None = None,
                  include_zero_coset: bool = True) -> Iterator[ExponentSet]:
    """Every union of cyclotomic cosets, optionally bounded in size or coset count."""
    parts = coset_partition(N, z)
    if not include_zero_coset:
        parts = [c for c in parts if c.representative != 0]

    def rec(i: int, chosen: list[int], used: int):
        if i == len(parts):
            yield ExponentSet(N, tuple(chosen), z)
            return
        yield from rec(i + 1, chosen, used)
        c = parts[i]
        if max_size is not None and len(chosen) + len(c) > max_size:
            return
        if max_cosets is not None and used >= max_cosets:
            return
        yield from rec(i + 1, chosen + list(c.elements), used + 1)

    yield from rec(0, [], 0)

"""(r, delta)-locality certificates and the classical Singleton-like bound."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .codes import (
    LinearCode,
    distance_exceeds,
    dual,
    is_subcode,
    min_distance,
    puncture,
    same_code,
    shorten,
)
from .errors import Infeasible, InvalidInput, NotLocallyRecoverable, NotSelfOrthogonal, SearchInfeasible

EXHAUSTIVE_MAX_SET = 12
EXHAUSTIVE_MAX_LENGTH = 40
EXHAUSTIVE_MAX_CANDIDATES = 200_000


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def classical_singleton_defect(n: int, k: int, d: int, r: int, delta: int) -> int:
    return (n + 1) - (k + d + (ceil_div(k, r) - 1) * (delta - 1))


@dataclass(frozen=True)
class LocalityCertificate:
    r: int
    delta: int
    recovery_sets: tuple[tuple[int, ...], ...]
    method: str
    classical_defect: int | None = None

    @property
    def optimal(self) -> bool:
        return self.classical_defect == 0

    def distinct_sets(self) -> list[tuple[int, ...]]:
        return sorted(set(self.recovery_sets))

    def to_json(self) -> dict:
        return {"r": self.r, "delta": self.delta,
                "sets": [list(J) for J in self.recovery_sets],
                "method": self.method, "classical_defect": self.classical_defect}

    @classmethod
    def from_json(cls, obj: dict) -> "LocalityCertificate":
        return cls(int(obj["r"]), int(obj["delta"]),
                   tuple(tuple(int(i) for i in J) for J in obj["sets"]),
                   obj.get("method", "structured-blocks"), obj.get("classical_defect"))


def _blocks_from_hints(hints) -> list[tuple[int, ...]]:
    if hasattr(hints, "blocks"):
        return [tuple(b) for b in hints.blocks()]
    return [tuple(sorted(int(i) for i in b)) for b in hints]


def set_recovers(C: LinearCode, J: Sequence[int], delta: int) -> bool:
    """Does the punctured code on J have minimum distance >= delta?"""
    return distance_exceeds(puncture(C, J), delta - 1)


def _check_args(C: LinearCode, r: int, delta: int) -> None:
    if delta < 2:
        raise InvalidInput("delta must be at least 2")
    if r < 1:
        raise InvalidInput("r must be at least 1")
    if r + delta - 1 > C.n:
        raise InvalidInput("r + delta - 1 exceeds the code length")


def _defect(C: LinearCode, r: int, delta: int, d: int | None) -> int | None:
    if C.k == 0:
        return None
    if d is None:
        try:
            d = min_distance(C)
        except Infeasible:
            return None
    return classical_singleton_defect(C.n, C.k, d, r, delta)


def certify_locality(C: LinearCode, r: int, delta: int, hints=None,
                     d: int | None = None) -> LocalityCertificate:
    """Find and verify one recovery set per coordinate.

    hints: an evaluation/Cartesian domain (its blocks are the candidates) or
    an explicit list of blocks.  Without hints an exhaustive search runs.
    """
    _check_args(C, r, delta)
    if d is None and C.distance is not None:
        d = C.distance[0]
    limit = r + delta - 1
    if hints is not None:
        blocks = _blocks_from_hints(hints)
        owner: dict[int, tuple[int, ...]] = {}
        for J in blocks:
            for i in J:
                owner.setdefault(i, J)
        sets = []
        good: dict[tuple[int, ...], bool] = {}
        for i in range(C.n):
            J = owner.get(i)
            if J is None:
                raise NotLocallyRecoverable(f"coordinate {i} lies in no block", i)
            if J not in good:
                good[J] = len(J) <= limit and set_recovers(C, J, delta)
            if not good[J]:
                raise NotLocallyRecoverable(
                    f"block containing coordinate {i} does not recover {delta - 1} erasures", i)
            sets.append(J)
        return LocalityCertificate(r, delta, tuple(sets), "structured-blocks",
                                   _defect(C, r, delta, d))
    return _exhaustive(C, r, delta, d)


def _exhaustive(C: LinearCode, r: int, delta: int, d: int | None) -> LocalityCertificate:
    limit = r + delta - 1
    if C.n > EXHAUSTIVE_MAX_LENGTH or limit > EXHAUSTIVE_MAX_SET:
        raise SearchInfeasible(f"exhaustive search needs n <= {EXHAUSTIVE_MAX_LENGTH} "
                               f"and |J| <= {EXHAUSTIVE_MAX_SET}")
    total = sum(comb(C.n - 1, s - 1) for s in range(delta, limit + 1))
    if total > EXHAUSTIVE_MAX_CANDIDATES:
        raise SearchInfeasible(f"{total} candidate sets per coordinate exceed the guard")
    found: list[tuple[int, ...]] = []
    sets = []
    for i in range(C.n):
        J = next((F for F in found if i in F), None)
        if J is None:
            others = [j for j in range(C.n) if j != i]
            for size in range(delta, limit + 1):
                for rest in itertools.combinations(others, size - 1):
                    cand = tuple(sorted((i,) + rest))
                    if set_recovers(C, cand, delta):
                        J = cand
                        break
                if J is not None:
                    break
            if J is None:
                raise NotLocallyRecoverable(f"coordinate {i} has no recovery set", i)
            found.append(J)
        sets.append(J)
    return LocalityCertificate(r, delta, tuple(sets), "exhaustive", _defect(C, r, delta, d))


def discover_locality(C: LinearCode, hints) -> LocalityCertificate:
    """Strongest (largest delta, then smallest r) pair achieved by the given blocks."""
    blocks = _blocks_from_hints(hints)
    size = max(len(J) for J in blocks)
    for delta in range(min(len(J) for J in blocks), 1, -1):
        if all(set_recovers(C, J, delta) for J in blocks):
            r = size - delta + 1
            return certify_locality(C, r, delta, hints)
    raise NotLocallyRecoverable("blocks do not give delta >= 2")


def verify_certificate(C: LinearCode, cert: LocalityCertificate) -> list[str]:
    """Re-check a certificate against C; returns a list of problems (empty if sound)."""
    problems = []
    if cert.delta < 2:
        problems.append("delta < 2")
    if len(cert.recovery_sets) != C.n:
        problems.append("certificate does not cover every coordinate")
        return problems
    checked: dict[tuple[int, ...], bool] = {}
    for i, J in enumerate(cert.recovery_sets):
        if i not in J:
            problems.append(f"coordinate {i} missing from its set")
        if len(J) > cert.r + cert.delta - 1:
            problems.append(f"set for {i} larger than r + delta - 1")
        if J not in checked:
            checked[J] = set_recovers(C, J, cert.delta)
        if not checked[J]:
            problems.append(f"set for {i} does not reach distance {cert.delta}")
    return problems


def quantum_locality_criterion(C: LinearCode, mode: str, certificate: LocalityCertificate) -> bool:
    """Shortening/puncturing test: for each recovery set J and each I in J with
    |I| = delta - 1, shortening the punctured dual on I equals shortening C on I."""
    if certificate.delta < 2:
        raise InvalidInput("delta must be at least 2")
    Cd = dual(C, mode)
    if not is_subcode(C, Cd):
        raise NotSelfOrthogonal("code is not self-orthogonal under the chosen form")
    m = certificate.delta - 1
    for J in certificate.distinct_sets():
        PJ = puncture(Cd, J)
        for pos in itertools.combinations(range(len(J)), m):
            I = [J[p] for p in pos]
            if not same_code(shorten(PJ, pos), shorten(C, I)):
                return False
    return True

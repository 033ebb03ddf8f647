"""Stabilizer codes from dual-containing classical codes, bounds and purity."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .codes import (
    LinearCode,
    all_codewords,
    conjugate_root,
    distance_exceeds,
    dual,
    is_subcode,
    min_distance,
    ENUM_LIMIT,
)
from .errors import Infeasible, NotDualContaining, NotSelfOrthogonal
from .locality import LocalityCertificate, ceil_div


def quantum_singleton_defect(n: int, k: int, d: int, r: int, delta: int) -> int:
    return (n + 2) - (k + 2 * d + 2 * (ceil_div(n + k, 2 * r) - 1) * (delta - 1))


def is_dual_containing(C: LinearCode, mode: str) -> bool:
    if mode == "hermitian":
        conjugate_root(C)
    return is_subcode(dual(C, mode), C)


def qudit_dimension(C: LinearCode, mode: str) -> int:
    return conjugate_root(C) if mode == "hermitian" else C.field_order


def purity_check(inner: LinearCode, mode: str, outer: LinearCode | None = None) -> bool:
    """Is the minimum weight of outer = dual(inner) attained outside inner?

    A precomputed outer code may be passed to reuse its cached distance.
    """
    if outer is None:
        outer = dual(inner, mode)
    if not is_subcode(inner, outer):
        raise NotSelfOrthogonal("inner code is not contained in its dual")
    if inner.k == 0:
        return True
    if outer.k == inner.k:
        return False
    d_out = min_distance(outer)
    try:
        if distance_exceeds(inner, d_out):
            return True
    except Infeasible:
        pass
    if outer.field_order ** outer.k > ENUM_LIMIT:
        raise Infeasible("purity needs enumeration of the outer code")
    words = all_codewords(outer, limit=ENUM_LIMIT)
    light = words[np.count_nonzero(words, axis=1) == d_out]
    return any(w not in inner for w in light)


@dataclass
class QuantumCodeRecord:
    q: int
    n: int
    k: int
    d: int
    d_method: str
    r: int | None = None
    delta: int | None = None
    quantum_defect: int | None = None
    pure: bool | None = None
    family: str | None = None
    family_params: dict = field(default_factory=dict)
    source: str = ""

    @property
    def optimal(self) -> bool:
        return self.quantum_defect == 0 and bool(self.pure)

    def params(self) -> str:
        return f"[[{self.n},{self.k},{self.d}]]_{self.q}"

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "k": self.k, "d": self.d, "d_method": self.d_method,
                "r": self.r, "delta": self.delta, "quantum_defect": self.quantum_defect,
                "pure": self.pure, "optimal": self.optimal, "family": self.family,
                "family_params": self.family_params}

    @classmethod
    def from_json(cls, obj: dict) -> "QuantumCodeRecord":
        keys = ("q", "n", "k", "d", "d_method", "r", "delta", "quantum_defect", "pure",
                "family")
        rec = cls(**{k: obj.get(k) for k in keys})
        rec.family_params = dict(obj.get("family_params") or {})
        return rec


def stabilizer_from_dual_containing(C: LinearCode, mode: str,
                                    certificate: LocalityCertificate | None = None,
                                    predicted_d: int | None = None,
                                    check_purity: bool = True) -> QuantumCodeRecord:
    """[[n, 2 dim C - n, >= d(C)]] from a dual-containing code C."""
    if not is_dual_containing(C, mode):
        raise NotDualContaining("code does not contain its dual")
    q = qudit_dimension(C, mode)
    try:
        d = min_distance(C)
        method = "verified"
    except Infeasible:
        if predicted_d is None:
            raise
        d, method = predicted_d, "predicted"
        C.set_distance(d, method)
    rec = QuantumCodeRecord(q=q, n=C.n, k=2 * C.k - C.n, d=d, d_method=method)
    if certificate is not None:
        rec.r, rec.delta = certificate.r, certificate.delta
        rec.quantum_defect = quantum_singleton_defect(rec.n, rec.k, d, certificate.r,
                                                      certificate.delta)
    if check_purity:
        inner = dual(C, mode)
        try:
            rec.pure = purity_check(inner, mode, outer=C)
        except Infeasible:
            rec.pure = None
        if rec.pure is False or rec.pure is None:
            rec.d_method = "lower-bound"
    return rec

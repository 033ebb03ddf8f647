"""End-to-end constructions of optimal pure quantum (r, delta)-LRC families.

Family ids
----------
A      hermitian, block length q^2+1, q even, exponents B(u), delta = 2u+1
B      euclidean, block length q-1, q >= 3, exponents {1..v}, delta = v+1
C      hermitian, block length q^2-1, exponents {1..v}, delta = v+1
C2     as C with exactly two blocks and the wider window v <= 2q-3
cartA, cartB, cartC
       the above evaluated on Z_1 x Z_2 x ... x Z_w with extra axes inside F_frak_q

The last family quotes quantum dimension 2n - 4v, the value consistent
with the quantum Singleton-like bound.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from math import prod
from typing import Iterable, Sequence

from .codes import LinearCode, code_from_matrix, dual, min_distance, subfield_subcode
from .cosets import (
    ExponentSet,
    a_set,
    is_complete,
    minkowski_sum,
    negate_mod,
    negate_q_mod,
)
from .errors import (
    AxisNotInSubfield,
    AxisTooLarge,
    Infeasible,
    NotLocallyRecoverable,
    OddQ,
    SpecInvalid,
    URange,
    VerificationMismatch,
    VRange,
)
from .evaluation import (
    CartesianDomain,
    EvaluationDomain,
    build_domain,
    cartesian_code,
    cartesian_domain,
    evaluation_code,
)
from .galois import MAX_FIELD_ORDER, GaloisTower, prime_power, tower_for
from .locality import (
    LocalityCertificate,
    certify_locality,
    classical_singleton_defect,
    quantum_locality_criterion,
)
from .quantum import (
    QuantumCodeRecord,
    is_dual_containing,
    purity_check,
    quantum_singleton_defect,
    qudit_dimension,
)

FAMILIES = ("A", "B", "C", "C2", "cartA", "cartB", "cartC")
BASE_OF = {"A": "A", "B": "B", "C": "C", "C2": "C2", "cartA": "A", "cartB": "B", "cartC": "C"}


def b_set(q: int, u: int) -> ExponentSet:
    """{q^2/2 + i} and {1 + q^2/2 - i} for 1 <= i <= u, inside Z_{q^2+1}."""
    if q % 2:
        raise OddQ(f"q must be even, got {q}")
    half = q * q // 2
    if not 1 <= u <= half:
        raise URange(f"u must lie in 1..{half}, got {u}")
    els = [half + i for i in range(1, u + 1)] + [1 + half - i for i in range(1, u + 1)]
    return ExponentSet(q * q + 1, tuple(els))


def b_prime_set(v: int, n: int) -> ExponentSet:
    if not 1 <= v < n:
        raise VRange(f"v must lie in 1..{n - 1}, got {v}")
    return ExponentSet(n, tuple(range(1, v + 1)))


@dataclass(frozen=True)
class FamilySpec:
    family: str
    q: int
    lam: int = 1
    u: int | None = None
    v: int | None = None
    s: int | None = None
    axes: tuple[int, ...] = ()
    N: int | None = None
    axis_points: tuple[tuple[int, ...], ...] | None = None

    @property
    def base(self) -> str:
        return BASE_OF[self.family]

    @property
    def mode(self) -> str:
        return "euclidean" if self.base == "B" else "hermitian"

    @property
    def block(self) -> int:
        q = self.q
        return {"A": q * q + 1, "B": q - 1, "C": q * q - 1, "C2": q * q - 1}[self.base]

    @property
    def sub_order(self) -> int:
        return self.q if self.mode == "euclidean" else self.q * self.q

    @property
    def param(self) -> int:
        return self.u if self.base == "A" else self.v

    @property
    def param_name(self) -> str:
        return "u" if self.base == "A" else "v"

    @property
    def removed(self) -> int:
        """Exponents per block, i.e. |B|."""
        return 2 * self.u if self.base == "A" else self.v

    @property
    def delta(self) -> int:
        return self.removed + 1

    @property
    def r(self) -> int:
        return self.block - self.removed

    @property
    def axis_product(self) -> int:
        return prod(self.axes) if self.axes else 1

    @property
    def length(self) -> int:
        return self.lam * self.block * self.axis_product

    def exponent_block(self) -> ExponentSet:
        if self.base == "A":
            return b_set(self.q, self.u)
        return b_prime_set(self.v, self.block)

    def params_json(self) -> dict:
        out = {"q": self.q, "s": self.s, "lambda": self.lam, self.param_name: self.param,
               "N": self.N}
        if self.axes:
            out["axes"] = list(self.axes)
        return out

    def sort_key(self) -> tuple:
        return (FAMILIES.index(self.family), self.q, self.lam, self.param or 0, self.axes,
                self.s or 0)


def _v_window(spec: FamilySpec) -> int:
    q, n = spec.q, spec.block
    if spec.base == "B":
        return (n - 1) // 2
    if spec.base == "C2" or (spec.family == "cartC" and spec.lam == 2):
        return 2 * q - 3
    return (n - 1) // (q + 1)


def minimal_s(spec: FamilySpec, target: int) -> int | None:
    """Smallest admissible s with target | q^s - 1 and q^s <= 2^20."""
    step = 2 if spec.mode == "hermitian" else 1
    start = step
    if spec.family == "cartC":
        start = 4
    s = start
    while spec.q**s <= MAX_FIELD_ORDER:
        if (spec.q**s - 1) % target == 0:
            return s
        s += step
    return None


def validate(spec: FamilySpec) -> FamilySpec:
    """Check the family window and fill in s and N; raise SpecInvalid on violation."""
    if spec.family not in FAMILIES:
        raise SpecInvalid(f"unknown family {spec.family!r}")
    q = spec.q
    pe = prime_power(q)
    if pe is None:
        raise SpecInvalid(f"q={q} is not a prime power")
    base = spec.base
    name = spec.family
    if base == "A":
        if q % 2:
            raise OddQ(f"family {name} requires even q")
        if spec.u is None or not 1 <= spec.u <= q // 2:
            raise URange(f"family {name} requires 1 <= u <= q/2 = {q // 2}")
        if spec.v is not None:
            raise SpecInvalid(f"family {name} takes u, not v")
    else:
        if spec.u is not None:
            raise SpecInvalid(f"family {name} takes v, not u")
        if base == "B" and q < 3:
            raise SpecInvalid(f"family {name} requires q >= 3")
        hi = _v_window(spec)
        if spec.v is None or not 1 <= spec.v <= hi:
            raise VRange(f"family {name} requires 1 <= v <= {hi} at q={q}")
    if spec.lam < 1:
        raise SpecInvalid("lambda must be positive")
    if base == "C2" and spec.lam != 2:
        raise SpecInvalid("family C2 requires lambda = 2")
    is_cart = spec.family.startswith("cart")
    if spec.axes and not is_cart:
        raise SpecInvalid(f"family {name} takes no extra axes")
    for n_l in spec.axes:
        if n_l < 2:
            raise SpecInvalid("extra axis sizes must be at least 2")
        if n_l >= spec.sub_order:
            raise AxisTooLarge(f"axis size {n_l} must be below {spec.sub_order}")
    if spec.axis_points is not None and len(spec.axis_points) != len(spec.axes):
        raise SpecInvalid("axis_points must list one point set per extra axis")
    n = spec.block
    need = spec.lam * n
    s = spec.s
    if s is None:
        s = minimal_s(spec, need if spec.N is None else spec.N)
        if s is None:
            raise SpecInvalid(f"no field q^s <= 2^20 has {need} | q^s - 1")
    if spec.mode == "hermitian" and s % 2:
        raise SpecInvalid(f"family {name} requires even s")
    if spec.family == "cartC" and s <= 2:
        raise SpecInvalid("family cartC requires s > 2")
    if q**s > MAX_FIELD_ORDER:
        raise SpecInvalid(f"field order {q}^{s} exceeds 2^20")
    group = q**s - 1
    N = spec.N
    if N is None:
        if group % need:
            raise SpecInvalid(f"lambda*n = {need} must divide q^s - 1 = {group}")
        N = need
    else:
        if N % n or group % N:
            raise SpecInvalid(f"need n | N | q^s - 1, got n={n}, N={N}")
        if spec.lam > N // n:
            raise SpecInvalid(f"lambda must be at most N/n = {N // n}")
    return replace(spec, s=s, N=N)


@dataclass
class FamilyInstance:
    spec: FamilySpec
    tower: GaloisTower
    domain: EvaluationDomain | CartesianDomain
    exponents: ExponentSet
    inner: LinearCode
    outer: LinearCode
    certificate: LocalityCertificate | None
    record: QuantumCodeRecord | None
    predicted: dict
    observed: dict
    mismatches: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def mode(self) -> str:
        return self.spec.mode

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def classical_params(self) -> tuple[int, int, int | None]:
        return self.outer.n, self.outer.k, self.observed.get("d")

    def to_json(self) -> dict:
        return {"record": self.record.to_json() if self.record else None,
                "code": self.outer.to_json(),
                "certificate": self.certificate.to_json() if self.certificate else None,
                "classical": {"n": self.outer.n, "k": self.outer.k,
                              "d": self.observed.get("d"), "field": self.outer.field_order,
                              "classical_defect": self.observed.get("classical_defect")},
                "domain_kind": self.observed.get("kind"),
                "mismatches": list(self.mismatches),
                "notes": list(self.notes)}


def _default_axis_points(tower: GaloisTower, sub_order: int, sizes: Sequence[int]):
    els = [int(x) for x in tower.subfield_elements(sub_order)]
    return [tuple(els[:m]) for m in sizes]


def _expect(inst_mm: list[str], name: str, predicted, observed, bound: bool = False) -> None:
    if observed is None:
        inst_mm.append(f"{name}: not computed (predicted {predicted})")
    elif bound:
        if observed < predicted:
            inst_mm.append(f"{name}: observed {observed} below bound {predicted}")
    elif observed != predicted:
        inst_mm.append(f"{name}: predicted {predicted}, observed {observed}")


def predictions(spec: FamilySpec) -> dict:
    spec_len = spec.length
    mult = spec.lam * spec.axis_product
    return {"n": spec_len, "k": spec_len - mult * spec.removed, "d": spec.delta,
            "r": spec.r, "delta": spec.delta, "quantum_k": spec_len - 2 * mult * spec.removed,
            "q": spec.q, "field": spec.sub_order}


def run_pipeline(spec: FamilySpec) -> FamilyInstance:
    """Build and verify an instance; disagreements are collected, not raised."""
    spec = validate(spec)
    tower = tower_for(spec.q, spec.s, spec.mode)
    n, N, lam = spec.block, spec.N, spec.lam
    mode, sub = spec.mode, spec.sub_order
    mm: list[str] = []
    notes: list[str] = []
    observed: dict = {}
    B = spec.exponent_block()
    exps = minkowski_sum(a_set(n, N), B.lift(N))
    if not is_complete(exps, sub):
        mm.append(f"exponent set is not {sub}-complete mod {N}")
    base_dom = build_domain(tower, N, n, lam)
    observed["kind"] = base_dom.kind
    if spec.axes:
        pts = spec.axis_points or _default_axis_points(tower, sub, spec.axes)
        for a, m in zip(pts, spec.axes):
            if len(a) != m:
                raise SpecInvalid("axis point count does not match axis size")
        dom: EvaluationDomain | CartesianDomain = cartesian_domain(base_dom, pts, sub)
        gen = cartesian_code([exps] + [range(m) for m in spec.axes], dom)
    else:
        dom = base_dom
        gen = evaluation_code(exps, dom)
    big = code_from_matrix(gen)
    inner = subfield_subcode(big, sub)
    outer = dual(inner, mode)
    pred = predictions(spec)
    exact = base_dom.kind != "partial"
    if not exact:
        notes.append("partial domain: dimension and distance are bounds, measured values attached")
        mult = (N // n) * spec.axis_product
        pred = dict(pred, k=spec.length - mult * spec.removed,
                    quantum_k=spec.length - 2 * mult * spec.removed)
    _expect(mm, "length", pred["n"], outer.n)
    _expect(mm, "dimension", pred["k"], outer.k, bound=not exact)
    observed["k"] = outer.k
    try:
        d = min_distance(outer)
        observed["d"] = d
        observed["d_method"] = "verified"
    except Infeasible as exc:
        notes.append(f"distance not verified: {exc}")
        observed["d"] = None
        d = None
    if d is not None:
        _expect(mm, "distance", pred["d"], d, bound=not exact)
    cert = None
    try:
        cert = certify_locality(outer, spec.r, spec.delta, hints=dom, d=d)
    except NotLocallyRecoverable as exc:
        mm.append(f"locality ({spec.r},{spec.delta}): {exc}")
    if d is not None:
        cdef = classical_singleton_defect(outer.n, outer.k, d, spec.r, spec.delta)
        observed["classical_defect"] = cdef
        if exact:
            _expect(mm, "classical defect", 0, cdef)
    # the sufficient disjointness condition on the exponent block
    neg = negate_mod(B, n) if mode == "euclidean" else negate_q_mod(B, n, spec.q)
    observed["block_condition"] = not (set(B.elements) & set(neg.elements))
    dc = is_dual_containing(outer, mode)
    observed["dual_containing"] = dc
    record = None
    if not dc:
        mm.append(f"{mode} dual-containment fails")
    else:
        d_rec = d if d is not None else pred["d"]
        record = QuantumCodeRecord(q=qudit_dimension(outer, mode), n=outer.n,
                                   k=2 * outer.k - outer.n, d=d_rec,
                                   d_method="verified" if d is not None else "predicted",
                                   family=spec.family, family_params=spec.params_json())
        _expect(mm, "quantum dimension", pred["quantum_k"], record.k, bound=not exact)
        if cert is not None:
            record.r, record.delta = cert.r, cert.delta
            record.quantum_defect = quantum_singleton_defect(record.n, record.k, d_rec,
                                                             cert.r, cert.delta)
            if exact:
                _expect(mm, "quantum defect", 0, record.quantum_defect)
        try:
            record.pure = purity_check(inner, mode, outer=outer)
        except Infeasible as exc:
            notes.append(f"purity not certified: {exc}")
            record.pure = None
        if not record.pure:
            record.d_method = "lower-bound"
            if exact:
                mm.append("purity not established")
        if cert is not None and exact:
            ok = quantum_locality_criterion(inner, mode, cert)
            observed["quantum_locality"] = ok
            if not ok:
                mm.append("shortening/puncturing locality criterion fails")
    return FamilyInstance(spec, tower, dom, exps, inner, outer, cert, record, pred, observed,
                          mm, notes)


def build_family_instance(spec: FamilySpec) -> FamilyInstance:
    inst = run_pipeline(spec)
    if inst.mismatches:
        raise VerificationMismatch("; ".join(inst.mismatches), inst.mismatches, inst)
    return inst


def cartesian_extend(base: FamilySpec | FamilyInstance, axis_sizes: Sequence[int],
                     axis_points: Sequence[Sequence[int]] | None = None) -> FamilyInstance:
    """Extend a base family instance by extra axes of the given sizes."""
    spec = base.spec if isinstance(base, FamilyInstance) else base
    sizes = tuple(int(m) for m in axis_sizes)
    if not sizes:
        return base if isinstance(base, FamilyInstance) else build_family_instance(spec)
    fam = {"A": "cartA", "B": "cartB", "C": "cartC", "C2": "cartC"}[spec.base]
    pts = tuple(tuple(int(x) for x in a) for a in axis_points) if axis_points else None
    ext = replace(spec, family=fam, axes=sizes, axis_points=pts)
    if pts is not None:
        v = validate(ext)
        tower = tower_for(v.q, v.s, v.mode)
        for a in pts:
            if not all(bool(tower.in_subfield(x, v.sub_order)) for x in a if 0 <= x < tower.order) \
                    or any(x < 0 or x >= tower.order for x in a):
                raise AxisNotInSubfield(f"axis points must lie in F_{v.sub_order}")
    return build_family_instance(ext)


# ---------------------------------------------------------------- parameter table

@dataclass(frozen=True)
class TableRow:
    row: str
    family: str
    qudit: str
    r: str
    delta: str
    length: str
    info: str
    lam2: bool = False

    def printed_deltas(self, q: int) -> list[int]:
        if self.family in ("A", "cartA"):
            return list(range(3, q + 2, 2)) if q % 2 == 0 else []
        if self.family in ("B", "cartB"):
            return list(range(2, (q + 1) // 2 + 1))
        if self.lam2:
            return list(range(2, 2 * q - 1))
        return list(range(2, q + 1))

    def r_value(self, q: int, d: int) -> int:
        if self.family in ("A", "cartA"):
            return q * q + 2 - d
        if self.family in ("B", "cartB"):
            return q - d
        return q * q - d

    def length_value(self, q: int, lam: int, m: int) -> int:
        if self.family in ("A", "cartA"):
            return lam * m * (q * q + 1)
        if self.family in ("B", "cartB"):
            return lam * m * (q - 1)
        return lam * m * (q * q - 1)

    def info_value(self, q: int, d: int, lam: int, m: int) -> int:
        if self.family in ("A", "cartA"):
            return lam * m * (q * q + 3 - 2 * d)
        if self.family in ("B", "cartB"):
            return lam * m * (q + 1 - 2 * d)
        return lam * m * (q * q + 1 - 2 * d)


TABLE_ROWS = (
    TableRow("A", "A", "even q", "q^2+2-delta", "3,5,...,q+1", "lambda(q^2+1)",
             "lambda(q^2+3-2delta)"),
    TableRow("B", "B", "q >= 3", "q-delta", "2,3,...,(q+1)/2", "lambda(q-1)",
             "lambda(q+1-2delta)"),
    TableRow("C", "C", "any q", "q^2-delta", "2,3,...,q", "lambda(q^2-1)",
             "lambda(q^2+1-2delta)"),
    TableRow("C2", "C2", "odd q", "q^2-delta", "2,3,...,2q-2", "2(q^2-1)", "2(q^2+1-2delta)",
             lam2=True),
    TableRow("cartA", "cartA", "even q", "q^2+2-delta", "3,5,...,q+1",
             "lambda n_2...n_w(q^2+1)", "lambda n_2...n_w(q^2+3-2delta)"),
    TableRow("cartB", "cartB", "q >= 3", "q-delta", "2,3,...,(q+1)/2",
             "lambda n_2...n_w(q-1)", "lambda n_2...n_w(q+1-2delta)"),
    TableRow("cartC", "cartC", "any q", "q^2-delta", "2,3,...,q",
             "lambda n_2...n_w(q^2-1)", "lambda n_2...n_w(q^2+1-2delta)"),
    TableRow("cartC-lambda2", "cartC", "odd q", "q^2-delta", "2,3,...,2q-2",
             "2 n_2...n_w(q^2-1)", "2 n_2...n_w(q^2+1-2delta)", lam2=True),
)


def _axis_tuples(limit: int, sub_order: int) -> list[tuple[int, ...]]:
    """Non-increasing tuples of axis sizes 2 <= m < sub_order with product <= limit."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], cap: int, room: int):
        for m in range(min(cap, sub_order - 1), 1, -1):
            if m <= room:
                t = prefix + (m,)
                out.append(t)
                rec(t, m, room // m)

    rec((), sub_order - 1, limit)
    return sorted(out)


def row_specs(row: TableRow, q: int, max_length: int) -> list[FamilySpec]:
    """Every valid instantiation of a table row at this q with length <= max_length."""
    cart = row.family.startswith("cart")
    base = BASE_OF[row.family]
    if base == "A" and q % 2:
        return []
    if base == "B" and q < 3:
        return []
    probe = FamilySpec("C2" if row.lam2 and not cart else row.family, q,
                       lam=2 if row.lam2 else 1)
    block = probe.block
    specs: list[FamilySpec] = []
    lams = [2] if row.lam2 else range(1, max_length // max(block, 1) + 1)
    for lam in lams:
        if lam * block > max_length:
            continue
        if base == "A":
            params = range(1, q // 2 + 1)
        elif row.lam2:
            params = range(1, 2 * q - 2)
        else:
            params = range(1, _v_window(replace(probe, lam=1)) + 1)
        axes_opts: list[tuple[int, ...]] = [()]
        if cart:
            axes_opts = _axis_tuples(max_length // (lam * block), probe.sub_order)
        for axes in axes_opts:
            for p in params:
                kw = {"u": p} if base == "A" else {"v": p}
                try:
                    specs.append(validate(replace(probe, lam=lam, axes=axes, **kw)))
                except SpecInvalid:
                    continue
    return sorted(specs, key=FamilySpec.sort_key)


def _concrete_row(row: TableRow, spec: FamilySpec, verify: bool) -> dict:
    q = spec.q
    d_sym = spec.delta
    m = spec.axis_product
    sym = {"n": row.length_value(q, spec.lam, m), "k": row.info_value(q, d_sym, spec.lam, m),
           "r": row.r_value(q, d_sym), "delta": d_sym}
    out = {"row": row.row, "family": spec.family, "q": q, "s": spec.s, "lambda": spec.lam,
           "u_or_v": spec.param, "axes": list(spec.axes), **sym, "d": d_sym,
           "classical_defect": None, "quantum_defect": None, "pure": None,
           "verified": "unverified", "problems": []}
    if not verify:
        return out
    inst = run_pipeline(spec)
    problems = list(inst.mismatches)
    rec = inst.record
    if rec is None:
        problems.append("no quantum record")
    else:
        for key, val in (("n", rec.n), ("k", rec.k), ("d", rec.d), ("r", rec.r),
                         ("delta", rec.delta)):
            want = sym["delta"] if key == "d" else sym[key]
            if val != want:
                problems.append(f"table {key}={want} but matrix pipeline gives {val}")
        out.update(quantum_defect=rec.quantum_defect, pure=rec.pure)
    out["classical_defect"] = inst.observed.get("classical_defect")
    out["problems"] = problems
    out["verified"] = "mismatch" if problems else "verified"
    return out


def table_one(qs: Iterable[int] = (2, 3, 4, 5), max_length: int = 64, verify: bool = True,
              verify_max_length: int | None = None) -> list[dict]:
    """Symbolic rows of the parameter table with their concrete instantiations."""
    rows = []
    for row in TABLE_ROWS:
        entry = {"row": row.row, "family": row.family, "qudit": row.qudit, "r": row.r,
                 "delta": row.delta, "length": row.length, "info_qudits": row.info,
                 "instances": []}
        for q in qs:
            for spec in row_specs(row, q, max_length):
                do = verify and (verify_max_length is None or spec.length <= verify_max_length)
                entry["instances"].append(_concrete_row(row, spec, do))
        rows.append(entry)
    return rows


def table_mismatches(rows: list[dict]) -> list[dict]:
    return [inst for r in rows for inst in r["instances"] if inst["verified"] == "mismatch"]


def sweep_specs(qs: Iterable[int], max_length: int) -> list[FamilySpec]:
    """All distinct valid specs across the table rows (used by search)."""
    seen = {}
    for row in TABLE_ROWS:
        for q in qs:
            for spec in row_specs(row, q, max_length):
                seen[spec] = None
    return sorted(seen, key=FamilySpec.sort_key)


CSV_COLUMNS = ("family", "q", "s", "lambda", "u_or_v", "n", "k", "d", "r", "delta",
               "classical_defect", "quantum_defect", "pure", "verified")


def instance_csv_row(inst: FamilyInstance) -> dict:
    rec = inst.record
    return {"family": inst.spec.family, "q": inst.spec.q, "s": inst.spec.s,
            "lambda": inst.spec.lam, "u_or_v": inst.spec.param,
            "n": rec.n if rec else inst.outer.n, "k": rec.k if rec else None,
            "d": rec.d if rec else inst.observed.get("d"),
            "r": inst.certificate.r if inst.certificate else None,
            "delta": inst.certificate.delta if inst.certificate else None,
            "classical_defect": inst.observed.get("classical_defect"),
            "quantum_defect": rec.quantum_defect if rec else None,
            "pure": rec.pure if rec else None,
            "verified": "verified" if inst.ok else "mismatch"}


def to_csv(rows: Iterable[dict], columns: Sequence[str] = CSV_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: ("" if r.get(c) is None else r.get(c)) for c in columns})
    return buf.getvalue()

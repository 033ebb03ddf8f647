from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlrc.codes import (
    LinearCode,
    all_codewords,
    conjugate,
    distance_exceeds,
    dual,
    euclidean_dual,
    full_space,
    hermitian_dual,
    is_subcode,
    min_distance,
    minimum_weight_words,
    puncture,
    same_code,
    shorten,
    subfield_subcode,
    trace_code,
    zero_code,
)
from qlrc.cosets import ExponentSet
from qlrc.errors import (
    EmptyIndexSet,
    FieldNotSquare,
    IndexOutOfRange,
    Infeasible,
    NotASubfield,
    ZeroCode,
)
from qlrc.evaluation import build_domain, evaluation_code
from qlrc.galois import build_tower

from oracles import NaiveField, columns_independent_up_to, min_weight, min_weight_by_columns

F16 = build_tower(2, 1, 4, "hermitian")
F81 = build_tower(3, 1, 4, "hermitian")
DELTA1 = ExponentSet.of(15, [2, 3, 7, 8, 12, 13])


def _naive(T):
    return NaiveField(T.p, T.degree, T.poly)


def _delta1_inner():
    D = build_domain(F16, 15, 5, 3)
    return subfield_subcode(LinearCode(F16, 16, evaluation_code(DELTA1, D)), 4)


def test_trivial_duals():
    full = full_space(F16, 4, 6)
    zero = zero_code(F16, 4, 6)
    assert euclidean_dual(full) == zero
    assert euclidean_dual(zero) == full
    assert hermitian_dual(zero) == full
    with pytest.raises(FieldNotSquare):
        hermitian_dual(full_space(F16, 2, 3))


def test_flagship_inner_code_dimensions():
    S = _delta1_inner()
    assert (S.n, S.k) == (15, 6)
    assert euclidean_dual(S).k == 9
    H = hermitian_dual(S)
    assert H.k == 9
    assert min_distance(H) == 3
    assert min_distance(H, "column_dependency") == 3
    assert min_distance(LinearCode(F16, 4, H.G), "full_enum") == 3
    F = _naive(F16)
    # naive: dependent columns of a parity check of H, i.e. a generator of S^conj
    assert min_weight_by_columns(conjugate(S).G.tolist(), F, 15) == 3


def test_subfield_subcode_matches_enumeration():
    # codewords of the big code whose entries lie in F_4
    D = build_domain(F16, 15, 5, 3)
    big = LinearCode(F16, 16, evaluation_code(ExponentSet.of(15, [0, 5, 10]), D))
    words = all_codewords(big)
    sub = set(F16.subfield_elements(4).tolist())
    inside = {tuple(w) for w in words.tolist() if set(w) <= sub}
    S = subfield_subcode(big, 4)
    assert {tuple(w) for w in all_codewords(S).tolist()} == inside
    assert subfield_subcode(full_space(F16, 16, 4), 4) == full_space(F16, 4, 4)
    with pytest.raises(NotASubfield):
        subfield_subcode(big, 8)


def test_trace_code_basics():
    assert trace_code(zero_code(F16, 16, 5), 4) == zero_code(F16, 4, 5)
    # an F_16-linear code generated over F_4: traces of its multiples give back the F_4 code
    C = LinearCode(F16, 16, [[1, 6, 7, 0]])
    assert F16.trace(1, 4) == 0
    assert trace_code(C, 4) == LinearCode(F16, 4, [[1, 6, 7, 0]])
    assert trace_code(LinearCode(F16, 4, [[1, 6, 7, 0]]), 4) == LinearCode(F16, 4, [[1, 6, 7, 0]])
    T = build_tower(3, 1, 4)
    C9 = LinearCode(T, 9, [[1, 2, 0]])
    assert T.trace(1, 3, from_order=9) == 2
    assert trace_code(C9, 3) == LinearCode(T, 3, [[2, 1, 0]])


def test_delsarte_chain_flagship():
    D = build_domain(F16, 15, 5, 3)
    big = LinearCode(F16, 16, evaluation_code(DELTA1, D))
    lhs = trace_code(euclidean_dual(big), 4)
    rhs = euclidean_dual(subfield_subcode(big, 4))
    assert same_code(lhs, rhs)


def test_puncture_shorten_trivial_and_errors():
    C = _delta1_inner()
    assert puncture(C, range(15)) == C
    assert shorten(full_space(F16, 4, 6), [1, 3]) == full_space(F16, 4, 2)
    with pytest.raises(EmptyIndexSet):
        puncture(C, [])
    with pytest.raises(IndexOutOfRange):
        shorten(C, [15])


def test_shorten_matches_enumeration():
    C = _delta1_inner()
    T = [0, 1, 2, 5, 6, 7, 8]
    out = [j for j in range(15) if j not in T]
    words = all_codewords(C)
    keep = words[~np.any(words[:, out], axis=1)][:, T]
    assert {tuple(w) for w in keep.tolist()} == {tuple(w) for w in all_codewords(shorten(C, T)).tolist()}


def test_min_distance_small_codes():
    rep = LinearCode(F16, 4, [[1] * 7])
    assert min_distance(rep) == 7
    with pytest.raises(ZeroCode):
        min_distance(zero_code(F16, 4, 3))
    assert distance_exceeds(rep, 6) and not distance_exceeds(rep, 7)
    assert len(minimum_weight_words(rep, 7)) == 3


def test_lambda_two_code_v3_distance():
    # [16,10]_9 classical code of the lambda=2, q=3 family with v=3
    from qlrc.families import FamilySpec, run_pipeline

    inst = run_pipeline(FamilySpec("C2", 3, lam=2, v=3))
    C = inst.outer
    assert (C.n, C.k, C.field_order) == (16, 10, 9)
    assert min_distance(C) == 4
    F = _naive(C.tower)
    H = C.parity_check().tolist()
    assert columns_independent_up_to(H, F, 16, 3)
    assert not columns_independent_up_to(H, F, 16, 4)


def test_infeasible_guard():
    T = build_tower(2, 1, 8)
    rng = np.random.default_rng(1)
    G = np.hstack([np.eye(40, dtype=np.int64), rng.integers(0, 2, (40, 60))])
    C = LinearCode(T, 2, G)
    with pytest.raises(Infeasible):
        min_distance(C, "full_enum")


def test_json_roundtrip():
    C = _delta1_inner()
    min_distance(C)
    D = LinearCode.from_json(C.to_json())
    assert D == C
    assert C.to_json()["d_method"] == "verified"


# ----------------------------------------------------------------- properties

FIELDS = {4: F16, 9: F81, 16: F16, 3: F81, 2: F16}


@st.composite
def codes(draw, orders=(4, 9), max_n=20):
    order = draw(st.sampled_from(orders))
    T = FIELDS[order]
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, n))
    elems = T.subfield_elements(order).tolist()
    rows = [[draw(st.sampled_from(elems)) for _ in range(n)] for _ in range(k)]
    return LinearCode(T, order, rows)


@st.composite
def code_and_set(draw, orders=(4, 9)):
    C = draw(codes(orders))
    T = draw(st.sets(st.integers(0, C.n - 1), min_size=1))
    return C, sorted(T)


@settings(max_examples=300, deadline=None)
@given(code_and_set(), st.sampled_from(["euclidean", "hermitian"]))
def test_puncture_of_dual_is_dual_of_shortened(cs, mode):
    C, T = cs
    assert same_code(puncture(dual(C, mode), T), dual(shorten(C, T), mode))


@settings(max_examples=150, deadline=None)
@given(codes(), st.sampled_from(["euclidean", "hermitian"]))
def test_dual_involution_and_dimension(C, mode):
    Cd = dual(C, mode)
    assert C.k + Cd.k == C.n
    assert dual(Cd, mode) == C


@settings(max_examples=60, deadline=None)
@given(codes(orders=(4, 9, 2, 3), max_n=9))
def test_distance_methods_agree_with_naive(C):
    if C.k == 0:
        return
    F = _naive(C.tower)
    scalars = C.tower.subfield_elements(C.field_order).tolist()
    if len(scalars) ** C.k > 1 << 13:
        return
    want = min_weight(C.G.tolist(), scalars, F)
    assert min_distance(LinearCode(C.tower, C.field_order, C.G), "full_enum") == want
    if want <= 6 and C.k < C.n:
        got = min_distance(LinearCode(C.tower, C.field_order, C.G), "column_dependency")
        assert got == want
    assert min_distance(C) == want
    assert distance_exceeds(LinearCode(C.tower, C.field_order, C.G), want - 1)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(0, 14), max_size=8))
def test_subcode_dual_equals_trace_of_dual(raw):
    D = build_domain(F16, 15, 5, 3)
    big = LinearCode(F16, 16, evaluation_code(ExponentSet.of(15, raw), D), n=15)
    assert same_code(euclidean_dual(subfield_subcode(big, 4)), trace_code(euclidean_dual(big), 4))


def test_is_subcode_detects_containment():
    S = _delta1_inner()
    assert is_subcode(S, hermitian_dual(S))
    assert not is_subcode(hermitian_dual(S), S)

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlrc.errors import (
    DivisionByZero,
    DoesNotDivideGroupOrder,
    FieldTooLarge,
    HermitianNeedsEvenS,
    NotASubfield,
    NotPrime,
)
from qlrc.galois import (
    FieldElement,
    GaloisTower,
    build_tower,
    field_arithmetic,
    find_primitive_polynomial,
    is_primitive_polynomial,
    nth_root_of_unity,
    prime_power,
    tower_for,
    trace_to_subfield,
)

from oracles import NaiveField, subfield_elements

SMALL = [(2, 1, 4), (3, 1, 2), (5, 1, 2), (2, 2, 2), (3, 1, 4), (2, 1, 6)]


def _naive(T: GaloisTower) -> NaiveField:
    return NaiveField(T.p, T.degree, T.poly)


@pytest.mark.parametrize("p,e,s", SMALL)
def test_tables_match_polynomial_arithmetic(p, e, s):
    T = build_tower(p, e, s)
    F = _naive(T)
    a = np.arange(T.order)
    A, B = np.meshgrid(a, a, indexing="ij")
    want_mul = np.array([[F.mul(x, y) for y in a] for x in a])
    want_add = np.array([[F.add(x, y) for y in a] for x in a])
    assert np.array_equal(T.mul(A, B), want_mul)
    assert np.array_equal(T.add(A, B), want_add)
    for k in range(T.order - 1):
        assert T.power_of_generator(k) == F.gen_power(k)


def _x_order(p, tail):
    F = NaiveField(p, len(tail), tail)
    a, k = F.x(), 1
    while a != 1 and k < F.order:
        a, k = F.mul(a, F.x()), k + 1
    return k if a == 1 else None


@pytest.mark.parametrize("p,m", [(2, 2), (2, 4), (2, 6), (3, 2), (3, 4), (5, 2), (7, 2)])
def test_first_primitive_polynomial_is_first_in_scan(p, m):
    tail = find_primitive_polynomial(p, m)
    assert _x_order(p, tail) == p**m - 1
    i = sum(c * p**j for j, c in enumerate(tail))
    for earlier in range(i):
        t = tuple((earlier // p**j) % p for j in range(m))
        assert t[0] == 0 or _x_order(p, t) != p**m - 1


def test_known_primitive_polynomials():
    assert find_primitive_polynomial(2, 4) == (1, 1, 0, 0)  # x^4 + x + 1
    assert not is_primitive_polynomial((1, 1, 1, 1), 2)  # x^4+x^3+x^2+x+1 has order 5


def test_subfield_of_f16():
    T = build_tower(2, 1, 4)
    assert list(T.subfield_elements(4)) == [0, 1, 6, 7]
    assert list(T.subfield_elements(4)) == subfield_elements(_naive(T), 4)
    assert list(T.subfield_elements(2)) == [0, 1]


@pytest.mark.parametrize("p,e,s", SMALL)
def test_subfield_elements_match_oracle(p, e, s):
    T = build_tower(p, e, s)
    F = _naive(T)
    for t in range(1, T.degree + 1):
        if T.degree % t == 0:
            assert list(T.subfield_elements(p**t)) == subfield_elements(F, p**t)


def test_trace_lands_in_subfield_and_is_onto():
    T = build_tower(3, 1, 4)
    tr = T.trace(np.arange(T.order), 9)
    assert set(tr.tolist()) == set(T.subfield_elements(9).tolist())
    # each value has the same number of preimages
    assert len(set(np.bincount(tr)[T.subfield_elements(9)].tolist())) == 1


def test_relative_trace_composes():
    T = build_tower(2, 1, 6)
    a = np.arange(T.order)
    assert np.array_equal(T.trace(T.trace(a, 8), 2, from_order=8), T.trace(a, 2))
    assert np.array_equal(T.trace(T.trace(a, 4), 2, from_order=4), T.trace(a, 2))


def test_root_of_unity():
    T = build_tower(2, 1, 4)
    w = T.root_of_unity(5)
    assert T.multiplicative_order(w) == 5
    assert nth_root_of_unity(T, 15) == T.generator
    with pytest.raises(DoesNotDivideGroupOrder):
        T.root_of_unity(7)


def test_errors():
    with pytest.raises(NotPrime):
        GaloisTower(4, 1, 2)
    with pytest.raises(HermitianNeedsEvenS):
        GaloisTower(2, 1, 3, "hermitian")
    with pytest.raises(FieldTooLarge):
        GaloisTower(2, 1, 21)
    T = build_tower(2, 1, 4)
    with pytest.raises(NotASubfield):
        T.check_subfield(8)
    with pytest.raises(NotPrime):
        tower_for(6, 2)
    with pytest.raises(DivisionByZero):
        T.inv(0)
    with pytest.raises(ZeroDivisionError):
        FieldElement(T, 3) / FieldElement(T, 0)


def test_large_field_builds():
    T = GaloisTower(2, 1, 20)
    g = T.generator
    assert (g ** (T.order - 1)).code == 1
    assert T.multiplicative_order(g.code) == T.order - 1


def test_prime_power():
    assert prime_power(81) == (3, 4)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_element_api():
    T = tower_for(3, 4, "hermitian")
    assert T.frak_q == 9 and T.order == 81
    g = T.generator
    assert repr(g) == "g^1"
    assert (g * g.inverse()).code == 1
    assert g.frobenius(4) == g
    assert field_arithmetic(g, 3, "pow") == g * g * g
    assert trace_to_subfield(g, 9).code in T.subfield_elements(9).tolist()


FIELDS = st.sampled_from([(2, 1, 4), (3, 1, 4), (5, 1, 2), (2, 1, 8), (7, 1, 2)])


@st.composite
def triples(draw):
    p, e, s = draw(FIELDS)
    T = build_tower(p, e, s)
    x = st.integers(0, T.order - 1)
    return T, draw(x), draw(x), draw(x)


@settings(max_examples=300, deadline=None)
@given(triples())
def test_field_axioms(t):
    T, a, b, c = t
    assert T.add(a, b) == T.add(b, a)
    assert T.mul(a, T.add(b, c)) == T.add(T.mul(a, b), T.mul(a, c))
    assert T.mul(T.mul(a, b), c) == T.mul(a, T.mul(b, c))
    assert T.add(a, T.neg(a)) == 0
    if a:
        assert T.mul(a, T.inv(a)) == 1
        assert T.power(a, T.order - 1) == 1
    # frobenius is additive
    assert T.frobenius(T.add(a, b)) == T.add(T.frobenius(a), T.frobenius(b))


@settings(max_examples=200, deadline=None)
@given(triples())
def test_prime_ops_agree_with_tables(t):
    T, a, b, _ = t
    ops = T.ops(T.p)
    a, b = a % T.p, b % T.p
    assert int(ops.add(a, b)) == T.add(a, b)
    assert int(ops.mul(a, b)) == T.mul(a, b)
    assert int(ops.sub(a, b)) == T.sub(a, b)

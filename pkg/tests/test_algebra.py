from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements, signatures
from oracles import rewrite_mul
from weylinv import AlgebraSignature, Element, add, commutator, constant_term, degree, mul
from weylinv.errors import InvalidIndex, SignatureMismatch


def gens(n, m):
    return Element.generators(AlgebraSignature(n, m))


def test_signature_roles():
    sig = AlgebraSignature(2, 1)
    assert sig.s == 5
    assert [sig.role(i) for i in range(5)] == ["q", "q", "p", "p", "y"]
    assert sig.names() == ("q1", "q2", "p1", "p2", "y1")
    assert sig.partner(0) == 2 and sig.partner(3) == 1 and sig.partner(4) is None
    with pytest.raises(InvalidIndex):
        sig.check_index(5)
    with pytest.raises(ValueError):
        AlgebraSignature(0, 0)


def test_add_examples():
    q, p, y = gens(1, 1)
    assert (q + 1) + (-q) == 1
    assert q * p + Element.zero(q.signature) == q * p
    assert q * p + q * p == (q * p).scale(2)


def test_mul_examples():
    q, p = gens(1, 0)
    assert p * q == q * p + 1
    assert p ** 2 * q ** 2 == q ** 2 * p ** 2 + (q * p).scale(4) + 2
    q, p, y = gens(1, 1)
    assert y * q == q * y
    assert (y * q).terms == {(1, 0, 1): 1}


def test_commutator_examples():
    q, p = gens(1, 0)
    assert commutator(p, q) == 1
    assert commutator(q, q) == 0
    assert commutator(p + q ** 2, q) == 1


def test_degree_and_constant():
    q, p, y = gens(1, 1)
    assert degree(q ** 2 * p + y) == 3
    assert degree(Element.const(q.signature, 7)) == 0
    assert degree(Element.zero(q.signature)) == float("-inf")
    assert constant_term(3 + q.scale(2) + q * p) == 3
    assert constant_term(Element.zero(q.signature)) == 0
    assert constant_term(q) == 0


def test_signature_mismatch():
    a = Element.generator(AlgebraSignature(1, 0), 0)
    b = Element.generator(AlgebraSignature(0, 2), 0)
    with pytest.raises(SignatureMismatch):
        add(a, b)
    with pytest.raises(SignatureMismatch):
        mul(a, b)


def test_no_floats():
    sig = AlgebraSignature(1, 0)
    with pytest.raises(TypeError):
        Element.const(sig, 0.5)


def test_printing():
    q, p = gens(1, 0)
    assert str(p * q) == "1 + q1*p1"
    assert str(p - q ** 2) == "p1 - q1^2"
    assert str(Element.zero(q.signature)) == "0"
    assert str((q * p).scale(Fraction(-2, 3)) + p) == "p1 - 2/3*q1*p1"


@pytest.mark.parametrize("n", [1, 2])
def test_mul_matches_rewriting(n):
    sig = AlgebraSignature(n, 1)
    rng_monos = [alpha for alpha in product(range(3), repeat=sig.s) if sum(alpha) <= 3]
    for a in rng_monos[::3]:
        for b in rng_monos[::5]:
            got = Element.monomial(sig, a) * Element.monomial(sig, b)
            assert dict(got.terms) == rewrite_mul(n, sig.s, {a: 1}, {b: 1})


@given(st.data())
def test_ring_axioms(data):
    sig = data.draw(signatures)
    a, b, c = (data.draw(elements(sig)) for _ in range(3))
    one = Element.one(sig)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * one == a == one * a
    assert (a.scale(3) * b) == (a * b).scale(3) == a * b.scale(3)
    assert a - a == 0


@given(st.data())
def test_degree_laws(data):
    sig = data.draw(signatures)
    a, b = data.draw(elements(sig)), data.draw(elements(sig))
    assert degree(a * b) <= degree(a) + degree(b)
    x = Element.monomial(sig, tuple(data.draw(st.integers(0, 2)) for _ in range(sig.s)))
    y = Element.monomial(sig, tuple(data.draw(st.integers(0, 2)) for _ in range(sig.s)))
    assert degree(x * y) == degree(x) + degree(y)


@given(st.data())
def test_centrality(data):
    sig = data.draw(st.sampled_from([AlgebraSignature(1, 1), AlgebraSignature(1, 2), AlgebraSignature(0, 2)]))
    a = data.draw(elements(sig))
    for j in range(2 * sig.n, sig.s):
        assert commutator(Element.generator(sig, j), a) == 0


def test_power_and_division():
    q, p = gens(1, 0)
    assert (q + p) ** 0 == 1
    assert (q + p) ** 2 == q * q + q * p.scale(2) + p * p + 1
    assert (q.scale(2)) / 2 == q

import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements
from oracles import face_by_rewriting
from weylinv import AlgebraSignature, Element
from weylinv.automorphism import Endomorphism
from weylinv.faces import (
    Equal,
    Witness,
    duality,
    face_lift,
    faces_distinguish,
    left_face,
    quotient_signature,
    right_face,
)
from weylinv.generate import random_automorphism


def test_right_face_examples(a1):
    sig = AlgebraSignature(1, 1)
    q, p, y = Element.generators(sig)
    assert right_face(2, 3 + y * q).representative == Element.const(right_face(2, q).representative.signature, 3)
    q, p = Element.generators(a1)
    r = right_face(1, q ** 2 * p)
    assert str(r) == "-2*q1"
    assert right_face(1, q * p ** 2).representative == 0


def test_left_face_examples(a1):
    sig = AlgebraSignature(1, 1)
    q, p, y = Element.generators(sig)
    a = 3 + y * q + y * y * p
    assert left_face(2, a) == right_face(2, a)
    q, p = Element.generators(a1)
    # mirror of right_face(p, q^2 p) under the anti-automorphism q <-> p
    assert duality(q ** 2 * p) == q * p ** 2
    assert str(left_face(0, q * p ** 2)) == str(right_face(1, q ** 2 * p)).replace("q1", "p1")
    one = Element.one(a1)
    assert left_face(0, one).representative == 1 and left_face(1, one).representative == 1


def test_quotient_signatures():
    sig = AlgebraSignature(2, 1)
    qs, keep = quotient_signature(sig, 4)
    assert qs == AlgebraSignature(2, 0) and keep == (0, 1, 2, 3)
    qs, keep = quotient_signature(sig, 2)
    assert qs == AlgebraSignature(1, 2) and keep == (1, 3, 0, 4)
    a = Element.generator(sig, 0) * Element.generator(sig, 3)
    face = right_face(2, a)
    assert face.names == ("q2", "p2", "q1", "y1")
    assert face_lift(face, sig) == a


def test_duality_is_anti_automorphism(a1):
    q, p = Element.generators(a1)
    a, b = q * q + p, p * q + q
    assert duality(a * b) == duality(b) * duality(a)
    assert duality(duality(a)) == a


@pytest.mark.parametrize("side", ["right", "left"])
def test_faces_match_rewriting_oracle(side):
    sig = AlgebraSignature(1, 0)
    face = right_face if side == "right" else left_face
    for alpha in product(range(5), repeat=2):
        for g in range(2):
            got = face_lift(face(g, Element.monomial(sig, alpha)), sig)
            assert dict(got.terms) == face_by_rewriting(1, 2, alpha, g, side), (alpha, g)


def test_faces_oracle_with_two_pairs():
    sig = AlgebraSignature(2, 1)
    rng = random.Random(4)
    for _ in range(30):
        alpha = tuple(rng.randint(0, 2) for _ in range(sig.s))
        for g in range(sig.s):
            for side, face in (("right", right_face), ("left", left_face)):
                got = face_lift(face(g, Element.monomial(sig, alpha)), sig)
                assert dict(got.terms) == face_by_rewriting(2, sig.s, alpha, g, side)


@given(st.data())
def test_ideal_members_vanish(data):
    sig = data.draw(st.sampled_from([AlgebraSignature(1, 0), AlgebraSignature(1, 1), AlgebraSignature(2, 0)]))
    a = data.draw(elements(sig))
    for i in range(sig.s):
        x = Element.generator(sig, i)
        assert right_face(i, x * a).representative == 0
        assert left_face(i, a * x).representative == 0


@given(st.data())
def test_central_faces_are_homomorphisms(data):
    sig = AlgebraSignature(1, 1)
    a, b = data.draw(elements(sig)), data.draw(elements(sig))
    lift = lambda e: face_lift(right_face(2, e), sig)  # noqa: E731
    assert lift(a * b) == lift(a) * lift(b)


def test_faces_distinguish_examples(a1):
    q, p = Element.generators(a1)
    ident = Endomorphism.identity(a1)
    s = Endomorphism(a1, [q, p + q ** 2])
    assert faces_distinguish(s, s) == Equal()
    w = faces_distinguish(ident, s)
    assert isinstance(w, Witness) and not w
    assert (w.face, w.generator) == (1, 1)
    assert w.left_value.representative != w.right_value.representative
    assert not faces_distinguish(ident, s, side="left")


def test_polynomial_faces_use_generators():
    rng = random.Random(9)
    for sig in (AlgebraSignature(0, 2), AlgebraSignature(0, 3)):
        for _ in range(10):
            a = random_automorphism(sig, rng)
            b = random_automorphism(sig, rng)
            if a == b:
                continue
            w = faces_distinguish(a, b)
            assert isinstance(w, Witness) and w.generator is not None


def test_single_generator_face_is_constant_term():
    sig = AlgebraSignature(0, 1)
    (y,) = Element.generators(sig)
    face = right_face(0, 3 + y + y ** 2)
    assert face.representative.signature.s == 0
    assert str(face) == "3"


def test_single_generator_faces_do_not_determine():
    sig = AlgebraSignature(0, 1)
    (y,) = Element.generators(sig)
    a, b = Endomorphism(sig, [y.scale(2)]), Endomorphism(sig, [y])
    assert faces_distinguish(a, b) == Equal()
    w = faces_distinguish(a, Endomorphism(sig, [y + 1]))
    assert isinstance(w, Witness)

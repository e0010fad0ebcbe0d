import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements
from weylinv import AlgebraSignature, Element
from weylinv.automorphism import (
    Certified,
    Endomorphism,
    NotCertified,
    apply_endo,
    central_jacobian_det,
    certify_automorphism,
    compose,
    degree_bound,
    degree_of,
    dual_coefficients,
    dual_degree,
    dual_derivations,
    invert,
    is_injective_on,
    phi_sigma,
    taylor_expand,
)
from weylinv.errors import (
    DegreeBoundExceeded,
    NilpotencyCapExceeded,
    InvalidEndomorphism,
    NotScalar,
    ZeroDeterminant,
)
from weylinv.generate import random_automorphism, random_element, random_non_automorphism


def shear(sig=AlgebraSignature(1, 0)):
    q, p = Element.generators(sig)
    return Endomorphism(sig, [q, p + q ** 2])


def tri(p2):
    x, y = Element.generators(p2)
    return Endomorphism(p2, [x, y + x ** 2])


def test_relations_checked(a1):
    q, p = Element.generators(a1)
    with pytest.raises(InvalidEndomorphism):
        Endomorphism(a1, [q, p.scale(2)])
    with pytest.raises(InvalidEndomorphism):
        Endomorphism(AlgebraSignature(1, 1), [Element.generator(AlgebraSignature(1, 1), 0)] * 3)


def test_apply_endo(a1):
    q, p = Element.generators(a1)
    s = shear()
    assert apply_endo(s, q * p) == q * (p + q ** 2)
    assert apply_endo(s, q * p) == q * p + q ** 3
    assert apply_endo(Endomorphism.identity(a1), p * q + 3) == p * q + 3
    alpha = (2, 3)
    assert apply_endo(s, Element.monomial(a1, alpha)) == s.images[0] ** 2 * s.images[1] ** 3


def test_central_jacobian(p2):
    x, y = Element.generators(p2)
    assert central_jacobian_det(Endomorphism.identity(p2)) == 1
    assert central_jacobian_det(tri(p2)) == 1
    with pytest.raises(NotScalar) as info:
        central_jacobian_det(Endomorphism(p2, [x, y ** 2]))
    assert info.value.value == y.scale(2)
    with pytest.raises(ZeroDeterminant):
        central_jacobian_det(Endomorphism(p2, [x, x]))


def test_dual_derivations_examples(p2, a1):
    duals = dual_derivations(Endomorphism.identity(p2))
    g = Element.generators(p2)
    for d, i in zip(duals, range(2)):
        assert [d(v) for v in g] == [int(i == j) for j in range(2)]
    x, y = g
    d1, d2 = dual_derivations(tri(p2))
    a = x ** 2 * y + y ** 3
    assert d1(a) == (x * y).scale(2) - (x.scale(2) * (x ** 2 + (y ** 2).scale(3)))
    assert d2(a) == x ** 2 + (y ** 2).scale(3)
    q, p = Element.generators(a1)
    e1, e2 = dual_derivations(shear())
    assert e1(q) == 1 and e2(p + q ** 2) == 1
    assert e1(p + q ** 2) == 0 and e2(q) == 0


def test_dual_derivations_with_central_dependence():
    sig = AlgebraSignature(1, 1)
    q, p, y = Element.generators(sig)
    sigma = Endomorphism(sig, [q + y, p, y])
    duals = dual_derivations(sigma)
    assert duals.corrected == (2,)
    for i, d in enumerate(duals):
        assert [d(v) for v in sigma.images] == [int(i == j) for j in range(3)]
    tau = invert(sigma)
    assert tau.images == (q - y, p, y)


def test_phi_sigma_examples(p2):
    x, y = Element.generators(p2)
    sigma = tri(p2)
    assert phi_sigma(sigma, y) == 0
    d1, _ = dual_derivations(sigma)
    assert d1(d1(y)) == -2
    assert phi_sigma(sigma, d1(d1(y)) / 2) == -1
    ident = Endomorphism.identity(p2)
    assert phi_sigma(ident, 3 + x * y) == 3


def test_invert_examples(p2, a1):
    x, y = Element.generators(p2)
    assert invert(tri(p2)).images == (x, y - x ** 2)
    q, p = Element.generators(a1)
    assert invert(shear()).images == (q, p - q ** 2)
    sig = AlgebraSignature(1, 1)
    sigma = random_automorphism(sig, random.Random(3), factors=3)
    tau = invert(sigma)
    ident = Endomorphism.identity(sig)
    assert compose(sigma, tau) == ident == compose(tau, sigma)


def test_invert_budget(a1):
    # a genuine inverse of degree 4 does not fit under a budget of 1
    q, p = Element.generators(a1)
    sigma = compose(Endomorphism(a1, [q, p + q ** 2]), Endomorphism(a1, [q + p ** 2, p]))
    assert degree_of(invert(sigma)) <= degree_bound(sigma)
    with pytest.raises((DegreeBoundExceeded, NilpotencyCapExceeded)):
        invert(sigma, cap_override=1)
    with pytest.raises(DegreeBoundExceeded):
        dual_coefficients(sigma, p, bound=1, phi_cap=lambda b: 50)


def test_compose_laws(automorphisms):
    rng = random.Random(7)
    for _ in range(10):
        sig = AlgebraSignature(1, 1)
        a, b, c = (random_automorphism(sig, rng, factors=2) for _ in range(3))
        assert compose(compose(a, b), c) == compose(a, compose(b, c))
        assert compose(a, Endomorphism.identity(sig)) == a == compose(Endomorphism.identity(sig), a)


def test_degree_examples(p2, a1):
    assert degree_of(Endomorphism.identity(a1)) == 1
    assert degree_of(shear()) == 2
    assert dual_degree(Endomorphism.identity(p2), Element.generator(p2, 0)) == 1
    assert dual_degree(tri(p2), Element.generator(p2, 1)) == 2


def test_degree_laws_on_corpus(automorphisms):
    for sigma in automorphisms[:60]:
        sig = sigma.signature
        tau = invert(sigma)
        assert degree_of(tau) <= degree_bound(sigma)
        duals = dual_derivations(sigma)
        degs = [dual_degree(sigma, Element.generator(sig, i), duals=duals) for i in range(sig.s)]
        assert degree_of(tau) == max(degs)


def test_certify(p2, automorphisms):
    assert certify_automorphism(Endomorphism.identity(p2)) == Certified(1)
    x, y = Element.generators(p2)
    verdict = certify_automorphism(Endomorphism(p2, [x, y ** 2]))
    assert isinstance(verdict, NotCertified) and not verdict
    assert verdict.witness == y.scale(2)
    for sigma in automorphisms[:40]:
        assert certify_automorphism(sigma)
    rng = random.Random(11)
    for _ in range(10):
        bad = random_non_automorphism(AlgebraSignature(1, 1), rng)
        assert not certify_automorphism(bad)
        with pytest.raises(Exception):
            invert(bad)


def test_taylor_examples(a1):
    q, p = Element.generators(a1)
    assert taylor_expand(q ** 2 * p + 3) == {(2, 1): 1, (0, 0): 3}
    assert taylor_expand(Element.zero(a1)) == {}
    assert taylor_expand(Element.monomial(a1, (1, 3))) == {(1, 3): 1}


def test_coefficient_identity(automorphisms):
    for sigma in automorphisms[:20]:
        sig = sigma.signature
        for i in range(sig.s):
            # sigma(x_i) written in the x' coordinates is just x'_i
            unit = tuple(int(k == i) for k in range(sig.s))
            assert dual_coefficients(sigma, sigma.images[i]) == {unit: 1}


@given(st.data())
def test_injective(data):
    sig = AlgebraSignature(1, 1)
    sigma = random_automorphism(sig, random.Random(data.draw(st.integers(0, 50))), factors=2)
    a, b = data.draw(elements(sig)), data.draw(elements(sig))
    if a != b:
        assert is_injective_on(sigma, a, b)


def test_random_taylor():
    rng = random.Random(2)
    sig = AlgebraSignature(1, 1)
    for _ in range(10):
        a = random_element(sig, rng, max_degree=4)
        assert taylor_expand(a) == dict(a.terms)

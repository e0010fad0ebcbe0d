"""
Face maps: reduction modulo the one-sided ideals ``x_i A`` and ``A x_i``.

``A / x_i A`` is identified with the span of the monomials that do not
contain ``x_i``.  For ``x_i = p_k`` the reduction uses
``q_k^a p_k^b = (-1)^b a!/(a-b)! q_k^(a-b)  (mod p_k A)`` (zero when
``b > a``); for ``q_k`` and central variables it simply drops terms.
Left faces go through the anti-automorphism ``q_k <-> p_k`` which, on
normal-ordered monomials, just swaps the exponents of each Weyl pair.
"""

from dataclasses import dataclass
from math import factorial

from .algebra import AlgebraSignature, Element, GroundField
from .errors import SignatureMismatch


@dataclass(frozen=True)
class FaceImage:
    """A face value: ``representative`` lives in the quotient signature.

    ``index_map[k]`` is the original generator index of quotient generator ``k``.
    """

    dropped_index: int
    representative: Element
    index_map: tuple
    names: tuple

    def __str__(self):
        from .algebra import format_terms

        return format_terms(self.representative.items(), self.names)


def quotient_signature(sig, i):
    """Signature of ``A / x_i A`` and the map of surviving generators.

    Removing a central variable leaves ``A_n (x) P_{m-1}``; removing one
    member of a Weyl pair turns its partner into the first central variable.
    """
    sig.check_index(i)
    n = sig.n
    if sig.is_central(i):
        keep = [j for j in range(sig.s) if j != i]
        if sig.s == 1:
            return GroundField(), ()
        return AlgebraSignature(n, sig.m - 1), tuple(keep)
    partner = sig.partner(i)
    k = i if i < n else i - n
    qs = [j for j in range(n) if j != k]
    ps = [n + j for j in range(n) if j != k]
    keep = qs + ps + [partner] + list(range(2 * n, sig.s))
    return AlgebraSignature(n - 1, sig.m + 1), tuple(keep)


def _reduce_right(i, a):
    """Reduce ``a`` modulo ``x_i A``; result stays in ``a``'s signature, supported on alpha_i = 0."""
    sig = a.signature
    sig.check_index(i)
    if sig.role(i) != "p":
        return Element._raw(sig, {k: v for k, v in a._terms.items() if not k[i]})
    qk = sig.partner(i)
    out = {}
    for alpha, c in a._terms.items():
        qa, pb = alpha[qk], alpha[i]
        if pb > qa:
            continue
        coeff = factorial(qa) // factorial(qa - pb)
        if pb % 2:
            coeff = -coeff
        beta = list(alpha)
        beta[qk] = qa - pb
        beta[i] = 0
        beta = tuple(beta)
        v = out.get(beta, 0) + c * coeff
        if v:
            out[beta] = v
        else:
            out.pop(beta, None)
    return Element._raw(sig, out)


def duality(a):
    """The anti-automorphism ``q_k <-> p_k`` (``y`` fixed): ``theta(ab) = theta(b) theta(a)``."""
    sig = a.signature
    n = sig.n

    def swap(alpha):
        return alpha[n:2 * n] + alpha[:n] + alpha[2 * n:]

    return Element._raw(sig, {swap(k): v for k, v in a._terms.items()})


def dual_index(sig, i):
    sig.check_index(i)
    p = sig.partner(i)
    return i if p is None else p


def _to_quotient(i, a):
    qsig, keep = quotient_signature(a.signature, i)
    terms = {tuple(alpha[j] for j in keep): c for alpha, c in a._terms.items()}
    names = tuple(a.signature.name(j) for j in keep)
    return FaceImage(i, Element._raw(qsig, terms), keep, names)


def right_face(i, a):
    """``a + x_i A`` as a :class:`FaceImage`."""
    return _to_quotient(i, _reduce_right(i, a))


def left_face(i, a):
    """``a + A x_i``, computed as ``theta(r_theta(i)(theta(a)))``."""
    j = dual_index(a.signature, i)
    return _to_quotient(i, duality(_reduce_right(j, duality(a))))


def face_lift(face, signature):
    """Embed a face representative back into the full algebra."""
    s = signature.s
    terms = {}
    for beta, c in face.representative._terms.items():
        alpha = [0] * s
        for k, j in enumerate(face.index_map):
            alpha[j] = beta[k]
        terms[tuple(alpha)] = c
    return Element._raw(signature, terms)


@dataclass(frozen=True)
class Equal:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class Witness:
    """Faces differ: ``face`` index ``i``, evaluated at ``probe``.

    ``generator`` is the index ``j`` when the probe is the generator ``x_j``.
    """

    face: int
    generator: int
    probe: Element
    left_value: FaceImage
    right_value: FaceImage

    def __bool__(self):
        return False


def faces_distinguish(sigma, tau, side="right"):
    """``Equal`` iff all faces of ``sigma`` and ``tau`` agree, else a ``Witness``.

    Generator images are compared first.  If they all agree on every face
    while ``sigma != tau`` (face maps of Weyl directions are not algebra
    maps, so generator values need not suffice), the probes
    ``sigma^-1(x_k)`` are tried: for those ``r_k(sigma(probe)) = 0`` and a
    differing face is guaranteed for automorphisms.

    With a single generator the only face is evaluation at zero, so
    ``Equal`` then just means equal constant terms: ``y -> 2y`` and
    ``y -> y`` share their face.
    """
    if sigma.signature != tau.signature:
        raise SignatureMismatch(f"{sigma.signature} vs {tau.signature}")
    face = right_face if side == "right" else left_face
    sig = sigma.signature
    for j in range(sig.s):
        for i in range(sig.s):
            a = face(i, sigma.images[j])
            b = face(i, tau.images[j])
            if a.representative != b.representative:
                return Witness(i, j, Element.generator(sig, j), a, b)
    if sigma.images == tau.images or sig.s == 1:
        return Equal()
    from .automorphism import apply_endo, invert

    probes = []
    for inv in (invert(sigma), invert(tau)):
        probes.extend(inv.images)
    for probe in probes:
        for i in range(sig.s):
            a = face(i, apply_endo(sigma, probe))
            b = face(i, apply_endo(tau, probe))
            if a.representative != b.representative:
                return Witness(i, None, probe, a, b)
    raise AssertionError("distinct automorphisms with identical faces")

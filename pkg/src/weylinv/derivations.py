"""
Derivations of ``A_n (x) P_m`` and the projection maps built from them.

Three kinds are needed: coordinate partials, (signed) inner derivations
``+-ad(g)``, and central-coefficient combinations ``sum_l c_l * d_l`` of
partials in the central directions (optionally plus an inner part).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import Element, commutator, degree
from .errors import NilpotencyCapExceeded, PreconditionViolated, SignatureMismatch


class Derivation:
    def __call__(self, a):
        return apply(self, a)


@dataclass(frozen=True)
class CoordinatePartial(Derivation):
    """``d/dx_i`` acting on exponents of the normal form."""

    signature: object
    index: int

    def __post_init__(self):
        self.signature.check_index(self.index)


@dataclass(frozen=True)
class Inner(Derivation):
    """``sign * ad(generator)``, i.e. ``b -> sign * [generator, b]``."""

    generator: Element
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def signature(self):
        return self.generator.signature


@dataclass(frozen=True)
class LinearCombination(Derivation):
    """``b -> sum_l c_l * d_{i_l}(b) + [inner, b]`` with central ``c_l``.

    ``terms`` is a tuple of ``(coefficient, partial index)``.  The optional
    ``inner`` part is zero for the plain combinations; it is how dual
    derivations along central directions absorb the dependence of the Weyl
    images on central variables.
    """

    signature: object
    terms: tuple
    inner: Element = None

    def __post_init__(self):
        for c, i in self.terms:
            self.signature.check_index(i)
            if c.signature != self.signature:
                raise SignatureMismatch("coefficient lives in another algebra")
            if not c.is_central():
                raise PreconditionViolated(f"coefficient {c} is not central")
        if self.inner is not None and self.inner.signature != self.signature:
            raise SignatureMismatch("inner part lives in another algebra")


def partial(a, i):
    """``d a / d x_i`` termwise: ``x^alpha -> alpha_i x^(alpha - e_i)``."""
    out = {}
    for alpha, c in a._terms.items():
        e = alpha[i]
        if e:
            beta = alpha[:i] + (e - 1,) + alpha[i + 1:]
            out[beta] = c * e
    return Element._raw(a.signature, out)


def apply(d, a):
    if d.signature != a.signature:
        raise SignatureMismatch(f"{d.signature} vs {a.signature}")
    if isinstance(d, CoordinatePartial):
        return partial(a, d.index)
    if isinstance(d, Inner):
        r = commutator(d.generator, a)
        return r if d.sign == 1 else -r
    if isinstance(d, LinearCombination):
        out = Element.zero(a.signature)
        for c, i in d.terms:
            da = partial(a, i)
            if da:
                out = out + c * da
        if d.inner is not None:
            out = out + commutator(d.inner, a)
        return out
    raise TypeError(f"not a derivation: {d!r}")


def iterate(d, a, k):
    for _ in range(k):
        if not a:
            break
        a = apply(d, a)
    return a


def commute_on(d1, d2, probes=()):
    """True iff ``d1 d2 = d2 d1`` on every generator and every probe."""
    sig = d1.signature
    for a in list(Element.generators(sig)) + list(probes):
        if apply(d1, apply(d2, a)) != apply(d2, apply(d1, a)):
            return False
    return True


@dataclass(frozen=True)
class NotNilpotentWithinCap:
    cap: int

    def __bool__(self):
        return False


def nilpotency_index(d, a, cap):
    """Least ``k`` with ``d^k(a) = 0``, or ``NotNilpotentWithinCap(cap)``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    for k in range(cap + 1):
        if not a:
            return k
        if k == cap:
            break
        a = apply(d, a)
    return NotNilpotentWithinCap(cap)


def derivative_tower(d, a, cap):
    """``[a, d(a), d^2(a), ...]`` up to the last nonzero iterate.

    Raises :class:`NilpotencyCapExceeded` if ``d^cap(a)`` is still nonzero.
    """
    tower = []
    for _ in range(cap):
        if not a:
            return tower
        tower.append(a)
        a = apply(d, a)
    if a:
        raise NilpotencyCapExceeded(f"d^{cap}(a) != 0", cap=cap)
    return tower


def phi_map(x, d, a, cap):
    """``sum_k (-1)^k x^k / k! * d^k(a)``, the projection onto ``ker d``.

    Requires ``d(x) = 1``.  Powers of ``x`` multiply on the left.
    """
    if apply(d, x) != Element.one(x.signature):
        raise PreconditionViolated("phi_map needs d(x) = 1")
    tower = derivative_tower(d, a, cap)
    out = Element.zero(a.signature)
    xk = Element.one(a.signature)
    for k, dk in enumerate(tower):
        if k:
            xk = xk * x
        term = xk * dk
        c = Fraction((-1) ** k, factorial(k))
        out = out + term.scale(c)
    return out


def integrate(x, d, a, cap):
    """A preimage of ``a`` under ``d``: ``sum_k (-1)^k x^(k+1)/(k+1)! d^k(a)``.

    Needs ``d(x) = 1``.  If another derivation commuting with ``d`` kills
    both ``x`` and ``a``, it also kills the result.
    """
    tower = derivative_tower(d, a, cap)
    out = Element.zero(a.signature)
    xk = x
    for k, dk in enumerate(tower):
        if k:
            xk = xk * x
        out = out + (xk * dk).scale(Fraction((-1) ** k, factorial(k + 1)))
    return out


def full_projection(a):
    """``phi_s ... phi_1 (a)`` with the coordinate partials; equals ``a``'s constant term."""
    sig = a.signature
    for i in range(sig.s):
        if not a:
            break
        cap = max(int(degree(a)), 0) + 1
        a = phi_map(Element.generator(sig, i), CoordinatePartial(sig, i), a, cap)
    if not a.is_scalar():
        raise AssertionError("full projection left a non-scalar")
    return a.constant_term()

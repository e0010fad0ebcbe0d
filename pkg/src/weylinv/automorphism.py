"""
Endomorphisms of ``A_n (x) P_m``, their dual derivations and the inversion formula.

An endomorphism is given by the images ``x'_i = sigma(x_i)`` of the
generators.  The dual derivations ``d'_i`` satisfy ``d'_i(x'_j) = delta_ij``
and the composite projection ``phi_sigma = phi'_s ... phi'_1`` reads off the
constant coefficient of an element written in the ``x'`` coordinates.  The
inverse is then

    sigma^-1(a) = sum_alpha phi_sigma((d')^alpha a / alpha!) x^alpha.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .algebra import Element, commutator, degree
from .derivations import (
    Inner,
    LinearCombination,
    apply,
    full_projection,
    integrate,
    nilpotency_index,
    partial,
    phi_map,
)
from .errors import (
    DegreeBoundExceeded,
    InvalidEndomorphism,
    JacobianError,
    KroneckerCheckFailed,
    NilpotencyCapExceeded,
    NotCentral,
    NotScalar,
    NotScalarResult,
    PreconditionViolated,
    SignatureMismatch,
    VerificationFailed,
    ZeroDeterminant,
)


class Endomorphism:
    """Algebra endomorphism fixed by its generator images.

    The defining relations are checked on construction, so substitution is
    always a well-defined algebra homomorphism.
    """

    __slots__ = ("signature", "images", "_powers")

    def __init__(self, signature, images, check=True):
        images = tuple(images)
        if len(images) != signature.s:
            raise ValueError(f"need {signature.s} images, got {len(images)}")
        for im in images:
            if im.signature != signature:
                raise SignatureMismatch("image lives in another algebra")
        self.signature = signature
        self.images = images
        self._powers = [[Element.one(signature)] for _ in images]
        if check:
            self.check_relations()

    @classmethod
    def identity(cls, signature):
        return cls(signature, Element.generators(signature), check=False)

    def check_relations(self):
        sig = self.signature
        for i in range(sig.s):
            for j in range(i + 1, sig.s):
                want = sig.structure_constant(i, j)
                got = commutator(self.images[i], self.images[j])
                if got != want:
                    raise InvalidEndomorphism(
                        f"[{sig.name(i)}', {sig.name(j)}'] = {got}, expected {want}",
                        pair=(i, j),
                    )

    def power(self, i, k):
        pw = self._powers[i]
        while len(pw) <= k:
            pw.append(pw[-1] * self.images[i])
        return pw[k]

    def __call__(self, a):
        return apply_endo(self, a)

    def degree(self):
        return degree_of(self)

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.signature == other.signature and self.images == other.images

    def __hash__(self):
        return hash((self.signature, self.images))

    def __repr__(self):
        sig = self.signature
        body = "; ".join(f"{sig.name(i)} -> {im}" for i, im in enumerate(self.images))
        return f"Endomorphism({sig}, {{{body}}})"


def apply_endo(sigma, a):
    """``sigma(a)``: substitute images into each normal-ordered monomial."""
    if a.signature != sigma.signature:
        raise SignatureMismatch(f"{sigma.signature} vs {a.signature}")
    sig = a.signature
    out = Element.zero(sig)
    for alpha, c in a._terms.items():
        term = None
        for i, e in enumerate(alpha):
            if e:
                f = sigma.power(i, e)
                term = f if term is None else term * f
        if term is None:
            term = Element.one(sig)
        out = out + term.scale(c)
    return out


def compose(sigma, tau):
    """``sigma o tau``, i.e. ``x_i -> sigma(tau(x_i))``."""
    if sigma.signature != tau.signature:
        raise SignatureMismatch(f"{sigma.signature} vs {tau.signature}")
    return Endomorphism(sigma.signature, [apply_endo(sigma, t) for t in tau.images], check=False)


def degree_of(sigma):
    return max(degree(im) for im in sigma.images)


def degree_bound(sigma):
    """``(deg sigma)^(s-1)``, the a priori bound on ``deg sigma^-1``."""
    return int(degree_of(sigma)) ** (sigma.signature.s - 1)


# -- central Jacobian ------------------------------------------------------


def _det(rows):
    # Laplace expansion along the first row; entries commute (they are central)
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = None
    for l in range(size):
        if not rows[0][l]:
            continue
        minor = [r[:l] + r[l + 1:] for r in rows[1:]]
        term = rows[0][l] * _det(minor)
        if l % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else rows[0][0] - rows[0][0]


def central_jacobian(sigma):
    """The ``m x m`` matrix ``d sigma(y_k) / d y_l`` (central images only)."""
    sig = sigma.signature
    w = 2 * sig.n
    if sig.m == 0:
        raise PreconditionViolated("no central generators")
    for k in range(sig.m):
        if not sigma.images[w + k].is_central():
            raise NotCentral(f"image of {sig.name(w + k)} is not central: {sigma.images[w + k]}")
    return [[partial(sigma.images[w + k], w + l) for l in range(sig.m)] for k in range(sig.m)]


def central_jacobian_det(sigma):
    """``det(d sigma(y_i)/d y_j)``; must be a nonzero scalar."""
    d = _det(central_jacobian(sigma))
    if not d.is_scalar():
        raise NotScalar(f"Jacobian determinant {d} is not a scalar", value=d)
    value = d.constant_term()
    if not value:
        raise ZeroDeterminant("Jacobian determinant vanishes")
    return value


# -- dual derivations ------------------------------------------------------


@dataclass(frozen=True)
class DualDerivations:
    sigma: Endomorphism
    derivations: tuple
    delta: Fraction = None
    corrected: tuple = field(default=())

    def __getitem__(self, i):
        return self.derivations[i]

    def __len__(self):
        return len(self.derivations)

    def __iter__(self):
        return iter(self.derivations)


def _default_cap(sigma, a):
    return int(max(degree(a), 1)) * max(degree_bound(sigma), 1) + 1


def _central_correction(sigma, weyl, d, cap):
    """Inner element ``u`` so that ``d + ad(u)`` kills every Weyl image.

    The central-direction combination ``d`` already satisfies
    ``d(y'_k) = delta``; when Weyl images involve central variables it does
    not kill them.  ``u`` is recovered from its prescribed dual partials by
    integrating one Weyl coordinate at a time.
    """
    sig = sigma.signature
    n = sig.n
    x = sigma.images
    c = [apply(d, x[k]) for k in range(2 * n)]
    if not any(c):
        return None
    targets = [c[n + i] for i in range(n)] + [-c[i] for i in range(n)]
    u = Element.zero(sig)
    for k in range(2 * n):
        h = targets[k] - apply(weyl[k], u)
        if h:
            u = u + integrate(x[k], weyl[k], h, cap(h))
    return u


def dual_derivations(sigma, cap=None):
    """The derivations ``d'_i`` with ``d'_i(sigma(x_j)) = delta_ij``.

    Weyl directions are ``ad(sigma(p_i))`` and ``-ad(sigma(q_i))``.  Central
    directions are the Jacobian row expansion
    ``Delta^-1 sum_l (-1)^(j+l) M_jl d/dy_l`` plus, when needed, an inner
    correction (see :func:`_central_correction`).
    """
    sig = sigma.signature
    n, m, w = sig.n, sig.m, 2 * sig.n
    x = sigma.images
    ders = [Inner(x[n + i], 1) for i in range(n)] + [Inner(x[i], -1) for i in range(n)]
    delta = None
    corrected = []
    if m:
        delta = central_jacobian_det(sigma)
        jac = central_jacobian(sigma)
        inv = 1 / delta
        capf = cap if cap is not None else (lambda a: _default_cap(sigma, a))
        if isinstance(capf, int):
            fixed = capf
            capf = lambda a: fixed  # noqa: E731
        for j in range(m):
            terms = []
            for l in range(m):
                if m == 1:
                    minor = Element.one(sig)
                else:
                    minor = _det([row[:l] + row[l + 1:] for k, row in enumerate(jac) if k != j])
                coef = minor.scale(inv if (j + l) % 2 == 0 else -inv)
                if coef:
                    terms.append((coef, w + l))
            d = LinearCombination(sig, tuple(terms))
            u = _central_correction(sigma, ders[:w], d, capf)
            if u is not None:
                d = LinearCombination(sig, tuple(terms), inner=u)
                corrected.append(w + j)
            ders.append(d)
    duals = DualDerivations(sigma, tuple(ders), delta, tuple(corrected))
    _kronecker_check(duals)
    return duals


def _kronecker_check(duals):
    sig = duals.sigma.signature
    one = Element.one(sig)
    for i, d in enumerate(duals.derivations):
        for j, xj in enumerate(duals.sigma.images):
            got = apply(d, xj)
            if got != (one if i == j else 0):
                raise KroneckerCheckFailed(
                    f"d'_{i + 1}({sig.name(j)}') = {got}, expected {int(i == j)}"
                )


# -- the projection phi_sigma and the inversion formula -------------------


def phi_sigma(sigma, a, cap=None, duals=None):
    """``phi'_s ... phi'_1 (a)``, which is a scalar when sigma is an automorphism."""
    duals = duals or dual_derivations(sigma)
    if cap is None:
        cap = _default_cap(sigma, a)
    for xi, di in zip(sigma.images, duals.derivations):
        if not a:
            break
        a = phi_map(xi, di, a, cap)
    if not a.is_scalar():
        raise NotScalarResult(f"phi_sigma left positive-degree terms: {a}")
    return a.constant_term()


def _first_nonzero(alpha):
    for i, e in enumerate(alpha):
        if e:
            return i
    return len(alpha) - 1


def dual_coefficients(sigma, a, bound=None, duals=None, phi_cap=None):
    """Coefficients ``lambda'_alpha`` of ``a = sum lambda'_alpha (x')^alpha``.

    Multi-indices are visited level by level in ``|alpha|``; each
    ``(d')^alpha a`` is obtained from exactly one parent by applying an
    outermost ``d'_j`` (``j`` no larger than the parent's first nonzero
    index), so zero derivatives prune whole subtrees.  Raises
    :class:`DegreeBoundExceeded` if something is still nonzero past level
    ``bound``.
    """
    duals = duals or dual_derivations(sigma)
    sig = sigma.signature
    s = sig.s
    if bound is None:
        bound = degree_bound(sigma)
    capf = phi_cap or (lambda b: max(int(degree(b)), 1) * max(bound, 1) + 1)
    level = {sig.zero_exponent(): a} if a else {}
    coeffs = {}
    for size in range(bound + 1):
        nxt = {}
        for alpha, der in level.items():
            afact = prod(factorial(e) for e in alpha)
            b = der.scale(Fraction(1, afact))
            c = phi_sigma(sigma, b, cap=capf(b), duals=duals)
            if c:
                coeffs[alpha] = c
            top = _first_nonzero(alpha) if size else s - 1
            for j in range(top + 1):
                e = apply(duals[j], der)
                if e:
                    nxt[alpha[:j] + (alpha[j] + 1,) + alpha[j + 1:]] = e
        level = nxt
        if not level:
            return coeffs
    raise DegreeBoundExceeded(
        f"(d')^alpha a is nonzero at |alpha| = {bound + 1}; not an automorphism within the bound"
    )


def dual_degree(sigma, a, cap=None, duals=None):
    """``deg'(a)``: largest ``|alpha|`` with ``lambda'_alpha != 0`` (``-inf`` for ``a = 0``)."""
    coeffs = dual_coefficients(sigma, a, bound=cap, duals=duals)
    return max((sum(k) for k in coeffs), default=float("-inf"))


def invert(sigma, cap_override=None, verify=True):
    """The inverse automorphism via the inversion formula."""
    sig = sigma.signature
    duals = dual_derivations(sigma)
    bound = cap_override if cap_override is not None else degree_bound(sigma)
    images = []
    for i in range(sig.s):
        coeffs = dual_coefficients(sigma, Element.generator(sig, i), bound=bound, duals=duals)
        images.append(Element(sig, coeffs))
    try:
        tau = Endomorphism(sig, images)
    except InvalidEndomorphism as exc:
        raise VerificationFailed(f"candidate inverse violates relations: {exc}") from exc
    if verify:
        for i in range(sig.s):
            xi = Element.generator(sig, i)
            if apply_endo(sigma, tau.images[i]) != xi:
                raise VerificationFailed(f"sigma(tau({sig.name(i)})) != {sig.name(i)}")
            if apply_endo(tau, sigma.images[i]) != xi:
                raise VerificationFailed(f"tau(sigma({sig.name(i)})) != {sig.name(i)}")
    return tau


# -- certification ---------------------------------------------------------


@dataclass(frozen=True)
class Certified:
    bound: int

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotCertified:
    reason: str
    witness: object = None

    def __bool__(self):
        return False


def certify_automorphism(sigma):
    """Decide whether ``sigma`` is an automorphism.

    Certified iff the central Jacobian determinant is a nonzero scalar and
    ``(d'_i)^(B+1)(x_j) = 0`` for all ``i, j`` with ``B = (deg sigma)^(s-1)``.
    """
    sig = sigma.signature
    bound = degree_bound(sigma)
    try:
        duals = dual_derivations(sigma)
    except JacobianError as exc:
        return NotCertified(f"jacobian: {exc}", witness=getattr(exc, "value", None) or exc.kind)
    except NilpotencyCapExceeded as exc:
        return NotCertified(f"dual derivation construction: {exc}", witness="correction")
    except KroneckerCheckFailed as exc:
        return NotCertified(f"kronecker: {exc}", witness="kronecker")
    for i, d in enumerate(duals):
        for j in range(sig.s):
            k = nilpotency_index(d, Element.generator(sig, j), bound + 1)
            if not k:
                return NotCertified(
                    f"(d'_{i + 1})^{bound + 1}({sig.name(j)}) != 0", witness=(i, j)
                )
    return Certified(bound)


# -- Taylor-type expansion --------------------------------------------------


def taylor_expand(a):
    """``{alpha: phi(d^alpha a / alpha!)}`` over nonzero values; equals ``a``'s terms."""
    sig = a.signature
    s = sig.s
    level = {sig.zero_exponent(): a} if a else {}
    coeffs = {}
    size = 0
    while level:
        nxt = {}
        for alpha, der in level.items():
            afact = prod(factorial(e) for e in alpha)
            c = full_projection(der.scale(Fraction(1, afact)))
            if c:
                coeffs[alpha] = c
            top = _first_nonzero(alpha) if size else s - 1
            for j in range(top + 1):
                e = partial(der, j)
                if e:
                    nxt[alpha[:j] + (alpha[j] + 1,) + alpha[j + 1:]] = e
        level = nxt
        size += 1
    return coeffs


def is_injective_on(sigma, a, b):
    """``sigma(a) != sigma(b)`` whenever ``a != b`` (monomorphism spot check)."""
    return (a == b) or apply_endo(sigma, a - b) != 0


__all__ = [
    "Endomorphism",
    "DualDerivations",
    "Certified",
    "NotCertified",
    "apply_endo",
    "compose",
    "degree_of",
    "degree_bound",
    "central_jacobian",
    "central_jacobian_det",
    "dual_derivations",
    "phi_sigma",
    "dual_coefficients",
    "dual_degree",
    "invert",
    "certify_automorphism",
    "taylor_expand",
]

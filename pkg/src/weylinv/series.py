"""
Truncated power series in ``K[[x_1, ..., x_m]]`` and the inversion formula
for their (continuous) automorphisms.

A :class:`TruncatedSeries` of order ``N`` is exact modulo ``m^(N+1)``.
Differentiation loses one order: the degree-``N`` part of a derivative
is computed as if the dropped tail were zero, so it is only reliable
modulo ``m^N``.  Everything downstream accounts for that.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from .algebra import AlgebraSignature, Element, format_terms, scalar
from .errors import NotInvertible, NotScalarResult, PreconditionViolated, SignatureMismatch, VerificationFailed


def _grlex(alpha):
    return (sum(alpha), alpha)


class TruncatedSeries:
    __slots__ = ("m", "order", "_terms")

    def __init__(self, m, order, terms=None):
        if m < 1 or order < 0:
            raise ValueError("need m >= 1 and order >= 0")
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != m or min(alpha) < 0:
                raise ValueError(f"bad exponent {alpha}")
            c = scalar(c)
            if c and sum(alpha) <= order:
                clean[alpha] = clean.get(alpha, 0) + c
        self.m = m
        self.order = order
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, m, order, terms):
        obj = cls.__new__(cls)
        obj.m, obj.order, obj._terms = m, order, terms
        return obj

    @classmethod
    def const(cls, m, order, c):
        c = scalar(c)
        return cls._raw(m, order, {(0,) * m: c} if c else {})

    @classmethod
    def variable(cls, m, order, i):
        e = [0] * m
        e[i] = 1
        return cls(m, order, {tuple(e): 1})

    @classmethod
    def from_element(cls, a, order):
        """Truncate a polynomial (an element of ``A_0 (x) P_m``)."""
        if a.signature.n:
            raise PreconditionViolated("only commutative polynomials embed into power series")
        return cls(a.signature.m, order, dict(a.terms))

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _grlex(kv[0]))

    def constant_term(self):
        return self._terms.get((0,) * self.m, Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            if isinstance(other, (int, Fraction)):
                return TruncatedSeries.const(self.m, self.order, other)
            return NotImplemented
        if other.m != self.m or other.order != self.order:
            raise SignatureMismatch(f"series shapes differ: (m={self.m}, N={self.order}) vs (m={other.m}, N={other.order})")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = c
            else:
                del out[k]
        return TruncatedSeries._raw(self.m, self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.m, self.order, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = scalar(c)
        if not c:
            return TruncatedSeries._raw(self.m, self.order, {})
        return TruncatedSeries._raw(self.m, self.order, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        N = self.order
        groups = {}
        for k, v in other._terms.items():
            groups.setdefault(sum(k), []).append((k, v))
        right = sorted(groups.items())
        out = {}
        for a, ca in self._terms.items():
            room = N - sum(a)
            for db, group in right:
                if db > room:
                    break
                for b, cb in group:
                    e = tuple(x + y for x, y in zip(a, b))
                    out[e] = out.get(e, 0) + ca * cb
        return TruncatedSeries._raw(self.m, N, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        result = TruncatedSeries.const(self.m, self.order, 1)
        for _ in range(k):
            result = result * self
        return result

    def truncate(self, order):
        """Same series viewed modulo ``m^(order+1)`` (order may not exceed the current one)."""
        if order > self.order:
            raise ValueError("cannot raise the precision of a truncated series")
        return TruncatedSeries._raw(self.m, order, {k: v for k, v in self._terms.items() if sum(k) <= order})

    def agrees_with(self, other, order):
        """Equal modulo ``m^(order+1)``."""
        return self.truncate(order)._terms == other.truncate(order)._terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.const(self.m, self.order, other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.m, self.order, self._terms) == (other.m, other.order, other._terms)

    def __hash__(self):
        return hash((self.m, self.order, frozenset(self._terms.items())))

    def names(self):
        return AlgebraSignature(0, self.m).names()

    def format(self, names=None):
        body = format_terms(self.items(), names or self.names())
        return f"{body} + O(deg {self.order + 1})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"TruncatedSeries({self.format()})"


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_partial(a, i):
    out = {}
    for alpha, c in a._terms.items():
        e = alpha[i]
        if e:
            out[alpha[:i] + (e - 1,) + alpha[i + 1:]] = c * e
    return TruncatedSeries._raw(a.m, a.order, out)


def series_reciprocal(u):
    """``1/u`` for ``u`` with nonzero constant term (geometric series)."""
    c0 = u.constant_term()
    if not c0:
        raise NotInvertible("series has zero constant term")
    w = u.scale(1 / c0) - 1
    result = TruncatedSeries.const(u.m, u.order, 1)
    power = TruncatedSeries.const(u.m, u.order, 1)
    for _ in range(u.order):
        power = power * (-w)
        if not power:
            break
        result = result + power
    return result.scale(1 / c0)


def substitute(a, images):
    """``a(images)``; exact when every image has zero constant term."""
    m, N = a.m, a.order
    powers = [[TruncatedSeries.const(m, N, 1)] for _ in images]
    out = TruncatedSeries._raw(m, N, {})
    for alpha, c in a._terms.items():
        term = TruncatedSeries.const(m, N, c)
        for i, e in enumerate(alpha):
            if e:
                pw = powers[i]
                while len(pw) <= e:
                    pw.append(pw[-1] * images[i])
                term = term * pw[e]
        out = out + term
    return out


class SeriesEndomorphism:
    """Continuous endomorphism ``x_i -> images[i]`` with images in the maximal ideal."""

    __slots__ = ("m", "order", "images")

    def __init__(self, images):
        images = tuple(images)
        if not images:
            raise ValueError("need at least one image")
        m, N = images[0].m, images[0].order
        if len(images) != m:
            raise ValueError(f"need {m} images")
        for im in images:
            if im.m != m or im.order != N:
                raise SignatureMismatch("images must share m and order")
            if im.constant_term():
                raise PreconditionViolated("images must have zero constant term (continuity)")
        self.m, self.order, self.images = m, N, images

    @classmethod
    def identity(cls, m, order):
        return cls([TruncatedSeries.variable(m, order, i) for i in range(m)])

    @classmethod
    def from_polynomials(cls, elements, order):
        return cls([TruncatedSeries.from_element(e, order) for e in elements])

    def __call__(self, a):
        return substitute(a, self.images)

    def __eq__(self, other):
        if not isinstance(other, SeriesEndomorphism):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        names = AlgebraSignature(0, self.m).names()
        body = "; ".join(f"{nm} -> {im}" for nm, im in zip(names, self.images))
        return f"SeriesEndomorphism({{{body}}})"


def series_compose(sigma, tau):
    """``(sigma o tau)(x_i) = sigma(tau(x_i))``."""
    return SeriesEndomorphism([substitute(t, sigma.images) for t in tau.images])


def _det(rows):
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = rows[0][0].scale(0)
    for l in range(size):
        if not rows[0][l]:
            continue
        term = rows[0][l] * _det([r[:l] + r[l + 1:] for r in rows[1:]])
        total = total - term if l % 2 else total + term
    return total


def series_jacobian(sigma):
    return [[series_partial(im, l) for l in range(sigma.m)] for im in sigma.images]


class SeriesDerivation:
    """``a -> sum_l c_l * d a/d x_l`` with series coefficients.

    Coefficients are truncated to the order of the argument, so the
    operator applies to series of any order up to its own.
    """

    def __init__(self, terms):
        self.terms = tuple(terms)
        self._cut = {}

    def _at(self, order):
        if order not in self._cut:
            self._cut[order] = [(c.truncate(order), l) for c, l in self.terms]
        return self._cut[order]

    def __call__(self, a):
        out = TruncatedSeries._raw(a.m, a.order, {})
        for c, l in self._at(a.order):
            da = series_partial(a, l)
            if da:
                out = out + c * da
        return out

    def __repr__(self):
        return "SeriesDerivation(" + " + ".join(f"({c})*d{l + 1}" for c, l in self.terms) + ")"


def series_dual_derivations(sigma):
    """``d'_j = Delta^-1 sum_l (-1)^(j+l) M_jl d_l``; checked by ``d'_i(x'_j) = delta_ij`` mod ``m^N``."""
    jac = series_jacobian(sigma)
    delta = _det(jac)
    inv = series_reciprocal(delta)
    m, N = sigma.m, sigma.order
    ders = []
    for j in range(m):
        terms = []
        for l in range(m):
            if m == 1:
                minor = TruncatedSeries.const(m, N, 1)
            else:
                minor = _det([row[:l] + row[l + 1:] for k, row in enumerate(jac) if k != j])
            coef = inv * minor
            if (j + l) % 2:
                coef = -coef
            if coef:
                terms.append((coef, l))
        ders.append(SeriesDerivation(tuple(terms)))
    if N >= 1:
        for i, d in enumerate(ders):
            for j, xj in enumerate(sigma.images):
                want = TruncatedSeries.const(m, N, int(i == j))
                if not d(xj).agrees_with(want, N - 1):
                    raise VerificationFailed(f"d'_{i + 1}(x'_{j + 1}) is not {int(i == j)} mod m^{N}")
    return ders


def series_phi(x, d, a):
    """``sum_{k<=N} (-1)^k x^k/k! d^k(a)``; terms with ``k > N`` vanish as ``x`` has no constant term.

    Since ``x^k`` lies in ``m^k``, only ``d^k(a)`` modulo ``m^(N-k+1)`` matters,
    so the tower is truncated one order per step.
    """
    N = a.order
    if x.order != N:
        x = x.truncate(N)
    out = a
    xk = TruncatedSeries.const(a.m, N, 1)
    dk = a
    for k in range(1, N + 1):
        dk = d(dk).truncate(N - k)
        if not dk:
            break
        xk = xk * x
        lifted = TruncatedSeries._raw(a.m, N, dk._terms)
        out = out + (xk * lifted).scale(Fraction((-1) ** k, factorial(k)))
    return out


def series_phi_sigma(sigma, a, duals=None):
    """``phi'_1 ... phi'_m (a)`` (``phi'_m`` applied first); returns the constant.

    ``a`` may have lower order than ``sigma``; the computation then runs
    at ``a``'s order.  The positive-degree part must vanish.
    """
    duals = duals or series_dual_derivations(sigma)
    images = [im.truncate(a.order) for im in sigma.images]
    for i in reversed(range(sigma.m)):
        a = series_phi(images[i], duals[i], a)
    if any(sum(k) for k in a._terms):
        raise NotScalarResult("phi_sigma left positive-degree terms")
    return a.constant_term()


def _first_nonzero(alpha):
    for i, e in enumerate(alpha):
        if e:
            return i
    return len(alpha) - 1


def _dual_tree(a, ders):
    """Yield ``(alpha, (d')^alpha a)`` for ``|alpha| <= order``.

    Each application of a derivation loses one order of precision, so the
    value at ``alpha`` is returned truncated to order ``N - |alpha|``; only
    ``alpha + e_j`` with ``j`` up to the first nonzero index is expanded.
    """
    m = a.m
    level = {(0,) * m: a} if a else {}
    size = 0
    while level:
        nxt = {}
        for alpha, der in level.items():
            yield alpha, der
            if der.order == 0:
                continue
            top = _first_nonzero(alpha) if size else m - 1
            for j in range(top + 1):
                e = ders[j](der).truncate(der.order - 1)
                if e:
                    nxt[alpha[:j] + (alpha[j] + 1,) + alpha[j + 1:]] = e
        level = nxt
        size += 1


def series_dual_coefficients(sigma, a, duals=None):
    duals = duals or series_dual_derivations(sigma)
    coeffs = {}
    for alpha, der in _dual_tree(a, duals):
        b = der.scale(Fraction(1, prod(factorial(e) for e in alpha)))
        c = series_phi_sigma(sigma, b, duals=duals)
        if c:
            coeffs[alpha] = c
    return coeffs


def series_invert(sigma, verify=True):
    """Inverse modulo ``m^(N+1)`` via the inversion formula."""
    m, N = sigma.m, sigma.order
    duals = series_dual_derivations(sigma)
    images = []
    for i in range(m):
        x = TruncatedSeries.variable(m, N, i)
        images.append(TruncatedSeries(m, N, series_dual_coefficients(sigma, x, duals)))
    tau = SeriesEndomorphism(images)
    if verify:
        for i in range(m):
            x = TruncatedSeries.variable(m, N, i)
            if substitute(tau.images[i], sigma.images) != x:
                raise VerificationFailed(f"sigma(tau(x{i + 1})) != x{i + 1}")
            if substitute(sigma.images[i], tau.images) != x:
                raise VerificationFailed(f"tau(sigma(x{i + 1})) != x{i + 1}")
    return tau


def series_taylor(a):
    """``{alpha: phi(d^alpha a / alpha!)}`` with the coordinate maps ``phi = phi_1 ... phi_m``."""
    m, N = a.m, a.order

    def part(l):
        return SeriesDerivation(((TruncatedSeries.const(m, N, 1), l),))

    ders = [part(l) for l in range(m)]
    xs = [TruncatedSeries.variable(m, N, i) for i in range(m)]
    coeffs = {}
    for alpha, der in _dual_tree(a, ders):
        b = der.scale(Fraction(1, prod(factorial(e) for e in alpha)))
        for i in reversed(range(m)):
            b = series_phi(xs[i], ders[i], b)
        c = b.constant_term()
        if c:
            coeffs[alpha] = c
    return coeffs


def polynomial_joint_kernel(images, degree_bound):
    """Joint kernel of the dual derivations of a polynomial map, in degree <= bound.

    ``images`` are elements of ``A_0 (x) P_m`` with a nonzero scalar Jacobian
    determinant; the derivations then have polynomial coefficients.
    """
    from .automorphism import Endomorphism, dual_derivations
    from .structure import joint_kernel

    sig = images[0].signature
    if sig.n:
        raise PreconditionViolated("polynomial maps only")
    duals = dual_derivations(Endomorphism(sig, images, check=False))
    return joint_kernel(duals.derivations, degree_bound)

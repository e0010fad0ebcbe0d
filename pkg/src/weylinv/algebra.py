"""
Exact sparse arithmetic in the Weyl algebra with polynomial coefficients.

The algebra ``A = A_n (x) P_m`` has generators ``x_0, ..., x_{s-1}``
(``s = 2n + m``) laid out as ``q_1..q_n, p_1..p_n, y_1..y_m`` with
``[p_i, q_j] = delta_ij`` and the ``y_j`` central.  Every element is stored
in the normal-ordered basis ``x^a = x_0^a_0 ... x_{s-1}^a_{s-1}`` as a sparse
map from exponent tuples to exact rationals.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from types import MappingProxyType

from .errors import InvalidIndex, SignatureMismatch

NEG_INF = float("-inf")


def scalar(value):
    """Coerce an int/Fraction/"a/b" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point scalars are not allowed")
    return Fraction(value)


@dataclass(frozen=True)
class AlgebraSignature:
    """Shape of ``A_n (x) P_m``: ``n`` Weyl pairs and ``m`` central variables."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be nonnegative")
        if 2 * self.n + self.m < 1 and not isinstance(self, GroundField):
            raise ValueError("the algebra needs at least one generator")

    @property
    def s(self):
        return 2 * self.n + self.m

    def role(self, i):
        """``'q'``, ``'p'`` or ``'y'`` for generator index ``i``."""
        self.check_index(i)
        if i < self.n:
            return "q"
        if i < 2 * self.n:
            return "p"
        return "y"

    def is_central(self, i):
        return self.role(i) == "y"

    def partner(self, i):
        """Index of the Weyl partner of ``x_i`` (``None`` for central ones)."""
        r = self.role(i)
        if r == "q":
            return i + self.n
        if r == "p":
            return i - self.n
        return None

    def name(self, i):
        r = self.role(i)
        if r == "q":
            return f"q{i + 1}"
        if r == "p":
            return f"p{i - self.n + 1}"
        return f"y{i - 2 * self.n + 1}"

    def names(self):
        return tuple(self.name(i) for i in range(self.s))

    def check_index(self, i):
        if not isinstance(i, int) or not 0 <= i < self.s:
            raise InvalidIndex(f"generator index {i!r} out of range for s={self.s}")

    def zero_exponent(self):
        return (0,) * self.s

    def unit_exponent(self, i):
        self.check_index(i)
        e = [0] * self.s
        e[i] = 1
        return tuple(e)

    def structure_constant(self, i, j):
        """The scalar ``[x_i, x_j]`` for canonical generators."""
        n = self.n
        if i < n and j == i + n:
            return -1
        if j < n and i == j + n:
            return 1
        return 0

    def __str__(self):
        return f"A_{self.n}(x)P_{self.m}"


class GroundField(AlgebraSignature):
    """The scalars, seen as an algebra with no generators.

    Only reached as the quotient of a one-generator algebra by its generator.
    """

    def __init__(self):
        super().__init__(0, 0)



@lru_cache(maxsize=None)
def _pair_swap(b, c):
    """``p^b q^c`` as ``[(j, coeff)]`` meaning ``coeff * q^(c-j) p^(b-j)``."""
    return tuple((j, factorial(j) * comb(b, j) * comb(c, j)) for j in range(min(b, c) + 1))


@lru_cache(maxsize=1 << 20)
def monomial_product(n, a, b):
    """Normal-ordered ``x^a * x^b`` as a tuple of ``(exponent, int coefficient)``.

    Only ``p_k`` of the left factor and ``q_k`` of the right factor need to
    be reordered; distinct Weyl pairs and central variables commute, so the
    reordering factorizes per pair.
    """
    base = [x + y for x, y in zip(a, b)]
    choices = []
    active = []
    for k in range(n):
        bp, cq = a[n + k], b[k]
        if bp and cq:
            choices.append(_pair_swap(bp, cq))
            active.append(k)
    if not active:
        return ((tuple(base), 1),)
    out = []
    for combo in product(*choices):
        e = list(base)
        coeff = 1
        for k, (j, c) in zip(active, combo):
            e[k] -= j
            e[n + k] -= j
            coeff *= c
        out.append((tuple(e), coeff))
    return tuple(out)


def _grlex_key(alpha):
    return (sum(alpha), alpha)


class Element:
    """Immutable normal-ordered element of ``A_n (x) P_m``.

    >>> sig = AlgebraSignature(1, 0)
    >>> q, p = Element.generators(sig)
    >>> print(p * q)
    1 + q1*p1
    """

    __slots__ = ("signature", "_terms", "_hash")

    def __init__(self, signature, terms=None):
        s = signature.s
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(x) for x in alpha)
            if len(alpha) != s or min(alpha, default=0) < 0:
                raise ValueError(f"bad exponent {alpha} for {signature}")
            c = scalar(c)
            if c:
                clean[alpha] = clean.get(alpha, 0) + c
        self.signature = signature
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, signature, terms):
        # trusted constructor: terms already canonical (no zeros)
        obj = cls.__new__(cls)
        obj.signature = signature
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, signature):
        return cls._raw(signature, {})

    @classmethod
    def const(cls, signature, c):
        c = scalar(c)
        return cls._raw(signature, {signature.zero_exponent(): c} if c else {})

    @classmethod
    def one(cls, signature):
        return cls.const(signature, 1)

    @classmethod
    def monomial(cls, signature, alpha, c=1):
        return cls(signature, {tuple(alpha): c})

    @classmethod
    def generator(cls, signature, i):
        return cls._raw(signature, {signature.unit_exponent(i): Fraction(1)})

    @classmethod
    def generators(cls, signature):
        return [cls.generator(signature, i) for i in range(signature.s)]

    # inspection

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        """Terms in graded-lex ascending order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def coefficient(self, alpha):
        return self._terms.get(tuple(alpha), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_scalar(self):
        z = self.signature.zero_exponent()
        return all(k == z for k in self._terms)

    def is_central(self):
        """True iff only central variables occur."""
        w = 2 * self.signature.n
        return all(not any(k[:w]) for k in self._terms)

    def degree(self):
        return degree(self)

    def constant_term(self):
        return constant_term(self)

    def max_exponent(self, i):
        return max((k[i] for k in self._terms), default=0)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.signature != self.signature:
                raise SignatureMismatch(f"{self.signature} vs {other.signature}")
            return other
        if isinstance(other, (int, Fraction)):
            return Element.const(self.signature, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = c
            else:
                del out[k]
        return Element._raw(self.signature, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.signature, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c):
        c = scalar(c)
        if not c:
            return Element.zero(self.signature)
        return Element._raw(self.signature, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.signature.n
        out = {}
        get = out.get
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                cab = ca * cb
                for e, c in monomial_product(n, a, b):
                    out[e] = get(e, 0) + cab * c
        return Element._raw(self.signature, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / scalar(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Element.one(self.signature)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.signature == other.signature and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Element.const(self.signature, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.signature, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Element({self.signature}, {format_terms(self.items(), self.signature.names())!r})"

    def __str__(self):
        return format_terms(self.items(), self.signature.names())


def format_monomial(alpha, names):
    parts = []
    for e, name in zip(alpha, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_scalar(c):
    c = scalar(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(items, names):
    """Render ``[(alpha, coeff)]`` such that the expression parser reads it back."""
    if not items:
        return "0"
    out = []
    for idx, (alpha, c) in enumerate(items):
        mono = format_monomial(alpha, names)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = format_scalar(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_scalar(mag)}*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _check(a, b):
    if a.signature != b.signature:
        raise SignatureMismatch(f"{a.signature} vs {b.signature}")


def add(a, b):
    _check(a, b)
    return a + b


def mul(a, b):
    _check(a, b)
    return a * b


def commutator(a, b):
    """``[a, b] = ab - ba``."""
    _check(a, b)
    return a * b - b * a


def degree(a):
    """Total degree of the normal form; ``NEG_INF`` for zero."""
    return max((sum(k) for k in a._terms), default=NEG_INF)


def constant_term(a):
    return a._terms.get(a.signature.zero_exponent(), Fraction(0))

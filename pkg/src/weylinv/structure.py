"""
Recognition of ``A_n (x) P_m``: commutator matrices, Darboux bases and
bounded searches for coordinates dual to a family of derivations.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from . import linalg
from .algebra import AlgebraSignature, Element, commutator, degree
from .derivations import Inner, LinearCombination, apply, commute_on
from .errors import CommutationCheckFailed, NonScalarCommutator, PreconditionViolated


@dataclass(frozen=True)
class CommutatorMatrix:
    """Antisymmetric matrix ``L[i][j] = [x_i, x_j]`` of scalars."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        if not linalg.is_antisymmetric(rows):
            raise PreconditionViolated("commutator matrix must be antisymmetric")

    @property
    def size(self):
        return len(self.entries)

    def rows(self):
        return [list(r) for r in self.entries]


def commutator_matrix(generators):
    gens = list(generators)
    size = len(gens)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            c = commutator(gens[i], gens[j])
            if not c.is_scalar():
                raise NonScalarCommutator(f"[g{i + 1}, g{j + 1}] = {c} is not a scalar", pair=(i, j))
            v = c.constant_term()
            rows[i][j] = v
            rows[j][i] = -v
    return CommutatorMatrix(rows)


def canonical_form(n, m):
    """``n`` blocks ``[[0, 1], [-1, 0]]`` followed by an ``m x m`` zero block."""
    size = 2 * n + m
    rows = [[Fraction(0)] * size for _ in range(size)]
    for k in range(n):
        rows[2 * k][2 * k + 1] = Fraction(1)
        rows[2 * k + 1][2 * k] = Fraction(-1)
    return rows


@dataclass(frozen=True)
class DarbouxBasis:
    """``change_of_basis`` has the new basis vectors as columns:
    ``(u_1, v_1, ..., u_n, v_n, k_1, ..., k_m)`` with ``L(u_i, v_i) = 1``
    and the ``k_j`` spanning the kernel.
    """

    change_of_basis: tuple
    n: int
    m: int

    def columns(self):
        return [list(c) for c in zip(*self.change_of_basis)]


def _form(rows, u, v):
    return sum((u[i] * rows[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]), Fraction(0))


def darboux_basis(L):
    """Symplectic Gram-Schmidt over the rationals.

    Repeatedly take the lowest-index pair ``(w_a, w_b)`` of remaining
    vectors with nonzero pairing, rescale so the pairing is 1, and project
    the remaining vectors off the plane they span.  What is left at the end
    spans the kernel.
    """
    rows = L.rows()
    size = len(rows)
    remaining = linalg.identity(size)
    pairs = []
    while True:
        hit = None
        for a in range(len(remaining)):
            for b in range(a + 1, len(remaining)):
                if _form(rows, remaining[a], remaining[b]):
                    hit = (a, b)
                    break
            if hit:
                break
        if hit is None:
            break
        a, b = hit
        u = remaining[a]
        w = remaining[b]
        lam = _form(rows, u, w)
        v = [x / lam for x in w]
        rest = [r for k, r in enumerate(remaining) if k not in hit]
        projected = []
        for r in rest:
            fv = _form(rows, r, v)
            fu = _form(rows, r, u)
            projected.append([ri - fv * ui + fu * vi for ri, ui, vi in zip(r, u, v)])
        pairs.append((u, v))
        remaining = projected
    cols = [c for pair in pairs for c in pair] + remaining
    J = tuple(tuple(cols[c][r] for c in range(size)) for r in range(size))
    return DarbouxBasis(J, len(pairs), len(remaining))


def classify(L):
    """``(n, m) = (rank/2, size - rank)``."""
    r = linalg.rank(L.rows())
    return r // 2, L.size - r


def ore_presentation(coords):
    """Structure constants ``[x_i, x_j]`` of coordinates whose commutators are scalars."""
    return commutator_matrix(coords)


@dataclass(frozen=True)
class NotFound:
    bound: int
    generator: int

    def __bool__(self):
        return False


def monomials_up_to(s, bound, start=1):
    out = []
    for d in range(start, bound + 1):
        for combo in combinations_with_replacement(range(s), d):
            alpha = [0] * s
            for i in combo:
                alpha[i] += 1
            out.append(tuple(alpha))
    return out


def _derivation_degree(d):
    if isinstance(d, Inner):
        return max(int(degree(d.generator)), 1)
    if isinstance(d, LinearCombination):
        deg = max((int(degree(c)) + 1 for c, _ in d.terms), default=1)
        if d.inner is not None:
            deg = max(deg, int(degree(d.inner)))
        return deg
    return 1


def _system(derivs, monos):
    """Columns: monomials; rows: (derivation, output monomial) pairs."""
    images = [[apply(d, Element.monomial(derivs[0].signature, b)) for b in monos] for d in derivs]
    keys = {}
    for per_d_i, per_d in enumerate(images):
        for e in per_d:
            for gamma in e.terms:
                keys.setdefault((per_d_i, gamma), len(keys))
    rows = [[Fraction(0)] * len(monos) for _ in keys]
    for i, per_d in enumerate(images):
        for col, e in enumerate(per_d):
            for gamma, c in e.terms.items():
                rows[keys[(i, gamma)]][col] = c
    return rows, keys


def find_coordinates(derivs, degree_bound=None):
    """Elements ``z_j`` (zero constant term, degree <= bound) with ``d_i(z_j) = delta_ij``.

    Returns the list of ``z_j`` or a :class:`NotFound` for the first ``j``
    with no solution in the bounded space (inconclusive beyond the bound).
    """
    derivs = list(derivs)
    sig = derivs[0].signature
    if len(derivs) != sig.s:
        raise ValueError(f"need {sig.s} derivations")
    for i in range(len(derivs)):
        for j in range(i + 1, len(derivs)):
            if not commute_on(derivs[i], derivs[j]):
                raise CommutationCheckFailed(f"derivations {i + 1} and {j + 1} do not commute")
    if degree_bound is None:
        degree_bound = sig.s * max(_derivation_degree(d) for d in derivs)
    monos = monomials_up_to(sig.s, degree_bound)
    rows, keys = _system(derivs, monos)
    zero = sig.zero_exponent()
    coords = []
    for j in range(sig.s):
        rhs = [Fraction(0)] * len(rows)
        key = (j, zero)
        if key not in keys:
            return NotFound(degree_bound, j)
        rhs[keys[key]] = Fraction(1)
        x = linalg.solve(rows, rhs)
        if x is None:
            return NotFound(degree_bound, j)
        coords.append(Element(sig, {b: c for b, c in zip(monos, x) if c}))
    return coords


def joint_kernel(derivs, degree_bound):
    """Basis of ``{a : deg a <= bound, d_i(a) = 0 for all i}`` (constants included)."""
    derivs = list(derivs)
    sig = derivs[0].signature
    monos = monomials_up_to(sig.s, degree_bound, start=0)
    rows, _ = _system(derivs, monos)
    basis = linalg.nullspace(rows, len(monos)) if rows else linalg.identity(len(monos))
    return [Element(sig, {b: c for b, c in zip(monos, v) if c}) for v in basis]


def signature_from_classification(L):
    n, m = classify(L)
    return AlgebraSignature(n, m)

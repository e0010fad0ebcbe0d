"""Random elements and automorphisms for tests, demos and benchmarks.

Automorphisms are built as compositions of elementary factors whose
inverses are obvious: symplectic shears ``p_k -> p_k + f(q_k, y)`` and
``q_k -> q_k + g(p_k, y)``, unimodular linear maps of a Weyl pair,
couplings of two pairs, translations, and triangular or linear maps of
the central variables.
"""

import random
from fractions import Fraction

from .algebra import AlgebraSignature, Element
from .automorphism import Endomorphism, compose, degree_of

SMALL = (-2, -1, 1, 2)


def _rng(rng):
    return rng if isinstance(rng, random.Random) else random.Random(rng)


def random_scalar(rng, denominators=(1, 1, 1, 2, 3)):
    return Fraction(rng.choice(SMALL), rng.choice(denominators))


def random_element(sig, rng=None, max_degree=3, max_terms=5, variables=None):
    """Random element supported on ``variables`` (default: all generators)."""
    rng = _rng(rng)
    variables = list(range(sig.s)) if variables is None else list(variables)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        alpha = [0] * sig.s
        for _ in range(rng.randint(0, max_degree)):
            if variables:
                alpha[rng.choice(variables)] += 1
        terms[tuple(alpha)] = random_scalar(rng)
    return Element(sig, terms)


def _poly(sig, rng, variables, max_degree, min_degree=1, max_terms=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(min_degree, max_degree)
        alpha = [0] * sig.s
        for _ in range(d):
            alpha[rng.choice(variables)] += 1
        terms[tuple(alpha)] = random_scalar(rng)
    return Element(sig, terms)


def _central_vars(sig):
    return list(range(2 * sig.n, sig.s))


def shear_p(sig, k, f):
    """``p_k -> p_k + f`` with ``f`` a polynomial in ``q_k`` and the central variables."""
    images = Element.generators(sig)
    images[sig.n + k] = images[sig.n + k] + f
    return Endomorphism(sig, images)


def shear_q(sig, k, g):
    """``q_k -> q_k + g`` with ``g`` a polynomial in ``p_k`` and the central variables."""
    images = Element.generators(sig)
    images[k] = images[k] + g
    return Endomorphism(sig, images)


def pair_linear(sig, k, a, b, c, d):
    """``q_k -> a q_k + b p_k``, ``p_k -> c q_k + d p_k`` with ``ad - bc = 1``."""
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    gens = Element.generators(sig)
    q, p = gens[k], gens[sig.n + k]
    gens[k] = q.scale(a) + p.scale(b)
    gens[sig.n + k] = q.scale(c) + p.scale(d)
    return Endomorphism(sig, gens)


def pair_coupling(sig, i, j, c):
    """``p_i -> p_i + c q_j`` and ``p_j -> p_j + c q_i`` for distinct pairs."""
    gens = Element.generators(sig)
    n = sig.n
    q_i, q_j = gens[i], gens[j]
    gens[n + i] = gens[n + i] + q_j.scale(c)
    gens[n + j] = gens[n + j] + q_i.scale(c)
    return Endomorphism(sig, gens)


def translation(sig, i, c):
    gens = Element.generators(sig)
    gens[i] = gens[i] + c
    return Endomorphism(sig, gens)


def central_triangular(sig, j, lam, f):
    """``y_j -> lam * y_j + f`` with ``f`` free of ``y_j``."""
    gens = Element.generators(sig)
    idx = 2 * sig.n + j
    gens[idx] = gens[idx].scale(lam) + f
    return Endomorphism(sig, gens)


def random_elementary(sig, rng=None, max_degree=3, nonlinear=False):
    """One elementary automorphism; ``nonlinear`` forces a shear of degree >= 2."""
    rng = _rng(rng)
    n, m = sig.n, sig.m
    central = _central_vars(sig)
    kinds = []
    if n:
        kinds += ["shear_p", "shear_q", "shear_p", "shear_q"]
        if not nonlinear:
            kinds += ["linear", "translation"]
    if n > 1 and not nonlinear:
        kinds.append("coupling")
    if m > 1 or (m and not nonlinear):
        kinds += ["central", "central"]
    if m and not nonlinear:
        kinds.append("translation")
    low = 2 if nonlinear else 1
    kind = rng.choice(kinds)
    if kind in ("shear_p", "shear_q"):
        k = rng.randrange(n)
        own = k if kind == "shear_p" else n + k
        var = [own] + (central if rng.random() < 0.5 else [])
        f = _poly(sig, rng, var, max_degree, min_degree=low)
        return (shear_p if kind == "shear_p" else shear_q)(sig, k, f)
    if kind == "linear":
        k = rng.randrange(n)
        b = rng.choice((-1, 0, 1))
        c = rng.choice((-1, 0, 1))
        a = 1
        d = 1 + b * c
        return pair_linear(sig, k, a, b, c, d)
    if kind == "coupling":
        i, j = rng.sample(range(n), 2)
        return pair_coupling(sig, i, j, random_scalar(rng))
    if kind == "translation":
        return translation(sig, rng.randrange(sig.s), random_scalar(rng))
    j = rng.randrange(m)
    others = [v for v in central if v != 2 * n + j]
    f = _poly(sig, rng, others, max_degree, min_degree=low) if others else Element.zero(sig)
    return central_triangular(sig, j, rng.choice((1, -1, 2, Fraction(1, 2))), f)


def random_automorphism(sig, rng=None, factors=4, max_degree=3, factor_degree=2, tries=200):
    """Composition of at most ``factors`` elementary automorphisms with degree <= max_degree."""
    rng = _rng(rng)
    can_bend = sig.n > 0 or sig.m > 1
    for _ in range(tries):
        sigma = Endomorphism.identity(sig)
        for idx in range(rng.randint(1, factors)):
            bend = can_bend and idx == 0
            sigma = compose(sigma, random_elementary(sig, rng, factor_degree, nonlinear=bend))
        if degree_of(sigma) <= max_degree:
            return sigma
    raise RuntimeError("could not meet the degree limit")


def random_signature(rng=None, max_s=4):
    rng = _rng(rng)
    while True:
        n = rng.randint(0, max_s // 2)
        m = rng.randint(0, max_s - 2 * n)
        if 2 * n + m >= 1:
            return AlgebraSignature(n, m)


def random_non_automorphism(sig, rng=None):
    """An endomorphism whose central Jacobian determinant is not a nonzero scalar.

    One central variable is sent to a square or a higher power plus noise,
    or collapsed onto another; the rest is a random automorphism.
    """
    rng = _rng(rng)
    if not sig.m:
        raise ValueError("needs a central variable")
    base = random_automorphism(sig, rng, factors=2, max_degree=2)
    gens = Element.generators(sig)
    j = 2 * sig.n + rng.randrange(sig.m)
    y = gens[j]
    choice = rng.randrange(3)
    if choice == 0:
        gens[j] = y * y
    elif choice == 1:
        gens[j] = y + y * y.scale(random_scalar(rng))
    else:
        others = [v for v in _central_vars(sig) if v != j]
        gens[j] = gens[others[0]] if others else Element.zero(sig) + random_scalar(rng)
    bad = Endomorphism(sig, gens)
    return compose(base, bad)


def corpus(count=200, seed=0, max_s=4, max_degree=3, factor_degree=3):
    """Deterministic list of ``count`` random automorphisms."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        sig = random_signature(rng, max_s)
        out.append(random_automorphism(sig, rng, factors=4, max_degree=max_degree, factor_degree=factor_degree))
    return out


def random_series_automorphism(m, order, rng=None, extra_terms=3):
    """Invertible linear part (lower times upper triangular) plus random terms of degree >= 2."""
    from .series import SeriesEndomorphism, TruncatedSeries

    rng = _rng(rng)
    low = [[Fraction(int(i == j)) if i <= j else random_scalar(rng) * rng.randint(0, 1) for i in range(m)] for j in range(m)]
    up = [[random_scalar(rng) if i == j else (random_scalar(rng) * rng.randint(0, 1) if i > j else Fraction(0)) for i in range(m)] for j in range(m)]
    lin = [[sum(low[i][k] * up[k][j] for k in range(m)) for j in range(m)] for i in range(m)]
    images = []
    for i in range(m):
        terms = {}
        for j in range(m):
            if lin[i][j]:
                e = [0] * m
                e[j] = 1
                terms[tuple(e)] = lin[i][j]
        for _ in range(rng.randint(0, extra_terms) if order >= 2 else 0):
            e = [0] * m
            for _ in range(rng.randint(2, order)):
                e[rng.randrange(m)] += 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + random_scalar(rng)
        images.append(TruncatedSeries(m, order, terms))
    return SeriesEndomorphism(images)


def random_antisymmetric(rng=None, size=4, kernel=0):
    """Random antisymmetric rational ``size x size`` matrix of rank ``<= size - kernel``."""
    rng = _rng(rng)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = Fraction(rng.randint(-2, 2), rng.choice((1, 3)))
            rows[i][j], rows[j][i] = v, -v
    if kernel:
        # B L B^T with the last rows of B dependent on the first ones
        keep = size - kernel
        B = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
        for k in range(keep, size):
            coefs = [Fraction(rng.randint(-3, 3), rng.choice((1, 2))) for _ in range(keep)]
            B[k] = [sum(c * B[t][j] for t, c in enumerate(coefs)) for j in range(size)]
        LBt = [[sum(rows[i][t] * B[j][t] for t in range(size)) for j in range(size)] for i in range(size)]
        rows = [[sum(B[i][t] * LBt[t][j] for t in range(size)) for j in range(size)] for i in range(size)]
    return rows

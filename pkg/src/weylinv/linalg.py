"""Small exact linear algebra over the rationals (lists of Fractions)."""

from fractions import Fraction


def to_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def identity(size):
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def rref(rows):
    """Reduced row echelon form; returns ``(matrix, pivot columns)``."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(rows):
    return len(rref(rows)[1])


def solve(rows, rhs):
    """One solution of ``rows @ x = rhs`` (free variables set to 0), or ``None``."""
    if not rows:
        return None if any(rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def nullspace(rows, ncols=None):
    """Basis of ``{x : rows @ x = 0}``."""
    if not rows:
        return identity(ncols or 0)
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def is_antisymmetric(a):
    size = len(a)
    return all(a[i][j] == -a[j][i] for i in range(size) for j in range(size))

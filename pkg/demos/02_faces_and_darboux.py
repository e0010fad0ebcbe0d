"""Faces tell automorphisms apart; Darboux bases recognise A_n (x) P_m."""

# %%
from fractions import Fraction

from weylinv import AlgebraSignature, Element
from weylinv.automorphism import Endomorphism
from weylinv.faces import faces_distinguish, left_face, right_face
from weylinv.structure import CommutatorMatrix, classify, commutator_matrix, darboux_basis

a1 = AlgebraSignature(1, 0)
q, p = Element.generators(a1)

# modulo p*A a monomial loses every term that can start with p
a = q ** 2 * p + p * q
print("a =", a)
print("r_p(a) =", right_face(1, a), "  l_p(a) =", left_face(1, a))

# %%
ident = Endomorphism.identity(a1)
shear = Endomorphism(a1, [q, p + q ** 2])
w = faces_distinguish(ident, shear)
print(f"face {a1.name(w.face)} of the image of {w.probe}: {w.left_value} vs {w.right_value}")
print(faces_distinguish(shear, shear))

# %%
# four elements of A_2 whose commutators are scalars
sig = AlgebraSignature(2, 0)
q1, q2, p1, p2 = Element.generators(sig)
gens = [q1 + q2, p1, q2, p2 - p1]
L = commutator_matrix(gens)
for row in L.rows():
    print(" ".join(f"{c!s:>3}" for c in row))
print("type (n, m) =", classify(L))

# %%
half = Fraction(1, 2)
L = CommutatorMatrix([[0, half, 0], [-half, 0, 0], [0, 0, 0]])
basis = darboux_basis(L)
print("n =", basis.n, " m =", basis.m)
for row in basis.change_of_basis:
    print(" ".join(str(c) for c in row))

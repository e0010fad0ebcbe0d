"""Inverting an automorphism of A_1 (x) P_1 step by step."""

# %%
from weylinv import AlgebraSignature, Element
from weylinv.automorphism import (
    Endomorphism,
    certify_automorphism,
    compose,
    degree_bound,
    degree_of,
    dual_coefficients,
    dual_derivations,
    invert,
)
from weylinv.derivations import apply
from weylinv.lang import render

sig = AlgebraSignature(1, 1)
q, p, y = Element.generators(sig)

# a shear in the Weyl pair, then a central twist that drags q along
sigma = Endomorphism(sig, [q + y ** 2, p + q ** 2, y])
print(render(sigma))

# %%
# the dual derivations satisfy d'_i(sigma(x_j)) = delta_ij
duals = dual_derivations(sigma)
for i, d in enumerate(duals.derivations):
    print(sig.name(i), [str(apply(d, x)) for x in sigma.images])

# %%
# each coordinate of the inverse is read off from its dual Taylor coefficients
for x in Element.generators(sig):
    coeffs = dual_coefficients(sigma, x, duals=duals)
    print(x, {alpha: str(c) for alpha, c in coeffs.items()})

# %%
tau = invert(sigma)
print(render(tau, name="sigma_inv"))
print("round trip:", compose(sigma, tau) == Endomorphism.identity(sig))
print("degree", degree_of(sigma), "inverse degree", degree_of(tau), "bound", degree_bound(sigma))

# %%
# a non-automorphism is rejected before any inversion is tried
bad = Endomorphism(sig, [q, p, y ** 2])
print(certify_automorphism(bad))

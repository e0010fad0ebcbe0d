"""Inversion formula toolkit for A_n (x) P_m."""

from .algebra import AlgebraSignature, Element, add, commutator, constant_term, degree, mul
from .automorphism import (
    Certified,
    DualDerivations,
    Endomorphism,
    NotCertified,
    apply_endo,
    central_jacobian,
    central_jacobian_det,
    certify_automorphism,
    compose,
    degree_bound,
    degree_of,
    dual_coefficients,
    dual_degree,
    dual_derivations,
    invert,
    phi_sigma,
    taylor_expand,
)
from .derivations import (
    CoordinatePartial,
    Inner,
    LinearCombination,
    derivative_tower,
    full_projection,
    integrate,
    iterate,
    nilpotency_index,
    partial,
    phi_map,
)
from .errors import *  # noqa: F401,F403
from .faces import Equal, FaceImage, Witness, face_lift, faces_distinguish, left_face, quotient_signature, right_face
from .lang import SourceDocument, parse, parse_expression, parse_series, render
from .series import (
    SeriesEndomorphism,
    TruncatedSeries,
    series_dual_derivations,
    series_invert,
    series_phi_sigma,
    series_reciprocal,
)
from .structure import (
    CommutatorMatrix,
    DarbouxBasis,
    NotFound,
    canonical_form,
    classify,
    commutator_matrix,
    darboux_basis,
    find_coordinates,
    joint_kernel,
)

__version__ = "0.1.0"

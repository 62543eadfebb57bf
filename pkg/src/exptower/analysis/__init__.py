"""Fixed points, critical constants, contraction certificates and the small-base atlas."""

from .atlas import Atlas, Membership, Piece, atlas_build, atlas_membership, max_gap
from .certificates import (
    CertificatePow,
    CertificateQuad,
    Constants,
    GridSpec,
    QuadScan,
    certify_pow,
    certify_quad,
    constants_AB,
    f_pow,
    quad_a,
    quad_F,
    quad_lambda,
    scan_quad_extended,
    solve_quad_param,
)
from .fixed_points import (
    MinusFixedPoint,
    PlusFixedPoints,
    TwoCycle,
    float_fixed_point,
    minus_fixed_point,
    plus_fixed_points,
    two_cycle,
)
from .measure import ContractionCheck, PowPhi, QuadPhi, contraction_check, phi_measure
from .roots import bisect, bracket_root
from .suitability import Suitability, SuitabilityReport, suitability_report

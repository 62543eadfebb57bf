"""Combine the regime boundaries and the two certificates into one verdict."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ..xreal import check_base
from .certificates import CertificatePow, CertificateQuad, certify_pow, certify_quad
from .fixed_points import INV_E


class Suitability(str, enum.Enum):
    SUITABLE_CERTIFIED = "SuitableCertified"
    NOT_SUITABLE_SMALL = "NotSuitableSmall"
    NOT_SUITABLE_LARGE = "NotSuitableLarge"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SuitabilityReport:
    a: float
    verdict: Suitability
    reason: str
    quad: CertificateQuad | None = None
    pow: CertificatePow | None = None


def suitability_report(a: float) -> SuitabilityReport:
    a = check_base(a)
    if a <= INV_E:
        return SuitabilityReport(a, Suitability.NOT_SUITABLE_SMALL,
                                 "a <= 1/e: every word converges but the representable set is nowhere dense")
    if a > math.e:
        return SuitabilityReport(a, Suitability.NOT_SUITABLE_LARGE,
                                 "a > e: the all-minus word diverges on a two-cycle")
    quad, pw = certify_quad(a), certify_pow(a)
    if quad.verdict or pw.verdict:
        names = [n for n, c in (("quad", quad), ("pow", pw)) if c.verdict]
        return SuitabilityReport(a, Suitability.SUITABLE_CERTIFIED,
                                 "certified by " + " and ".join(names), quad, pw)
    return SuitabilityReport(a, Suitability.UNKNOWN,
                             "1/e < a < A: neither weight family certifies this base", quad, pw)

"""Floating-point evaluation of Airy basis values and shifted solutions.

The two standard solutions of y'' = x*y are Ai (decaying for x -> +inf)
and Bi (growing). A solution of y'' = (x + s)*y with rational shift s is
a linear combination c1*Ai(x+s) + c2*Bi(x+s); `SolutionSpec` carries the
(c1, c2, s) triple and `eval_solution` produces (y, y') values.

Accuracy contract
-----------------
Basis values come from scipy's AMOS-backed evaluator. Measured against an
extended-precision series reference, the relative error is below 1e-12
for |x| <= 8 and below 1e-10 for 8 < |x| <= 50, with the usual caveat for
oscillatory functions: within a few ulps of a zero of one component the
error is bounded relative to the local modulus sqrt(Ai^2 + Bi^2) rather
than the vanishing component itself. The Wronskian Ai*Bi' - Ai'*Bi stays
within 1e-12 of 1/pi across the working range.

The hard numeric domain is |x| <= 50 (|x + shift| <= 50 for solutions).
Outside it Bi would eventually overflow double precision, so evaluation
raises `OverflowDomain` instead of propagating infinities.

All functions here are pure; concurrent use is unrestricted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import airy as _scipy_airy

from .errors import NonFiniteInput, OverflowDomain, ShiftMismatch

#: Hard bound on |x| (basis) and |x + shift| (solutions).
NUMERIC_DOMAIN = 50.0


@dataclass(frozen=True)
class BasisValues:
    """The four Airy basis values at one point."""

    ai: float
    ai_prime: float
    bi: float
    bi_prime: float


@dataclass(frozen=True)
class SolutionSpec:
    """A solution y(x) = c1*Ai(x+shift) + c2*Bi(x+shift) of y'' = (x+shift)*y.

    The shift is the eigenvalue of the solution under d^2/dx^2 - x and is
    kept exact (a Fraction) because the symbolic layer divides by shift
    differences.
    """

    c1: float
    c2: float
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        if self.c1 == 0.0 and self.c2 == 0.0:
            raise ValueError("solution coefficients (c1, c2) must not both be zero")
        if not (math.isfinite(self.c1) and math.isfinite(self.c2)):
            raise ValueError("solution coefficients must be finite")
        if not isinstance(self.shift, Fraction):
            object.__setattr__(self, "shift", Fraction(self.shift))

    @property
    def is_pure_ai(self) -> bool:
        """True when the growing Bi component is absent (c2 == 0)."""
        return self.c2 == 0.0


def eval_airy_basis(x: float) -> BasisValues:
    """Evaluate Ai, Ai', Bi, Bi' at x.

    Raises NonFiniteInput for NaN/inf and OverflowDomain for |x| > 50.
    """
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteInput(f"airy basis requested at non-finite x = {x!r}")
    if abs(x) > NUMERIC_DOMAIN:
        raise OverflowDomain(
            f"x = {x} outside the supported domain |x| <= {NUMERIC_DOMAIN:g}"
        )
    ai, aip, bi, bip = _scipy_airy(x)
    return BasisValues(float(ai), float(aip), float(bi), float(bip))


def eval_solution(spec: SolutionSpec, x: float) -> tuple[float, float]:
    """Return (y(x), y'(x)) for the solution described by spec.

    The evaluation point after shifting, x + spec.shift, must lie in the
    numeric domain of eval_airy_basis.
    """
    basis = eval_airy_basis(float(x) + float(spec.shift))
    y = spec.c1 * basis.ai + spec.c2 * basis.bi
    yp = spec.c1 * basis.ai_prime + spec.c2 * basis.bi_prime
    return y, yp


def wronskian_numeric(spec1: SolutionSpec, spec2: SolutionSpec, x: float) -> float:
    """Wronskian y1*y2' - y1'*y2 of two solutions sharing one shift.

    For distinct shifts the Wronskian is x-dependent and the call is
    rejected with ShiftMismatch. For equal shifts it is constant in x;
    for (Ai, Bi) it equals 1/pi.
    """
    if spec1.shift != spec2.shift:
        raise ShiftMismatch(
            f"wronskian needs equal shifts, got {spec1.shift} and {spec2.shift}"
        )
    y1, y1p = eval_solution(spec1, x)
    y2, y2p = eval_solution(spec2, x)
    return y1 * y2p - y1p * y2

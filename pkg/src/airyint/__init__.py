"""airyint: exact antiderivatives of polynomial-weighted Airy products.

The core objects are `SolutionSpec` (a solution of y'' = (x + shift)*y),
`RationalPolynomial` (exact rational coefficients) and `BilinearForm`
(the closed-form carrier P1*AB + P2*AB' + P3*A'B + P4*A'B'). The
`reduction` module produces antiderivative forms for all four derivative
patterns; `quadrature` provides the independent numeric oracle; `api`,
`cli` and `service` expose the operations to users.
"""

from .airy import (
    BasisValues,
    SolutionSpec,
    eval_airy_basis,
    eval_solution,
    wronskian_numeric,
)
from .errors import (
    AiryIntError,
    DivergentIntegrand,
    EqualShifts,
    NonConvergence,
    NonFiniteInput,
    NonFiniteIntegrand,
    OverflowDomain,
    ShiftMismatch,
)
from .quadrature import QuadratureResult, integrate_adaptive, integrate_improper
from .reduction import (
    HvtOperator,
    Pattern,
    ReductionRequest,
    antider_ab_distinct,
    antider_ab_equal,
    antider_abp,
    antider_apb,
    antider_apbp,
    antider_poly,
    differentiate_back_check,
    verify_hvt,
)
from .symbolic import (
    BilinearForm,
    Rational,
    RationalPolynomial,
    form_eval,
    parse_rational,
    wronskian_form,
)

__version__ = "0.1.0"

__all__ = [
    "AiryIntError",
    "BasisValues",
    "BilinearForm",
    "DivergentIntegrand",
    "EqualShifts",
    "HvtOperator",
    "NonConvergence",
    "NonFiniteInput",
    "NonFiniteIntegrand",
    "OverflowDomain",
    "Pattern",
    "QuadratureResult",
    "Rational",
    "RationalPolynomial",
    "ReductionRequest",
    "ShiftMismatch",
    "SolutionSpec",
    "antider_ab_distinct",
    "antider_ab_equal",
    "antider_abp",
    "antider_apb",
    "antider_apbp",
    "antider_poly",
    "differentiate_back_check",
    "eval_airy_basis",
    "eval_solution",
    "form_eval",
    "integrate_adaptive",
    "integrate_improper",
    "parse_rational",
    "verify_hvt",
    "wronskian_form",
    "wronskian_numeric",
]

"""Request parsing, command handlers and canonical JSON rendering.

The CLI and the HTTP service are both thin clients of the three handlers
here (`run_indefinite`, `run_definite`, `run_check`), so the two surfaces
cannot drift apart. Handlers take parsed domain objects, return plain
dicts shaped exactly like the documented JSON schemas, and raise package
errors for the callers to map onto exit codes or HTTP statuses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .airy import SolutionSpec, eval_solution, wronskian_numeric
from .errors import DivergentIntegrand
from .quadrature import integrate_adaptive, integrate_improper
from .reduction import (
    HvtOperator,
    Pattern,
    ReductionRequest,
    antider_poly,
    differentiate_back_check,
    verify_hvt,
)
from .symbolic import BilinearForm, RationalPolynomial, form_eval, parse_rational

DEFAULT_TOL = 1e-9

CHECK_SUITES = ("hvt", "roundtrip", "wronskian")


# ---------------------------------------------------------------------------
# parsing helpers shared by the CLI flags and the service request models


def parse_poly(text: str) -> RationalPolynomial:
    """Parse comma-separated exact rationals, ascending powers:
    '0,1,1/2' is x + x^2/2."""
    parts = [p.strip() for p in str(text).split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"invalid polynomial {text!r}")
    return RationalPolynomial(parse_rational(p) for p in parts)


def parse_solution(text: str, shift: Fraction) -> SolutionSpec:
    """Parse 'c1,c2' amplitudes (floats) into a SolutionSpec with the
    given exact shift."""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 2:
        raise ValueError(f"solution must be 'c1,c2', got {text!r}")
    try:
        c1, c2 = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ValueError(f"invalid solution coefficients {text!r}") from exc
    try:
        return SolutionSpec(c1, c2, shift)
    except ValueError as exc:
        raise ValueError(str(exc)) from exc


def parse_upper_limit(text: str) -> float:
    """Parse the upper integration limit; 'inf' means +infinity."""
    cleaned = str(text).strip().lower()
    if cleaned in ("inf", "+inf", "infinity"):
        return math.inf
    try:
        return float(cleaned)
    except ValueError as exc:
        raise ValueError(f"invalid upper limit {text!r}") from exc


@dataclass(frozen=True)
class IntegralQuery:
    """One integration request: weight, pattern, solutions and optional
    interval (upper may be +inf). No interval means indefinite mode."""

    f: RationalPolynomial
    pattern: Pattern
    solution1: SolutionSpec
    solution2: SolutionSpec
    interval: Optional[tuple[float, float]] = None


def build_query(
    n: Optional[int],
    poly: Optional[str],
    pattern: str,
    a: str,
    b: str,
    sol1: str = "1,0",
    sol2: str = "1,0",
    lower: Optional[float] = None,
    upper: Optional[str] = None,
) -> IntegralQuery:
    """Assemble an IntegralQuery from raw flag/field values.

    Exactly one of n (monomial power) and poly must be given; the shifts
    are exact rationals and attach to the two solutions.
    """
    if (n is None) == (poly is None):
        raise ValueError("exactly one of 'n' and 'poly' must be given")
    if n is not None:
        if n < 0:
            raise ValueError("n must be nonnegative")
        f = RationalPolynomial.monomial(n)
    else:
        f = parse_poly(poly)
    shift_a, shift_b = parse_rational(a), parse_rational(b)
    spec1 = parse_solution(sol1, shift_a)
    spec2 = parse_solution(sol2, shift_b)
    interval = None
    if (lower is None) != (upper is None):
        raise ValueError("an interval needs both endpoints")
    if lower is not None:
        hi = parse_upper_limit(upper)
        if not math.isfinite(lower):
            raise ValueError("lower limit must be finite")
        if hi < lower:
            raise ValueError(f"reversed interval [{lower}, {hi}]")
        interval = (float(lower), hi)
    return IntegralQuery(f, Pattern.parse(pattern), spec1, spec2, interval)


# ---------------------------------------------------------------------------
# handlers


def closed_form(query: IntegralQuery) -> BilinearForm:
    request = ReductionRequest(
        f=query.f,
        pattern=query.pattern,
        shift_a=query.solution1.shift,
        shift_b=query.solution2.shift,
    )
    return antider_poly(request)


def run_indefinite(query: IntegralQuery) -> dict:
    """Closed-form payload: {'shift_a', 'shift_b', 'form': {slot: [...]}}."""
    if query.interval is not None:
        raise ValueError("indefinite mode takes no interval")
    form = closed_form(query)
    return {
        "shift_a": str(form.shift_a),
        "shift_b": str(form.shift_b),
        "form": form.coefficient_strings(),
    }


def pattern_integrand(query: IntegralQuery) -> Callable[[float], float]:
    """Numeric integrand f(x) * (pattern product) for the quadrature oracle."""
    f = query.f
    spec1, spec2 = query.solution1, query.solution2
    index = {
        Pattern.AB: (0, 0),
        Pattern.ABP: (0, 1),
        Pattern.APB: (1, 0),
        Pattern.APBP: (1, 1),
    }[query.pattern]

    def integrand(x: float) -> float:
        v1 = eval_solution(spec1, x)
        v2 = eval_solution(spec2, x)
        return f(float(x)) * v1[index[0]] * v2[index[1]]

    return integrand


def run_definite(query: IntegralQuery, check: bool = False, tol: float = DEFAULT_TOL) -> dict:
    """Definite value from the closed form evaluated at the endpoints.

    An infinite upper limit contributes 0 and requires both solutions to
    be pure Ai (DivergentIntegrand otherwise). With check=True the value
    is re-computed by adaptive quadrature and 'crosscheck'/'abs_diff'
    fields are added; deciding whether abs_diff breaches tol is left to
    the caller.
    """
    if query.interval is None:
        raise ValueError("definite mode needs an interval")
    lo, hi = query.interval
    form = closed_form(query)
    improper = math.isinf(hi)
    if improper:
        for spec in (query.solution1, query.solution2):
            if not spec.is_pure_ai:
                raise DivergentIntegrand(
                    "integral to +infinity diverges unless both solutions"
                    " are pure Ai (c2 = 0)"
                )
        upper_value = 0.0
    else:
        upper_value = form_eval(form, query.solution1, query.solution2, hi)
    value = upper_value - form_eval(form, query.solution1, query.solution2, lo)
    payload = {"value": value}
    if check:
        integrand = pattern_integrand(query)
        # an order under the comparison tolerance, floored at what double
        # precision quadrature can actually deliver
        quad_tol = min(1e-10, max(tol / 10.0, 1e-12))
        if improper:
            witness = (query.solution1, query.solution2)
            result = integrate_improper(integrand, lo, quad_tol, witness)
        else:
            result = integrate_adaptive(integrand, lo, hi, quad_tol)
        payload["crosscheck"] = result.value
        payload["abs_diff"] = abs(value - result.value)
    return payload


# ---------------------------------------------------------------------------
# verification suites


def _case(name: str, residual: float, tolerance: float) -> dict:
    return {
        "name": name,
        "residual": residual,
        "tolerance": tolerance,
        "passed": residual <= tolerance,
    }


ROUNDTRIP_EQUAL_SHIFTS = (Fraction(0), Fraction(1), Fraction(-3, 2))
ROUNDTRIP_DISTINCT_SHIFTS = (
    (Fraction(0), Fraction(1)),
    (Fraction(-2), Fraction(3, 2)),
    (Fraction(1, 3), Fraction(-1, 3)),
)


def _roundtrip_suite(max_n: int) -> list[dict]:
    shift_pairs = [(s, s) for s in ROUNDTRIP_EQUAL_SHIFTS] + list(
        ROUNDTRIP_DISTINCT_SHIFTS
    )
    cases = []
    for pattern in Pattern:
        for a, b in shift_pairs:
            failures = 0
            for n in range(max_n + 1):
                request = ReductionRequest(
                    RationalPolynomial.monomial(n), pattern, a, b
                )
                form = antider_poly(request)
                if not differentiate_back_check(
                    form, RationalPolynomial.monomial(n), pattern
                ):
                    failures += 1
            cases.append(
                _case(
                    f"{pattern.value} shifts=({a},{b}) n=0..{max_n}",
                    float(failures),
                    0.0,
                )
            )
    return cases


WRONSKIAN_GRID = tuple(-10.0 + 15.0 * i / 150.0 for i in range(151))
WRONSKIAN_TOL = 1e-12
INV_PI = 1.0 / math.pi


def _wronskian_suite() -> list[dict]:
    cases = []
    for shift in ROUNDTRIP_EQUAL_SHIFTS:
        ai = SolutionSpec(1.0, 0.0, shift)
        bi = SolutionSpec(0.0, 1.0, shift)
        deviation = max(
            abs(wronskian_numeric(ai, bi, x) - INV_PI) for x in WRONSKIAN_GRID
        )
        cases.append(
            _case(f"W(Ai,Bi) shift={shift} grid[-10,5]x151", deviation, WRONSKIAN_TOL)
        )
    ai = SolutionSpec(1.0, 0.0, Fraction(0))
    double_ai = SolutionSpec(2.0, 0.0, Fraction(0))
    worst_self = max(abs(wronskian_numeric(ai, ai, x)) for x in WRONSKIAN_GRID)
    worst_dep = max(abs(wronskian_numeric(ai, double_ai, x)) for x in WRONSKIAN_GRID)
    cases.append(_case("W(y,y) = 0", worst_self, WRONSKIAN_TOL))
    cases.append(_case("W(Ai,2Ai) = 0", worst_dep, WRONSKIAN_TOL))
    return cases


HVT_TOL = 1e-8

HVT_OPERATORS = (
    HvtOperator.multiply_by(RationalPolynomial([1])),
    HvtOperator.multiply_by(RationalPolynomial.monomial(2)),
    HvtOperator.multiply_by(RationalPolynomial.monomial(3)),
    HvtOperator.poly_times_d(RationalPolynomial.monomial(1)),
    HvtOperator.poly_times_d(RationalPolynomial.monomial(2)),
)


def _hvt_suite(interval: tuple[float, float]) -> list[dict]:
    spec_a = SolutionSpec(1.0, 0.0, Fraction(0))
    spec_b = SolutionSpec(1.0, 0.0, Fraction(1))
    cases = []
    for operator in HVT_OPERATORS:
        residual = verify_hvt(operator, spec_a, spec_b, interval, HVT_TOL)
        cases.append(_case(f"O = {operator}", residual, HVT_TOL))
    return cases


def run_check(
    suite: str,
    max_n: int = 10,
    interval: tuple[float, float] = (-3.0, 2.0),
) -> dict:
    """Run one named verification suite and report per-case residuals."""
    if suite == "roundtrip":
        cases = _roundtrip_suite(max_n)
    elif suite == "wronskian":
        cases = _wronskian_suite()
    elif suite == "hvt":
        cases = _hvt_suite(interval)
    else:
        raise ValueError(f"unknown suite {suite!r}; expected one of {CHECK_SUITES}")
    return {
        "suite": suite,
        "passed": all(c["passed"] for c in cases),
        "cases": cases,
    }


# ---------------------------------------------------------------------------
# canonical JSON rendering (decimal floats, 17 significant digits)


def render_json(obj) -> str:
    """Serialize a payload deterministically.

    Floats are written with '%.17g' so parsing and re-rendering the text
    reproduces it byte for byte; dict key order is preserved.
    """
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite float {obj!r} in JSON payload")
        return format(obj, ".17g")
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return f'"{obj}"'
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(render_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return (
            "{"
            + ", ".join(f"{render_json(str(k))}: {render_json(v)}" for k, v in obj.items())
            + "}"
        )
    raise TypeError(f"cannot render {type(obj).__name__} as JSON")

"""Closed-form antiderivatives of x^n times products of Airy-type solutions.

Every operation here returns a `BilinearForm` G whose exact derivative
(`G.differentiate()`) reproduces the requested integrand, so correctness
is checkable with zero tolerance via `differentiate_back_check`. The
machinery rests on integrating commutator identities of the operator
L = d^2/dx^2 - x between eigenfunctions A (eigenvalue a) and B
(eigenvalue b), which yields, for weight f with antiderivative F:

  int(A f B) + 2 int(A x f' B) - (1/2) int(A f''' B) + (a+b) int(A f' B)
      - ((a-b)^2/2) int(A F B)
  = W(A, f B') - (1/2) W(A, f' B) + ((a-b)/2) W(A, F B)

with W(u, v) = u v' - u' v. Solving for int(A F B) with F = x^n gives the
distinct-shift recurrence (`antider_ab_distinct`); setting a = b = 0 and
f = x^n gives the closed equal-shift recurrence (`antider_ab_equal`).
Equal nonzero shifts reduce to the zero-shift case by the exact variable
change u = x + shift. The remaining integrand families connect back to
the AB family:

  int(x^n A B')  via  int(A g' B') = ((a-b)/2) int(A g B)
                      - (1/2) int(A g'' B) + (1/2) W(A, g B),  g = x^(n+1)/(n+1)
  int(x^n A' B)  =    swap of int(x^n A B') with shifts exchanged
  int(f A' B')   =    f A'B - int(f' A'B) - int((x+a) f AB)

All outputs are exact (Fraction arithmetic); numeric conditioning of a
produced form degrades like (a-b)^-2 per recursion level as the two
shifts approach each other, and no automatic regime switching is done.
Operations are pure; the only cache is keyed on immutable values.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

from .airy import SolutionSpec, eval_solution
from .errors import EqualShifts
from .quadrature import integrate_adaptive
from .symbolic import (
    BilinearForm,
    RationalPolynomial,
    Scalar,
    form_eval,
    wronskian_form,
)


class Pattern(Enum):
    """Which derivative pattern the integrand carries."""

    AB = "AB"
    ABP = "ABp"
    APB = "ApB"
    APBP = "ApBp"

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(
            f"unknown pattern {text!r}; expected one of "
            + ", ".join(m.value for m in cls)
        )


@dataclass(frozen=True)
class ReductionRequest:
    """Weight polynomial, derivative pattern and the two shifts."""

    f: RationalPolynomial
    pattern: Pattern
    shift_a: Fraction
    shift_b: Fraction

    def __post_init__(self):
        if not isinstance(self.shift_a, Fraction):
            object.__setattr__(self, "shift_a", Fraction(self.shift_a))
        if not isinstance(self.shift_b, Fraction):
            object.__setattr__(self, "shift_b", Fraction(self.shift_b))


@functools.lru_cache(maxsize=None)
def _zero_shift_monomial(n: int) -> BilinearForm:
    """Antiderivative of x^n*A*B for both shifts zero.

    Recurrence (closed for n <= 2 since the n(n-1)(n-2) factor
    vanishes):

      int(x^n AB) = x^(n+1) AB / (2n+1)
                    - n(n-1) x^(n-2) AB / (2(2n+1))
                    + n x^(n-1) (AB' + A'B) / (2(2n+1))
                    - x^n A'B' / (2n+1)
                    + n(n-1)(n-2) / (2(2n+1)) * int(x^(n-3) AB)
    """
    lead = Fraction(1, 2 * n + 1)
    mono = RationalPolynomial.monomial
    form = BilinearForm(
        Fraction(0),
        Fraction(0),
        p_ab=mono(n + 1, lead),
        p_apbp=mono(n, -lead),
    )
    if n >= 1:
        half_lead = Fraction(n, 2 * (2 * n + 1))
        form = form + BilinearForm(
            Fraction(0),
            Fraction(0),
            p_abp=mono(n - 1, half_lead),
            p_apb=mono(n - 1, half_lead),
        )
    if n >= 2:
        form = form + BilinearForm(
            Fraction(0),
            Fraction(0),
            p_ab=mono(n - 2, -Fraction(n * (n - 1), 2 * (2 * n + 1))),
        )
    if n >= 3:
        form = form + _zero_shift_monomial(n - 3) * Fraction(
            n * (n - 1) * (n - 2), 2 * (2 * n + 1)
        )
    return form


def _binomial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def antider_ab_equal(n: int, shift: Scalar) -> BilinearForm:
    """Exact antiderivative of x^n*A*B when both solutions share one shift.

    The variable change u = x + shift turns the problem into the
    zero-shift one: x^n = (u - shift)^n is expanded binomially, each
    power of u is integrated by the zero-shift recurrence, and the
    resulting coefficient polynomials are composed back with (x + shift).
    Both steps are exact in rational arithmetic.
    """
    if n < 0:
        raise ValueError("power n must be nonnegative")
    s = Fraction(shift)
    if s == 0:
        return _zero_shift_monomial(n)
    accum = BilinearForm.zero(0, 0)
    for k in range(n + 1):
        coeff = Fraction(_binomial(n, k)) * (-s) ** (n - k)
        if coeff != 0:
            accum = accum + _zero_shift_monomial(k) * coeff
    return accum.shift_argument(s).with_shifts(s, s)


def antider_ab_distinct(n: int, shift_a: Scalar, shift_b: Scalar) -> BilinearForm:
    """Exact antiderivative of x^n*A*B for distinct shifts a != b.

    Base case n = 0 (the x-terms of A''B - AB'' cancel, leaving
    (a-b)*AB):

      int(A B) = (A'B - AB') / (a - b)

    For n >= 1 the master identity with F = x^n, f = n x^(n-1) is solved
    for int(A F B); the integral terms recurse on n-1, n-2 and n-4 and
    the boundary terms are Wronskian forms, all under the prefactor
    2/(a-b)^2. Results are memoized per call (keyed on n) since the
    recursion revisits lower powers.
    """
    if n < 0:
        raise ValueError("power n must be nonnegative")
    a, b = Fraction(shift_a), Fraction(shift_b)
    if a == b:
        raise EqualShifts(
            f"shifts are both {a}; use antider_ab_equal for equal shifts"
        )
    return _distinct_recursion(n, a, b, {})


def _distinct_recursion(
    n: int, a: Fraction, b: Fraction, memo: dict[int, BilinearForm]
) -> BilinearForm:
    known = memo.get(n)
    if known is not None:
        return known
    mono = RationalPolynomial.monomial
    if n == 0:
        inv = 1 / (a - b)
        form = BilinearForm(a, b, p_abp=mono(0, -inv), p_apb=mono(0, inv))
    else:
        accum = BilinearForm.zero(a, b)
        c_fm1 = Fraction(n * (2 * n - 1))  # int(A f B) + 2 int(A x f' B)
        if c_fm1 != 0:
            accum = accum + _distinct_recursion(n - 1, a, b, memo) * c_fm1
        c_fm2 = (a + b) * n * (n - 1)  # (a+b) int(A f' B)
        if c_fm2 != 0:
            accum = accum + _distinct_recursion(n - 2, a, b, memo) * c_fm2
        c_fm4 = -Fraction(n * (n - 1) * (n - 2) * (n - 3), 2)  # -(1/2) int(A f''' B)
        if c_fm4 != 0:
            accum = accum + _distinct_recursion(n - 4, a, b, memo) * c_fm4
        f = mono(n - 1, n)
        accum = accum - wronskian_form(f, "against_B_prime", a, b)
        f_prime = f.differentiate()
        if not f_prime.is_zero:
            accum = accum + wronskian_form(f_prime, "against_B", a, b) * Fraction(1, 2)
        accum = accum + wronskian_form(mono(n), "against_B", a, b) * (-(a - b) / 2)
        form = accum * (2 / (a - b) ** 2)
    memo[n] = form
    return form


def _antider_ab(n: int, a: Fraction, b: Fraction) -> BilinearForm:
    return antider_ab_equal(n, a) if a == b else antider_ab_distinct(n, a, b)


def antider_abp(n: int, shift_a: Scalar, shift_b: Scalar) -> BilinearForm:
    """Exact antiderivative of x^n*A*B', valid for equal or distinct shifts.

    Connector with g = x^(n+1)/(n+1):

      int(x^n A B') = ((a-b)/2) int(A g B) - (n/2) int(x^(n-1) A B)
                      + (1/2) W(A, g B)

    The two AB-family terms dispatch on shift equality; the first one
    vanishes outright when a = b.
    """
    if n < 0:
        raise ValueError("power n must be nonnegative")
    a, b = Fraction(shift_a), Fraction(shift_b)
    g = RationalPolynomial.monomial(n + 1, Fraction(1, n + 1))
    form = wronskian_form(g, "against_B", a, b) * Fraction(1, 2)
    if n >= 1:
        form = form + _antider_ab(n - 1, a, b) * Fraction(-n, 2)
    if a != b:
        form = form + antider_ab_distinct(n + 1, a, b) * ((a - b) / (2 * (n + 1)))
    return form


def antider_apb(n: int, shift_a: Scalar, shift_b: Scalar) -> BilinearForm:
    """Exact antiderivative of x^n*A'*B: the swap of the AB' case with
    the shifts exchanged, which guarantees the A/B symmetry by
    construction."""
    return antider_abp(n, shift_b, shift_a).swap()


def antider_apbp(n: int, shift_a: Scalar, shift_b: Scalar) -> BilinearForm:
    """Exact antiderivative of x^n*A'*B' via integration by parts.

    From d(f A'B) = f' A'B + f(x+a) AB + f A'B':

      int(f A'B') = f A'B - int(f' A'B) - int((x+a) f A B)

    with f = x^n; the (x+a) factor comes from A'' = (x+a)A acting on the
    differentiated A' in the boundary product.
    """
    if n < 0:
        raise ValueError("power n must be nonnegative")
    a, b = Fraction(shift_a), Fraction(shift_b)
    form = BilinearForm(a, b, p_apb=RationalPolynomial.monomial(n))
    if n >= 1:
        form = form + antider_apb(n - 1, a, b) * Fraction(-n)
    form = form - _antider_ab(n + 1, a, b)
    if a != 0:
        form = form - _antider_ab(n, a, b) * a
    return form


_MONOMIAL_OPS: dict[Pattern, Callable[..., BilinearForm]] = {
    Pattern.AB: lambda n, a, b: _antider_ab(n, a, b),
    Pattern.ABP: antider_abp,
    Pattern.APB: antider_apb,
    Pattern.APBP: antider_apbp,
}


def antider_poly(request: ReductionRequest) -> BilinearForm:
    """Exact antiderivative of f(x) times the requested product pattern,
    assembled by linearity over the monomials of f."""
    op = _MONOMIAL_OPS[request.pattern]
    a, b = request.shift_a, request.shift_b
    form = BilinearForm.zero(a, b)
    for power, coeff in enumerate(request.f.coefficients):
        if coeff != 0:
            form = form + op(power, a, b) * coeff
    return form


def differentiate_back_check(
    form: BilinearForm, f: RationalPolynomial, pattern: Pattern
) -> bool:
    """True iff d(form)/dx equals f placed in the single slot named by
    pattern, by exact canonical equality. This is the package's primary
    correctness oracle."""
    target = BilinearForm.term(
        pattern.value, f, form.shift_a, form.shift_b
    )
    return form.differentiate() == target


@dataclass(frozen=True)
class HvtOperator:
    """Operator insertion for the commutator-identity verifier.

    kind 'multiply_by' is multiplication by a polynomial g;
    kind 'poly_times_D' is f(x) * d/dx.
    """

    kind: str
    poly: RationalPolynomial

    _KINDS = ("multiply_by", "poly_times_D")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"operator kind must be one of {self._KINDS}")

    @classmethod
    def multiply_by(cls, poly: RationalPolynomial) -> "HvtOperator":
        return cls("multiply_by", poly)

    @classmethod
    def poly_times_d(cls, poly: RationalPolynomial) -> "HvtOperator":
        return cls("poly_times_D", poly)

    def __str__(self) -> str:
        return f"({self.poly})*D" if self.kind == "poly_times_D" else str(self.poly)


def verify_hvt(
    operator: HvtOperator,
    spec_a: SolutionSpec,
    spec_b: SolutionSpec,
    interval: tuple[float, float],
    tol: float,
) -> float:
    """Residual of the integrated commutator identity over an interval.

    Both sides of

      int(A [L, O] B) = (a - b) int(A O B) + W(A, O B) |_{x1}^{x2}

    are evaluated numerically (L = d^2/dx^2 - x) and the absolute
    difference is returned. The commutator expands as [L, g] = g'' + 2g'D
    and [L, fD] = f''D + 2f'(L + x) + f, with L acting on B replaced by
    its eigenvalue b. Quadrature runs at tol/20 so the returned residual
    is meaningful against tol.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    x1, x2 = float(interval[0]), float(interval[1])
    a, b = spec_a.shift, spec_b.shift
    p = operator.poly
    quad_tol = tol / 20.0

    def values(x: float) -> tuple[float, float, float, float]:
        ya, yap = eval_solution(spec_a, x)
        yb, ybp = eval_solution(spec_b, x)
        return ya, yap, yb, ybp

    if operator.kind == "multiply_by":
        g_dd = p.differentiate().differentiate()
        g_d = p.differentiate()

        def commutator_part(x: float) -> float:
            ya, _, yb, ybp = values(x)
            return ya * (g_dd(x) * yb + 2.0 * g_d(x) * ybp)

        def insertion_part(x: float) -> float:
            ya, _, yb, _ = values(x)
            return p(x) * ya * yb

        boundary = wronskian_form(p, "against_B", a, b)
    else:
        f_dd = p.differentiate().differentiate()
        f_d = p.differentiate()
        b_float = float(b)

        def commutator_part(x: float) -> float:
            ya, _, yb, ybp = values(x)
            return ya * (
                f_dd(x) * ybp + 2.0 * f_d(x) * (x + b_float) * yb + p(x) * yb
            )

        def insertion_part(x: float) -> float:
            ya, _, _, ybp = values(x)
            return p(x) * ya * ybp

        boundary = wronskian_form(p, "against_B_prime", a, b)

    lhs = integrate_adaptive(commutator_part, x1, x2, quad_tol).value
    eigengap = float(a - b)
    rhs = eigengap * integrate_adaptive(insertion_part, x1, x2, quad_tol).value
    rhs += form_eval(boundary, spec_a, spec_b, x2) - form_eval(
        boundary, spec_a, spec_b, x1
    )
    return abs(lhs - rhs)

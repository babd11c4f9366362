"""Exact-rational polynomial ring and the bilinear Airy form.

A `BilinearForm` is an expression

    P1*A*B + P2*A*B' + P3*A'*B + P4*A'*B'

with `RationalPolynomial` coefficients, where A and B solve
A'' = (x + a)*A and B'' = (x + b)*B for exact rational shifts a, b.
Those two rewrite rules close the space under d/dx, which is what makes
an exact differentiate-back oracle possible: the derivative of any form
is again a form with the same shifts, and two forms are equal iff their
canonical representations coincide.

Scalars are `fractions.Fraction` throughout (arbitrary-precision, always
reduced, positive denominator). All values here are immutable and all
operations pure, so concurrent use is unrestricted.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Union

from .airy import SolutionSpec, eval_solution
from .errors import ShiftMismatch

#: Exact scalar type used for coefficients and shifts.
Rational = Fraction

Scalar = Union[Fraction, int, str]


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational like '3', '-1/2' or '0'."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {text!r}") from exc


class RationalPolynomial:
    """Univariate polynomial with exact rational coefficients.

    Coefficients are stored ascending by power with no trailing zeros;
    the zero polynomial is the empty tuple (degree -1).
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Scalar] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs = tuple(coeffs)

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls()

    @classmethod
    def monomial(cls, power: int, coefficient: Scalar = 1) -> "RationalPolynomial":
        if power < 0:
            raise ValueError("monomial power must be nonnegative")
        c = Fraction(coefficient)
        if c == 0:
            return cls()
        return cls([0] * power + [c])

    @classmethod
    def from_strings(cls, parts: Iterable[str]) -> "RationalPolynomial":
        return cls(parse_rational(p) for p in parts)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out)

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self._coeffs)

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            if not self._coeffs or not other._coeffs:
                return RationalPolynomial()
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
            return RationalPolynomial(out)
        if isinstance(other, (Fraction, int)):
            return RationalPolynomial(c * other for c in self._coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def differentiate(self) -> "RationalPolynomial":
        """Exact derivative; degree drops by one."""
        return RationalPolynomial(
            i * c for i, c in enumerate(self._coeffs) if i > 0
        )

    def antidifferentiate(self) -> "RationalPolynomial":
        """Exact antiderivative with the integration constant fixed to 0.

        The zero constant makes outputs canonical; any other choice would
        shift produced antiderivatives by a multiple of a lower-order
        closed form, which the differentiate-back oracle still accepts.
        """
        return RationalPolynomial(
            [Fraction(0)] + [c / (i + 1) for i, c in enumerate(self._coeffs)]
        )

    def shift_argument(self, t: Scalar) -> "RationalPolynomial":
        """Exact composition p(x + t), via Horner in the factor (x + t)."""
        t = Fraction(t)
        if t == 0:
            return self
        linear = RationalPolynomial([t, 1])
        out = RationalPolynomial()
        for c in reversed(self._coeffs):
            out = out * linear + RationalPolynomial([c])
        return out

    def __call__(self, x):
        """Evaluate by Horner; exact for Fraction/int x, float otherwise."""
        if isinstance(x, (Fraction, int)):
            acc = Fraction(0)
            for c in reversed(self._coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0
        for c in reversed(self._coeffs):
            acc = acc * x + float(c)
        return acc

    def to_strings(self) -> list[str]:
        """Ascending-power coefficients as exact rational strings."""
        return [str(c) for c in self._coeffs]

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for power in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                xs = "x" if power == 1 else f"x^{power}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self._coeffs]})"


P_ZERO = RationalPolynomial()
P_ONE = RationalPolynomial([1])
P_X = RationalPolynomial([0, 1])

#: Order of the four product slots, also the wire-format key order.
SLOT_KEYS = ("AB", "ABp", "ApB", "ApBp")
_SLOT_FIELDS = {"AB": "p_ab", "ABp": "p_abp", "ApB": "p_apb", "ApBp": "p_apbp"}


@dataclass(frozen=True)
class BilinearForm:
    """Exact expression P1*AB + P2*AB' + P3*A'B + P4*A'B' with shifts (a, b)."""

    shift_a: Fraction
    shift_b: Fraction
    p_ab: RationalPolynomial = P_ZERO
    p_abp: RationalPolynomial = P_ZERO
    p_apb: RationalPolynomial = P_ZERO
    p_apbp: RationalPolynomial = P_ZERO

    def __post_init__(self):
        if not isinstance(self.shift_a, Fraction):
            object.__setattr__(self, "shift_a", Fraction(self.shift_a))
        if not isinstance(self.shift_b, Fraction):
            object.__setattr__(self, "shift_b", Fraction(self.shift_b))

    @classmethod
    def zero(cls, shift_a: Scalar, shift_b: Scalar) -> "BilinearForm":
        return cls(Fraction(shift_a), Fraction(shift_b))

    @classmethod
    def term(
        cls, slot: str, poly: RationalPolynomial, shift_a: Scalar, shift_b: Scalar
    ) -> "BilinearForm":
        """Form with a single nonzero slot ('AB', 'ABp', 'ApB' or 'ApBp')."""
        if slot not in _SLOT_FIELDS:
            raise ValueError(f"unknown slot {slot!r}")
        return cls(Fraction(shift_a), Fraction(shift_b), **{_SLOT_FIELDS[slot]: poly})

    @property
    def slots(self) -> tuple[RationalPolynomial, ...]:
        return (self.p_ab, self.p_abp, self.p_apb, self.p_apbp)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.slots)

    def _require_same_shifts(self, other: "BilinearForm"):
        if (self.shift_a, self.shift_b) != (other.shift_a, other.shift_b):
            raise ShiftMismatch(
                f"cannot combine forms with shifts ({self.shift_a}, {self.shift_b})"
                f" and ({other.shift_a}, {other.shift_b})"
            )

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        self._require_same_shifts(other)
        return BilinearForm(
            self.shift_a,
            self.shift_b,
            self.p_ab + other.p_ab,
            self.p_abp + other.p_abp,
            self.p_apb + other.p_apb,
            self.p_apbp + other.p_apbp,
        )

    def __neg__(self) -> "BilinearForm":
        return self * Fraction(-1)

    def __sub__(self, other: "BilinearForm") -> "BilinearForm":
        return self + (-other)

    def __mul__(self, scalar) -> "BilinearForm":
        if not isinstance(scalar, (Fraction, int)):
            return NotImplemented
        return BilinearForm(
            self.shift_a,
            self.shift_b,
            self.p_ab * scalar,
            self.p_abp * scalar,
            self.p_apb * scalar,
            self.p_apbp * scalar,
        )

    __rmul__ = __mul__

    def differentiate(self) -> "BilinearForm":
        """Exact d/dx, rewriting A'' = (x+a)A and B'' = (x+b)B.

        Per slot: d(P*AB) = P'AB + P*AB' + P*A'B, d(P*AB') = P'AB' +
        P*A'B' + P(x+b)AB, d(P*A'B) = P'A'B + P*A'B' + P(x+a)AB and
        d(P*A'B') = P'A'B' + P(x+a)AB' + P(x+b)A'B.
        """
        x_plus_a = RationalPolynomial([self.shift_a, 1])
        x_plus_b = RationalPolynomial([self.shift_b, 1])
        return BilinearForm(
            self.shift_a,
            self.shift_b,
            self.p_ab.differentiate() + self.p_abp * x_plus_b + self.p_apb * x_plus_a,
            self.p_ab + self.p_abp.differentiate() + self.p_apbp * x_plus_a,
            self.p_ab + self.p_apb.differentiate() + self.p_apbp * x_plus_b,
            self.p_abp + self.p_apb + self.p_apbp.differentiate(),
        )

    def swap(self) -> "BilinearForm":
        """Exchange the roles of A and B (an involution)."""
        return BilinearForm(
            self.shift_b, self.shift_a, self.p_ab, self.p_apb, self.p_abp, self.p_apbp
        )

    def shift_argument(self, t: Scalar) -> "BilinearForm":
        """Compose every coefficient polynomial with (x + t); shifts unchanged."""
        return replace(
            self,
            p_ab=self.p_ab.shift_argument(t),
            p_abp=self.p_abp.shift_argument(t),
            p_apb=self.p_apb.shift_argument(t),
            p_apbp=self.p_apbp.shift_argument(t),
        )

    def with_shifts(self, shift_a: Scalar, shift_b: Scalar) -> "BilinearForm":
        return BilinearForm(Fraction(shift_a), Fraction(shift_b), *self.slots)

    def coefficient_strings(self) -> dict[str, list[str]]:
        """Canonical wire rendering: slot key -> ascending rational strings."""
        return {key: p.to_strings() for key, p in zip(SLOT_KEYS, self.slots)}

    def __str__(self) -> str:
        labels = ("A*B", "A*B'", "A'*B", "A'*B'")
        parts = [
            f"({p})*{label}" for p, label in zip(self.slots, labels) if not p.is_zero
        ]
        return " + ".join(parts) if parts else "0"


def wronskian_form(
    h: RationalPolynomial,
    orientation: str,
    shift_a: Scalar,
    shift_b: Scalar,
) -> BilinearForm:
    """Boundary Wronskian W(A, h*B) or W(A, h*B') as an exact form.

    With W(u, v) = u*v' - u'*v:
      against_B:       W(A, hB)  = h'*AB + h*AB' - h*A'B
      against_B_prime: W(A, hB') = h*(x+b)*AB + h'*AB' - h*A'B'
    (the second uses B'' = (x+b)B).
    """
    a, b = Fraction(shift_a), Fraction(shift_b)
    if orientation == "against_B":
        return BilinearForm(a, b, p_ab=h.differentiate(), p_abp=h, p_apb=-h)
    if orientation == "against_B_prime":
        x_plus_b = RationalPolynomial([b, 1])
        return BilinearForm(
            a, b, p_ab=h * x_plus_b, p_abp=h.differentiate(), p_apbp=-h
        )
    raise ValueError(
        f"orientation must be 'against_B' or 'against_B_prime', got {orientation!r}"
    )


def form_eval(
    form: BilinearForm, spec_a: SolutionSpec, spec_b: SolutionSpec, x: float
) -> float:
    """Evaluate a form numerically at x with solutions matching its shifts.

    The specs' shifts must equal the form's shifts exactly (rational
    equality); this is what ties the symbolic eigenvalues to the numeric
    solutions being substituted.
    """
    if spec_a.shift != form.shift_a or spec_b.shift != form.shift_b:
        raise ShiftMismatch(
            f"form has shifts ({form.shift_a}, {form.shift_b}), specs have"
            f" ({spec_a.shift}, {spec_b.shift})"
        )
    ya, yap = eval_solution(spec_a, x)
    yb, ybp = eval_solution(spec_b, x)
    x = float(x)
    return (
        form.p_ab(x) * ya * yb
        + form.p_abp(x) * ya * ybp
        + form.p_apb(x) * yap * yb
        + form.p_apbp(x) * yap * ybp
    )

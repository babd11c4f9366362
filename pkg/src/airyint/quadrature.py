"""Deterministic adaptive quadrature used as the numeric oracle.

The scheme is a nested Clenshaw-Curtis pair per panel: the 33-point rule
gives the panel value, the embedded 17-point rule (every other node, so
no extra evaluations) gives the error estimate, and panels whose
estimate exceeds their share of the tolerance are bisected. Node and
weight tables are generated once at import from the closed-form
Clenshaw-Curtis weight expression, which integrates polynomials through
degree 33 to machine accuracy.

Evaluation order is a fixed left-to-right traversal, so identical inputs
produce bit-identical results. The evaluation budget defaults to 1e6
integrand calls; exceeding it raises `NonConvergence`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .airy import SolutionSpec
from .errors import DivergentIntegrand, NonConvergence, NonFiniteIntegrand

_EPS = 2.0**-52
_DEFAULT_BUDGET = 10**6


def _clenshaw_curtis_weights(n: int) -> list[float]:
    # Weights for the n+1 nodes cos(j*pi/n) on [-1, 1], n even.
    w = [0.0] * (n + 1)
    w[0] = w[n] = 1.0 / (n * n - 1)
    for j in range(1, n):
        theta = j * math.pi / n
        v = 1.0
        for k in range(1, n // 2):
            v -= 2.0 * math.cos(2 * k * theta) / (4 * k * k - 1)
        v -= math.cos(n * theta) / (n * n - 1)
        w[j] = 2.0 * v / n
    return w


_N_FINE = 32
_NODES = [math.cos(j * math.pi / _N_FINE) for j in range(_N_FINE + 1)]
_W_FINE = _clenshaw_curtis_weights(_N_FINE)
_W_COARSE = _clenshaw_curtis_weights(_N_FINE // 2)
_PANEL_EVALS = _N_FINE + 1


@dataclass(frozen=True)
class QuadratureResult:
    """Value, error estimate and integrand-call count of one integration."""

    value: float
    error_estimate: float
    evaluations: int


def _panel(f, lo: float, hi: float) -> tuple[float, float, float]:
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    values = []
    for t in _NODES:
        y = f(mid + half * t)
        if not math.isfinite(y):
            raise NonFiniteIntegrand(
                f"integrand returned {y!r} at x = {mid + half * t}"
            )
        values.append(y)
    fine = half * math.fsum(w * y for w, y in zip(_W_FINE, values))
    coarse = half * math.fsum(w * y for w, y in zip(_W_COARSE, values[::2]))
    scale = half * math.fsum(abs(w * y) for w, y in zip(_W_FINE, values))
    return fine, abs(fine - coarse), scale


def integrate_adaptive(
    integrand: Callable[[float], float],
    x1: float,
    x2: float,
    tol: float,
    max_evals: int = _DEFAULT_BUDGET,
) -> QuadratureResult:
    """Integrate over [x1, x2] so that the error stays within
    max(tol, tol*|value|).

    A panel is accepted when its error estimate is below its width-
    proportional share of tol, or indistinguishable from roundoff in the
    panel's own magnitude (100 ulps of the L1 panel sum), whichever is
    larger. Raises NonConvergence when the budget runs out or when the
    accumulated estimate still exceeds the target afterwards.
    """
    if not (math.isfinite(x1) and math.isfinite(x2)):
        raise ValueError("integration limits must be finite")
    if x1 > x2:
        raise ValueError(f"reversed interval [{x1}, {x2}]")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if x1 == x2:
        return QuadratureResult(0.0, 0.0, 0)

    width = x2 - x1
    stack = [(x1, x2)]
    value = 0.0
    err_total = 0.0
    evals = 0
    while stack:
        lo, hi = stack.pop()
        if evals + _PANEL_EVALS > max_evals:
            raise NonConvergence(
                f"evaluation budget {max_evals} exhausted after {evals} calls"
            )
        fine, err, scale = _panel(integrand, lo, hi)
        evals += _PANEL_EVALS
        local_share = tol * (hi - lo) / width
        if err <= local_share or err <= 100 * _EPS * scale or (hi - lo) <= 1e-14 * width:
            value += fine
            err_total += err
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi))
            stack.append((lo, mid))
    if err_total > max(tol, tol * abs(value)):
        raise NonConvergence(
            f"error estimate {err_total:g} above target after {evals} evaluations"
        )
    return QuadratureResult(value, err_total, evals)


def truncation_point(
    x1: float, tol: float, decay_witness: tuple[SolutionSpec, SolutionSpec]
) -> float:
    """Upper cutoff T such that the tail of an Ai*Ai-type product past T
    is below tol/2.

    A product of two decaying solutions with shifts s1, s2 is bounded by
    const * exp(-(4/3) * (x + min(s1, s2))^(3/2)); solving that bound for
    tol/2 with a safety factor of 2 on the exponent absorbs polynomial
    weights and derivative factors.
    """
    w1, w2 = decay_witness
    amplitude = max(1.0, abs(w1.c1) * abs(w2.c1))
    budget = math.log(2.0 * amplitude / tol)
    xi = (1.5 * budget) ** (2.0 / 3.0) * 2.0 ** (2.0 / 3.0)
    s_min = min(float(w1.shift), float(w2.shift))
    return max(x1 + 1.0, xi - s_min)


def integrate_improper(
    integrand: Callable[[float], float],
    x1: float,
    tol: float,
    decay_witness: tuple[SolutionSpec, SolutionSpec],
    max_evals: int = _DEFAULT_BUDGET,
) -> QuadratureResult:
    """Integrate from x1 to +infinity for super-exponentially decaying
    integrands.

    The decay witness is the pair of solutions whose product (possibly
    with polynomial weight and derivatives) makes up the integrand. Both
    must be pure Ai: any Bi admixture grows without bound and the
    integral diverges, which raises DivergentIntegrand. The integral is
    truncated at `truncation_point` and the tail bound (tol/2) is folded
    into the error estimate.
    """
    for spec in decay_witness:
        if not spec.is_pure_ai:
            raise DivergentIntegrand(
                "improper integral needs pure-Ai solutions; got c2 = "
                f"{spec.c2!r}"
            )
    if not math.isfinite(x1):
        raise ValueError("lower limit must be finite")
    if not tol > 0:
        raise ValueError("tol must be positive")
    cutoff = truncation_point(x1, tol, decay_witness)
    result = integrate_adaptive(integrand, x1, cutoff, 0.5 * tol, max_evals)
    return QuadratureResult(
        result.value, result.error_estimate + 0.5 * tol, result.evaluations
    )

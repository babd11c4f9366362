"""HTTP service exposing the integral handlers.

POST /indefinite, /definite and /check wrap the handlers in
`airyint.api`; GET /health reports liveness. Requests are validated by
pydantic models mirroring the CLI flags (exact rationals travel as
strings so no precision is lost at the wire). Parse errors map to 400,
domain errors (overflow, divergence, equal-shift misuse, ...) to 409.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import api
from .errors import AiryIntError

PatternName = Literal["AB", "ABp", "ApB", "ApBp"]


class IndefiniteRequest(BaseModel):
    n: Optional[int] = Field(default=None, ge=0, description="monomial power")
    poly: Optional[str] = Field(
        default=None, description="ascending rational coefficients, e.g. '0,1,1/2'"
    )
    pattern: PatternName = "AB"
    a: str = "0"
    b: str = "0"


class DefiniteRequest(IndefiniteRequest):
    sol1: str = "1,0"
    sol2: str = "1,0"
    lower: float
    upper: str = Field(description="finite number or 'inf'")
    check: bool = False
    tol: float = Field(default=api.DEFAULT_TOL, gt=0)


class CheckRequest(BaseModel):
    suite: Literal["hvt", "roundtrip", "wronskian"]
    max_n: int = Field(default=10, ge=0)
    interval: tuple[float, float] = (-3.0, 2.0)


class FormCoefficients(BaseModel):
    AB: list[str]
    ABp: list[str]
    ApB: list[str]
    ApBp: list[str]


class IndefiniteResponse(BaseModel):
    shift_a: str
    shift_b: str
    form: FormCoefficients


class DefiniteResponse(BaseModel):
    value: float
    crosscheck: Optional[float] = None
    abs_diff: Optional[float] = None


class CheckCase(BaseModel):
    name: str
    residual: float
    tolerance: float
    passed: bool


class CheckResponse(BaseModel):
    suite: str
    passed: bool
    cases: list[CheckCase]


app = FastAPI(
    title="airyint",
    description="Closed-form antiderivatives of polynomial-weighted Airy products",
    version="0.1.0",
)


def _query_from(request: IndefiniteRequest, definite: bool) -> api.IntegralQuery:
    kwargs = {}
    if definite:
        kwargs = {
            "sol1": request.sol1,
            "sol2": request.sol2,
            "lower": request.lower,
            "upper": request.upper,
        }
    try:
        return api.build_query(
            n=request.n,
            poly=request.poly,
            pattern=request.pattern,
            a=request.a,
            b=request.b,
            **kwargs,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/indefinite", response_model=IndefiniteResponse)
def indefinite(request: IndefiniteRequest):
    query = _query_from(request, definite=False)
    return api.run_indefinite(query)


@app.post("/definite", response_model=DefiniteResponse, response_model_exclude_none=True)
def definite(request: DefiniteRequest):
    query = _query_from(request, definite=True)
    try:
        return api.run_definite(query, check=request.check, tol=request.tol)
    except AiryIntError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc


@app.post("/check", response_model=CheckResponse)
def check(request: CheckRequest):
    try:
        return api.run_check(
            request.suite, max_n=request.max_n, interval=request.interval
        )
    except AiryIntError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc

"""Parsing, handlers and canonical JSON rendering."""

import json
import math
from fractions import Fraction

import pytest

from airyint import DivergentIntegrand, api
from airyint.symbolic import RationalPolynomial
from conftest import INT_AI2


def test_parse_poly():
    assert api.parse_poly("0,1,1/2") == RationalPolynomial([0, 1, Fraction(1, 2)])
    assert api.parse_poly("5") == RationalPolynomial([5])
    with pytest.raises(ValueError):
        api.parse_poly("")
    with pytest.raises(ValueError):
        api.parse_poly("1,,2")
    with pytest.raises(ValueError):
        api.parse_poly("1,abc")


def test_parse_solution():
    spec = api.parse_solution("1,0", Fraction(2))
    assert (spec.c1, spec.c2, spec.shift) == (1.0, 0.0, Fraction(2))
    with pytest.raises(ValueError):
        api.parse_solution("1", Fraction(0))
    with pytest.raises(ValueError):
        api.parse_solution("0,0", Fraction(0))


def test_parse_upper_limit():
    assert api.parse_upper_limit("inf") == math.inf
    assert api.parse_upper_limit("Infinity") == math.inf
    assert api.parse_upper_limit("2.5") == 2.5
    with pytest.raises(ValueError):
        api.parse_upper_limit("soon")


def test_build_query_validation():
    with pytest.raises(ValueError):
        api.build_query(n=None, poly=None, pattern="AB", a="0", b="0")
    with pytest.raises(ValueError):
        api.build_query(n=1, poly="1,2", pattern="AB", a="0", b="0")
    with pytest.raises(ValueError):
        api.build_query(n=-1, poly=None, pattern="AB", a="0", b="0")
    with pytest.raises(ValueError):
        api.build_query(n=0, poly=None, pattern="AB", a="0", b="0", lower=2.0, upper="1")
    with pytest.raises(ValueError):
        api.build_query(n=0, poly=None, pattern="AB", a="0", b="0", lower=1.0)
    query = api.build_query(n=0, poly=None, pattern="ApBp", a="1/3", b="-1/3")
    assert query.solution1.shift == Fraction(1, 3)
    assert query.interval is None


def test_run_indefinite_schema():
    query = api.build_query(n=0, poly=None, pattern="AB", a="0", b="0")
    payload = api.run_indefinite(query)
    assert payload == {
        "shift_a": "0",
        "shift_b": "0",
        "form": {"AB": ["0", "1"], "ABp": [], "ApB": [], "ApBp": ["-1"]},
    }
    with pytest.raises(ValueError):
        api.run_indefinite(
            api.build_query(n=0, poly=None, pattern="AB", a="0", b="0", lower=0.0, upper="1")
        )


def test_run_indefinite_distinct_base():
    # d(AB' - A'B) = (b - a) AB, so with a = 0, b = 1 the antiderivative
    # of AB is AB' - A'B
    query = api.build_query(n=0, poly=None, pattern="AB", a="0", b="1")
    payload = api.run_indefinite(query)
    assert payload["form"] == {"AB": [], "ABp": ["1"], "ApB": ["-1"], "ApBp": []}


def test_run_definite_empty_interval_is_zero():
    query = api.build_query(
        n=0, poly=None, pattern="AB", a="0", b="0", lower=1.0, upper="1"
    )
    assert api.run_definite(query) == {"value": 0.0}


def test_run_definite_improper_with_check():
    query = api.build_query(
        n=0, poly=None, pattern="AB", a="0", b="0", lower=0.0, upper="inf"
    )
    payload = api.run_definite(query, check=True)
    assert payload["value"] == pytest.approx(INT_AI2, abs=1e-12)
    assert payload["abs_diff"] <= 1e-9
    assert set(payload) == {"value", "crosscheck", "abs_diff"}
    bare = api.run_definite(query)
    assert set(bare) == {"value"}


def test_run_definite_rejects_bi_at_infinity():
    query = api.build_query(
        n=0, poly=None, pattern="AB", a="0", b="0",
        sol2="0,1", lower=0.0, upper="inf",
    )
    with pytest.raises(DivergentIntegrand):
        api.run_definite(query)


def test_run_check_suites_pass():
    wronskian = api.run_check("wronskian")
    assert wronskian["passed"] and len(wronskian["cases"]) == 5
    hvt = api.run_check("hvt")
    assert hvt["passed"] and len(hvt["cases"]) == 5
    roundtrip = api.run_check("roundtrip", max_n=3)
    assert roundtrip["passed"] and len(roundtrip["cases"]) == 24
    for case in roundtrip["cases"]:
        assert set(case) == {"name", "residual", "tolerance", "passed"}
    with pytest.raises(ValueError):
        api.run_check("vibes")


def test_render_json_round_trips_bytes():
    query = api.build_query(
        n=1, poly=None, pattern="ApB", a="0", b="1", lower=-2.0, upper="1.5"
    )
    payload = api.run_definite(query, check=True)
    text = api.render_json(payload)
    parsed = json.loads(text)
    assert api.render_json(parsed) == text


def test_render_json_formats():
    assert api.render_json({"a": 1.0, "b": [True, None, "x\"y"]}) == (
        '{"a": 1, "b": [true, null, "x\\"y"]}'
    )
    assert api.render_json(0.030629383078988447) == "0.030629383078988447"
    assert api.render_json(Fraction(-3, 7)) == '"-3/7"'
    with pytest.raises(ValueError):
        api.render_json(math.nan)
    with pytest.raises(TypeError):
        api.render_json({1, 2})


def test_render_json_17_digits_round_trip_floats():
    for value in (1 / 3, math.pi, 6.62607015e-34, -2.5e300, 0.1 + 0.2):
        assert float(api.render_json(value)) == value

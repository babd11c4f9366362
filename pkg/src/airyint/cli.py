"""Command-line front end.

Subcommands `indefinite`, `definite` and `check` are thin clients of the
handlers in `airyint.api`; `serve` starts the HTTP service wrapping the
same handlers. Exit codes form a stable contract:

  0  success
  1  a check-suite case failed
  2  usage or parse error
  3  domain error (overflow, divergence, shift misuse, non-convergence)
  4  --check discrepancy above --tol
"""

from __future__ import annotations

import sys

import click

from . import api
from .errors import AiryIntError

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_CROSSCHECK = 4


def _echo_error(message: str) -> None:
    click.echo(f"error: {message}", err=True)


def _weight_options(command):
    decorators = [
        click.option("--n", "n", type=int, default=None, help="Monomial power of the weight x^n."),
        click.option("--poly", default=None, help="Weight as ascending rational coefficients, e.g. '0,1,1/2'."),
        click.option(
            "--pattern",
            type=click.Choice(["AB", "ABp", "ApB", "ApBp"]),
            default="AB",
            show_default=True,
            help="Derivative pattern of the product.",
        ),
        click.option("--a", default="0", show_default=True, help="Exact rational shift of the first solution."),
        click.option("--b", default="0", show_default=True, help="Exact rational shift of the second solution."),
    ]
    for decorator in reversed(decorators):
        command = decorator(command)
    return command


@click.group()
@click.version_option(version="0.1.0", prog_name="airyint")
def cli():
    """Exact antiderivatives of x^n times products of Airy-equation solutions.

    Examples:

        airyint indefinite --n 0 --pattern AB --a 0 --b 1

        airyint definite --n 0 --sol1 1,0 --sol2 1,0 --from 0 --to inf --check

        airyint check roundtrip --max-n 10
    """


@cli.command()
@_weight_options
@click.option("--json", "as_json", is_flag=True, help="Emit the canonical JSON schema.")
def indefinite(n, poly, pattern, a, b, as_json):
    """Print the closed-form antiderivative as an exact bilinear form."""
    try:
        query = api.build_query(n=n, poly=poly, pattern=pattern, a=a, b=b)
        payload = api.run_indefinite(query)
    except ValueError as exc:
        _echo_error(str(exc))
        sys.exit(EXIT_USAGE)
    except AiryIntError as exc:
        _echo_error(str(exc))
        sys.exit(EXIT_DOMAIN)
    if as_json:
        click.echo(api.render_json(payload))
    else:
        form = api.closed_form(query)
        click.echo(f"shifts: a = {payload['shift_a']}, b = {payload['shift_b']}")
        click.echo(f"antiderivative = {form}")


@cli.command()
@_weight_options
@click.option("--sol1", default="1,0", show_default=True, help="First solution amplitudes 'c1,c2'.")
@click.option("--sol2", default="1,0", show_default=True, help="Second solution amplitudes 'c1,c2'.")
@click.option("--from", "lower", type=float, required=True, help="Lower limit.")
@click.option("--to", "upper", required=True, help="Upper limit (number or 'inf').")
@click.option("--check", "crosscheck", is_flag=True, help="Cross-validate against adaptive quadrature.")
@click.option("--tol", type=float, default=api.DEFAULT_TOL, show_default=True, help="Crosscheck tolerance.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def definite(n, poly, pattern, a, b, sol1, sol2, lower, upper, crosscheck, tol, as_json):
    """Evaluate the definite integral from the closed form at the limits."""
    try:
        query = api.build_query(
            n=n, poly=poly, pattern=pattern, a=a, b=b,
            sol1=sol1, sol2=sol2, lower=lower, upper=upper,
        )
    except ValueError as exc:
        _echo_error(str(exc))
        sys.exit(EXIT_USAGE)
    if tol <= 0:
        _echo_error("--tol must be positive")
        sys.exit(EXIT_USAGE)
    try:
        payload = api.run_definite(query, check=crosscheck, tol=tol)
    except AiryIntError as exc:
        _echo_error(str(exc))
        sys.exit(EXIT_DOMAIN)
    if as_json:
        click.echo(api.render_json(payload))
    else:
        click.echo(f"value = {payload['value']:.17g}")
        if crosscheck:
            click.echo(f"crosscheck = {payload['crosscheck']:.17g}")
            click.echo(f"abs_diff = {payload['abs_diff']:.17g}")
    if crosscheck and payload["abs_diff"] > tol:
        _echo_error(f"crosscheck discrepancy {payload['abs_diff']:.3e} exceeds tol {tol:g}")
        sys.exit(EXIT_CROSSCHECK)


@cli.command()
@click.argument("suite", type=click.Choice(list(api.CHECK_SUITES)))
@click.option("--max-n", type=int, default=10, show_default=True, help="Largest power for the roundtrip grid.")
@click.option("--interval", nargs=2, type=float, default=(-3.0, 2.0), show_default=True, help="Interval for the hvt suite.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
def check(suite, max_n, interval, as_json):
    """Run a verification suite (hvt, roundtrip or wronskian)."""
    try:
        report = api.run_check(suite, max_n=max_n, interval=interval)
    except ValueError as exc:
        _echo_error(str(exc))
        sys.exit(EXIT_USAGE)
    except AiryIntError as exc:
        _echo_error(str(exc))
        sys.exit(EXIT_DOMAIN)
    if as_json:
        click.echo(api.render_json(report))
    else:
        for case in report["cases"]:
            status = "ok" if case["passed"] else "FAIL"
            click.echo(
                f"[{status}] {case['name']}: residual {case['residual']:.3e}"
                f" (tol {case['tolerance']:g})"
            )
        verdict = "all passed" if report["passed"] else "FAILURES"
        click.echo(f"suite {suite}: {verdict}")
    if not report["passed"]:
        sys.exit(EXIT_CHECK_FAILED)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Start the HTTP service exposing the same operations."""
    import uvicorn

    uvicorn.run("airyint.service:app", host=host, port=port)


def main():
    cli()


if __name__ == "__main__":
    main()

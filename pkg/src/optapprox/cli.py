"""Command-line interface.

Verbs mirror the library surface: approx, profile, cyclicity, zeros,
telescope, oracle-check, extremal, bidisk, family.  Data goes to stdout
or --out as JSON or CSV; warnings and errors go to stderr.  Exit codes:
0 success, 1 usage error, 2 numerical failure.  Every report verb can
additionally render a figure with --plot.
"""

import json
import math
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import bidisk as bidisk_mod
from . import extremal as extremal_mod
from . import plotting
from . import zeros as zeros_mod
from .approx import (
    approximant_to_json,
    cyclicity_report,
    distance_profile,
    optimal_approximant,
    telescoping_product,
)
from .closedform import approximant_coeffs_hardy
from .core import (
    DEFAULT_TRUNCATION,
    TaylorSeries1D,
    complex_to_pair,
    function_spec_from_json,
    materialize,
)
from .errors import NumericsError
from .zeros import zero_report_to_json

TRUNCATION_ENV_VAR = "OPTAPPROX_TRUNCATION"


def _resolved_truncation(flag_value):
    if flag_value is not None:
        return flag_value
    env = os.environ.get(TRUNCATION_ENV_VAR)
    if env is not None:
        try:
            value = int(env)
        except ValueError as exc:
            raise click.UsageError(f"{TRUNCATION_ENV_VAR} must be an integer, got {env!r}") from exc
        if value <= 0:
            raise click.UsageError(f"{TRUNCATION_ENV_VAR} must be positive, got {value}")
        return value
    return DEFAULT_TRUNCATION


def _load_series(f_arg: str, truncation) -> TaylorSeries1D:
    """Parse --f as inline JSON or as a path to a JSON file."""
    text = f_arg.strip()
    if not text.startswith("{"):
        path = Path(text)
        if not path.exists():
            raise click.UsageError(f"function file not found: {text}")
        text = path.read_text()
    try:
        spec = function_spec_from_json(text)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"invalid function description: {exc}") from exc
    return materialize(spec, default_truncation=_resolved_truncation(truncation))


def _load_series_2d(f_arg: str) -> bidisk_mod.TaylorSeries2D:
    text = f_arg.strip()
    if not text.startswith("{"):
        path = Path(text)
        if not path.exists():
            raise click.UsageError(f"function file not found: {text}")
        text = path.read_text()
    try:
        return bidisk_mod.series_2d_from_json(text)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"invalid 2-d coefficient description: {exc}") from exc


def _emit(text: str, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)
        click.echo(f"wrote {out}", err=True)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v + 0.0)
    return str(v)


def _csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


_f_option = click.option("--f", "f_arg", required=True, help="function description (JSON or file path)")
_alpha_option = click.option("--alpha", type=float, default=0.0, show_default=True, help="space weight exponent")
_degree_option = click.option("--degree", type=int, required=True, help="approximation degree")
_solver_option = click.option(
    "--solver",
    type=click.Choice(["auto", "cholesky", "levinson"]),
    default="auto",
    show_default=True,
)
_format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True
)
_out_option = click.option("--out", type=click.Path(), default=None, help="output file (default stdout)")
_truncation_option = click.option(
    "--truncation",
    type=click.IntRange(min=1),
    default=None,
    help=f"series truncation degree (default ${TRUNCATION_ENV_VAR} or {DEFAULT_TRUNCATION})",
)
_plot_option = click.option("--plot", type=click.Path(), default=None, help="also render a figure to this file")


@click.group()
@click.version_option(package_name="optapprox", prog_name="optapprox")
def cli():
    """Optimal polynomial approximants to 1/f in weighted coefficient spaces."""


@cli.command("approx")
@_f_option
@_alpha_option
@_degree_option
@_solver_option
@_format_option
@_out_option
@_truncation_option
def approx_cmd(f_arg, alpha, degree, solver, fmt, out, truncation):
    """Compute one optimal approximant."""
    f = _load_series(f_arg, truncation)
    result = optimal_approximant(f, degree, alpha, method=solver)
    if fmt == "json":
        _emit(_json_text(approximant_to_json(result)), out)
    else:
        rows = [(k, c.real, c.imag) for k, c in enumerate(result.polynomial.coeffs)]
        _emit(_csv_text(("k", "re", "im"), rows), out)


@cli.command("profile")
@_f_option
@_alpha_option
@_degree_option
@_format_option
@_out_option
@_truncation_option
@_plot_option
def profile_cmd(f_arg, alpha, degree, fmt, out, truncation, plot):
    """Squared distances for every degree up to --degree."""
    f = _load_series(f_arg, truncation)
    entries = distance_profile(f, degree, alpha)
    if fmt == "json":
        payload = {
            "alpha": alpha,
            "n_max": degree,
            "entries": [
                {"n": e.n, "dist_sq": e.dist_sq, "dist_sq_formula": e.dist_sq_formula} for e in entries
            ],
        }
        _emit(_json_text(payload), out)
    else:
        rows = [(e.n, e.dist_sq, e.dist_sq_formula) for e in entries]
        _emit(_csv_text(("n", "dist_sq", "dist_sq_formula"), rows), out)
    if plot is not None:
        plotting.save_distance_plot(entries, plot, alpha)
        click.echo(f"wrote {plot}", err=True)


@cli.command("cyclicity")
@_f_option
@_alpha_option
@_degree_option
@_format_option
@_out_option
@_truncation_option
@_plot_option
def cyclicity_cmd(f_arg, alpha, degree, fmt, out, truncation, plot):
    """Track p*_n(0) and the distance decay up to --degree."""
    f = _load_series(f_arg, truncation)
    report = cyclicity_report(f, alpha, degree)
    if fmt == "json":
        payload = {
            "alpha": alpha,
            "f_at_zero": complex_to_pair(report.f_at_zero),
            "non_cyclic_at_origin": report.vanishes_at_origin,
            "p_at_zero_target": (
                None if report.p_at_zero_target is None else complex_to_pair(report.p_at_zero_target)
            ),
            "decay_exponent": report.decay_exponent,
            "entries": [
                {"n": e.n, "p_at_zero": complex_to_pair(e.p_at_zero), "dist_sq": e.dist_sq}
                for e in report.entries
            ],
        }
        _emit(_json_text(payload), out)
    else:
        rows = [(e.n, e.p_at_zero.real, e.p_at_zero.imag, e.dist_sq) for e in report.entries]
        _emit(_csv_text(("n", "p0_re", "p0_im", "dist_sq"), rows), out)
    if plot is not None:
        plotting.save_distance_plot(report.entries, plot, alpha)
        click.echo(f"wrote {plot}", err=True)


@cli.command("zeros")
@_f_option
@_alpha_option
@_degree_option
@_solver_option
@_format_option
@_out_option
@_truncation_option
@_plot_option
def zeros_cmd(f_arg, alpha, degree, solver, fmt, out, truncation, plot):
    """Zero set of one optimal approximant with the modulus-bound check."""
    f = _load_series(f_arg, truncation)
    report = zeros_mod.approximant_zero_report(f, degree, alpha, method=solver)
    if fmt == "json":
        _emit(_json_text(zero_report_to_json(report)), out)
    else:
        rows = [(z.real, z.imag, abs(z)) for z in report.zeros]
        _emit(_csv_text(("re", "im", "modulus"), rows), out)
    if plot is not None:
        plotting.save_zero_plot(report.zeros, report.bound, plot)
        click.echo(f"wrote {plot}", err=True)


@cli.command("telescope")
@_f_option
@click.option("--alpha", type=float, default=0.0, show_default=True, help="must be 0 for this verb")
@_degree_option
@_format_option
@_out_option
@_truncation_option
@_plot_option
def telescope_cmd(f_arg, alpha, degree, fmt, out, truncation, plot):
    """Partial products of the zero-modulus cyclicity criterion."""
    f = _load_series(f_arg, truncation)
    result = telescoping_product(f, degree, alpha)
    if fmt == "json":
        payload = {
            "target": complex_to_pair(result.target),
            "roots_until": result.roots_until,
            "degenerate_count": result.degenerate_count,
            "entries": [
                {"n": e.n, "factor": e.factor, "partial_product": e.partial_product}
                for e in result.entries
            ],
        }
        _emit(_json_text(payload), out)
    else:
        rows = [
            (e.n, e.factor, e.partial_product, result.target.real, result.target.imag)
            for e in result.entries
        ]
        _emit(_csv_text(("n", "factor", "partial_product", "target_re", "target_im"), rows), out)
    if plot is not None:
        plotting.save_telescope_plot(result.entries, result.target, plot)
        click.echo(f"wrote {plot}", err=True)


@cli.command("oracle-check")
@click.option("--a", "a", type=click.IntRange(min=1), required=True, help="exponent of (1-z)^a")
@click.option("--max-degree", type=click.IntRange(min=0), required=True)
@_solver_option
@_format_option
@_out_option
def oracle_check_cmd(a, max_degree, solver, fmt, out):
    """Compare solver coefficients against the closed form for (1-z)^a."""
    f = materialize(function_spec_from_json({"type": "one_minus_z_pow", "a": a}))
    rows = []
    for n in range(max_degree + 1):
        result = optimal_approximant(f, n, 0.0, method=solver)
        reference = np.array(approximant_coeffs_hardy(a, n))
        dev = np.abs(result.polynomial.coeffs - reference)
        rows.append((n, float(np.max(dev)), float(np.max(dev) / np.max(np.abs(reference)))))
    if fmt == "json":
        payload = {
            "a": a,
            "max_degree": max_degree,
            "rows": [{"n": n, "max_abs_dev": d, "max_rel_dev": r} for n, d, r in rows],
        }
        _emit(_json_text(payload), out)
    else:
        _emit(_csv_text(("n", "max_abs_dev", "max_rel_dev"), rows), out)


@cli.command("extremal")
@click.option("--max-degree", type=click.IntRange(min=1), required=True)
@click.option(
    "--sweep",
    "sweep_kind",
    type=click.Choice(["geometric", "linear", "single"]),
    default="geometric",
    show_default=True,
)
@_format_option
@_out_option
@_plot_option
def extremal_cmd(max_degree, sweep_kind, fmt, out, plot):
    """Lower bounds for the extremal shift quotient at alpha = -1."""
    if sweep_kind == "geometric":
        degrees = []
        n = 1
        while n <= max_degree:
            degrees.append(n)
            n *= 2
        if degrees[-1] != max_degree:
            degrees.append(max_degree)
    elif sweep_kind == "linear":
        degrees = list(range(1, max_degree + 1))
    else:
        degrees = [max_degree]
    result = extremal_mod.sweep(degrees)
    if fmt == "json":
        payload = {
            "entries": [
                {
                    "N": e.degree,
                    "lambda": e.quotient,
                    "iterations": e.iterations,
                    "residual": e.residual,
                }
                for e in result.entries
            ],
            "best_lower_bound": result.best_lower_bound,
            "min_zero_modulus_upper_bound": result.min_zero_modulus_upper_bound,
            "crossed_one": result.crossed_one,
            "ceiling": math.sqrt(2.0),
        }
        _emit(_json_text(payload), out)
    else:
        rows = [(e.degree, e.quotient, e.iterations) for e in result.entries]
        _emit(_csv_text(("N", "lambda", "iterations"), rows), out)
    if plot is not None:
        plotting.save_sweep_plot(result.entries, plot)
        click.echo(f"wrote {plot}", err=True)


@cli.command("bidisk")
@_f_option
@_alpha_option
@_degree_option
@_format_option
@_out_option
def bidisk_cmd(f_arg, alpha, degree, fmt, out):
    """Optimal approximant over total-degree monomials on the bidisk."""
    f = _load_series_2d(f_arg)
    result = bidisk_mod.optimal_approximant_2d(f, degree, alpha)
    if fmt == "json":
        _emit(_json_text(bidisk_mod.approximant_2d_to_json(result)), out)
    else:
        rows = [
            (j, k, v.real, v.imag) for v, (j, k) in zip(result.coeffs, result.basis.index_list)
        ]
        _emit(_csv_text(("j", "k", "re", "im"), rows), out)


@cli.command("family")
@click.option("--beta", type=float, required=True)
@click.option("--gamma", type=float, required=True)
@click.option("--theta", type=float, required=True)
@_alpha_option
@_degree_option
@_format_option
@_out_option
@_truncation_option
@_plot_option
def family_cmd(beta, gamma, theta, alpha, degree, fmt, out, truncation, plot):
    """Zero geometry report for (1-z)^beta [(z-e^{it})(z-e^{-it})]^gamma."""
    report = zeros_mod.family_report(beta, gamma, theta, alpha, degree, truncation=truncation)
    if fmt == "json":
        _emit(_json_text(zero_report_to_json(report)), out)
    else:
        rows = [(z.real, z.imag, abs(z)) for z in report.zeros]
        _emit(_csv_text(("re", "im", "modulus"), rows), out)
    if plot is not None:
        plotting.save_zero_plot(report.zeros, report.bound, plot)
        click.echo(f"wrote {plot}", err=True)


def main(argv=None) -> int:
    """Run the CLI, mapping failures to the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except NumericsError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return 2
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Command-line front-end.

Reads matrix-set files, dispatches to the library and prints deterministic
human-readable summaries; ``--cert PATH`` additionally writes a JSON
certificate that ``verify-cert`` re-checks from its embedded data alone.

Exit codes: 0 success, 1 failed check/verification, 2 parse error,
3 resource or guard error, 4 hypothesis violation.
"""

from __future__ import annotations

import functools
import sys

import click

from . import checksuite, setfile
from .errors import (
    BudgetError,
    CertificateError,
    DegenerateSpectrumError,
    DimensionMismatchError,
    DivergenceError,
    GenerationError,
    InvalidEntryError,
    IrreducibilityError,
    NonUniqueCriticalError,
    SetFileError,
    ToleranceError,
)
from .geometry import eccentricity, hausdorff
from .jsr import (
    WeightedMaxNorm,
    aggregate,
    barabanov_norm,
    barabanov_nonexistence,
    finiteness_product,
    jsr_bounds,
    verify_barabanov,
    verify_extremal,
)
from .spectral import cycle_mean, is_irreducible
from .tolerance import resolve_tolerance

_EXIT_PARSE = 2
_EXIT_GUARD = 3
_EXIT_HYPOTHESIS = 4


def _cycle_text(cycle) -> str:
    if not cycle:
        return "(none)"
    nodes = [str(i + 1) for i in cycle]  # columns/nodes are 1-based for humans
    return " -> ".join(nodes + [nodes[0]])


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SetFileError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(_EXIT_PARSE)
        except (BudgetError, DivergenceError, GenerationError, ToleranceError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(_EXIT_GUARD)
        except (
            IrreducibilityError,
            DegenerateSpectrumError,
            NonUniqueCriticalError,
            DimensionMismatchError,
            InvalidEntryError,
        ) as exc:
            click.echo(f"error: {exc}", err=True)
            if isinstance(exc, IrreducibilityError) and exc.form is not None:
                classes = [list(c) for c in exc.form.classes]
                click.echo(f"communicating classes: {classes}", err=True)
            sys.exit(_EXIT_HYPOTHESIS)

    return wrapper


_set_argument = click.argument("set_file", type=click.Path(exists=True, dir_okay=False))
_tol_option = click.option("--tol", type=float, default=None, help="relative tolerance (default 1e-9)")
_cert_option = click.option("--cert", "cert_path", type=click.Path(dir_okay=False), default=None,
                            help="write a JSON certificate here")
_seed_option = click.option("--seed", type=int, default=0, show_default=True,
                            help="seed for the randomized parts")


@click.group()
@click.version_option(setfile.TOOL_VERSION, prog_name="maxjsr")
def main():
    """Max-times spectral radius toolkit for sets of nonnegative matrices."""


@main.command()
@_set_argument
@click.option("--matrix", "matrix_name", default=None, help="member to analyse (default: first)")
@click.option("--witness", is_flag=True, help="print a critical cycle")
@_tol_option
@_cert_option
@_handle_errors
def mu(set_file, matrix_name, witness, tol, cert_path):
    """Maximal cycle geometric mean of one member."""
    psi = setfile.load_set(set_file)
    name = matrix_name if matrix_name is not None else psi.names[0]
    try:
        mat = psi.member(name)
    except KeyError as exc:
        raise SetFileError(str(exc)) from None
    t = resolve_tolerance(tol)
    result = cycle_mean(mat, tol=t)
    click.echo(f"mu({name}) = {_fmt(result.mu)}")
    if witness:
        click.echo(f"witness: {_cycle_text(result.witness_cycle)}")
    if cert_path:
        setfile.write_certificate(setfile.mu_certificate(psi, name, result, t), cert_path)


@main.command(name="jsr")
@_set_argument
@click.option("--bounds", "depth", type=int, default=None, help="also bracket at this product depth")
@_tol_option
@_cert_option
@_handle_errors
def jsr_command(set_file, depth, tol, cert_path):
    """Joint spectral radius of the whole set."""
    psi = setfile.load_set(set_file)
    t = resolve_tolerance(tol)
    result = cycle_mean(aggregate(psi), tol=t)
    click.echo(f"jsr = {_fmt(result.mu)}")
    bounds = None
    if depth is not None:
        agg = aggregate(psi)
        nu = barabanov_norm(psi, tol=t) if is_irreducible(agg) else WeightedMaxNorm.uniform(psi.n)
        bounds = jsr_bounds(psi, depth, nu, tol=t)
        click.echo(f"lower_{depth} = {_fmt(bounds.lower)}")
        click.echo(f"upper_{depth} = {_fmt(bounds.upper)}")
    if cert_path:
        setfile.write_certificate(setfile.jsr_certificate(psi, result, t, bounds), cert_path)


@main.command()
@_set_argument
@click.option("--verify", "samples", type=int, default=None,
              help="verify the norm on this many random vectors")
@_seed_option
@_tol_option
@_cert_option
@_handle_errors
def barabanov(set_file, samples, seed, tol, cert_path):
    """Weights of the extremal norm with exact attainment."""
    psi = setfile.load_set(set_file)
    t = resolve_tolerance(tol)
    nu = barabanov_norm(psi, tol=t)
    result = cycle_mean(aggregate(psi), tol=t)
    click.echo(f"jsr = {_fmt(result.mu)}")
    click.echo("weights = [" + ", ".join(_fmt(w) for w in nu.weights.data) + "]")
    click.echo(f"eccentricity = {_fmt(eccentricity(nu).value)}")
    verified = None
    if samples is not None:
        extremal = verify_extremal(psi, nu, samples=samples, seed=seed, tol=t)
        attained = verify_barabanov(psi, nu, samples=samples, seed=seed, tol=t)
        verified = {
            "samples": samples,
            "seed": seed,
            "extremal": bool(extremal),
            "barabanov": bool(attained),
        }
        click.echo(f"extremal check: {'ok' if extremal else 'FAILED: ' + extremal.detail}")
        click.echo(f"attainment check: {'ok' if attained else 'FAILED: ' + attained.detail}")
        if not (extremal and attained):
            sys.exit(1)
    if cert_path:
        setfile.write_certificate(
            setfile.barabanov_certificate(psi, nu, result.mu, t, verified), cert_path
        )


@main.command()
@_set_argument
@_tol_option
@_cert_option
@_handle_errors
def finiteness(set_file, tol, cert_path):
    """Product of length at most n attaining the radius."""
    psi = setfile.load_set(set_file)
    t = resolve_tolerance(tol)
    radius = cycle_mean(aggregate(psi), tol=t).mu
    cert = finiteness_product(psi, tol=t)
    click.echo(f"jsr = {_fmt(radius)}")
    click.echo(f"k = {cert.k}")
    click.echo("factors (applied right to left) = " + ", ".join(cert.matrix_names))
    click.echo(f"regions: {_cycle_text(cert.region_cycle)}")
    click.echo(f"mu(product)^(1/k) = {_fmt(cycle_mean(cert.product, tol=t).mu ** (1.0 / cert.k))}")
    if cert_path:
        setfile.write_certificate(setfile.finiteness_certificate(psi, cert, radius, t), cert_path)


@main.command(name="hausdorff")
@click.argument("set_file_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("set_file_b", type=click.Path(exists=True, dir_okay=False))
@_tol_option
@_cert_option
@_handle_errors
def hausdorff_command(set_file_a, set_file_b, tol, cert_path):
    """Hausdorff distance between two sets (row-sum matrix norm)."""
    left = setfile.load_set(set_file_a)
    right = setfile.load_set(set_file_b)
    t = resolve_tolerance(tol)
    report = hausdorff(left, right)
    click.echo(f"distance = {_fmt(report.distance)}")
    click.echo(f"realized by member {report.argmax_member!r} of the {report.argmax_side} set")
    if cert_path:
        setfile.write_certificate(setfile.hausdorff_certificate(left, right, report, t), cert_path)


@main.command()
@_set_argument
@_tol_option
@_cert_option
@_handle_errors
def nonexistence(set_file, tol, cert_path):
    """Detect the reducible obstruction to any Barabanov norm."""
    psi = setfile.load_set(set_file)
    t = resolve_tolerance(tol)
    verdict = barabanov_nonexistence(psi, tol=t)
    if verdict.obstructed:
        click.echo("no Barabanov norm can exist for this set")
        click.echo(f"witness eigenvalue = {_fmt(verdict.eigenvalue)}")
        click.echo("witness = [" + ", ".join(_fmt(x) for x in verdict.witness.data) + "]")
    else:
        click.echo("no obstruction found")
    if cert_path:
        setfile.write_certificate(setfile.nonexistence_certificate(psi, verdict, t), cert_path)


@main.command()
@_set_argument
@click.option("--seeds", "extra", type=int, default=0, show_default=True,
              help="number of extra random instances")
@_seed_option
@_tol_option
@_cert_option
@_handle_errors
def check(set_file, extra, seed, tol, cert_path):
    """Run the property battery on the set plus random instances."""
    psi = setfile.load_set(set_file)
    t = resolve_tolerance(tol)
    results = checksuite.run_suite(psi, extra_instances=extra, seed=seed, tol=t)
    passed = sum(1 for r in results if r.status == "pass")
    failed = sum(1 for r in results if r.status == "fail")
    skipped = sum(1 for r in results if r.status == "skip")
    for r in results:
        line = f"[{r.status:4s}] {r.name}"
        if r.detail:
            line += f" ({r.detail})"
        click.echo(line)
    click.echo(f"passed {passed}, failed {failed}, skipped {skipped}")
    if cert_path:
        report = {
            "checks": [{"name": r.name, "status": r.status, "detail": r.detail} for r in results],
            "passed": passed,
            "failed": failed,
            "skipped": skipped,
            "seed": seed,
            "extra_instances": extra,
        }
        setfile.write_certificate(setfile.probe_certificate(report, t), cert_path)
    if failed:
        sys.exit(1)


@main.command(name="verify-cert")
@click.argument("cert_file", type=click.Path(exists=True, dir_okay=False))
@_handle_errors
def verify_cert(cert_file):
    """Re-check a certificate from its embedded data."""
    try:
        cert = setfile.load_certificate(cert_file)
    except CertificateError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_EXIT_PARSE)
    problems = setfile.certificate_problems(cert)
    if problems:
        for problem in problems:
            click.echo(f"problem: {problem}", err=True)
        sys.exit(1)
    click.echo(f"certificate OK ({cert['kind']})")


if __name__ == "__main__":
    main()

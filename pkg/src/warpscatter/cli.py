"""
Batch command line for warpscatter.

One subcommand per pipeline stage; every subcommand accepts the same
options and ignores the ones it has no use for. Artifacts go to --out.
"""

import logging
from pathlib import Path
from typing import Annotated, Optional

import typer

from warpscatter.core.config import get_config
from warpscatter.core.errors import EXIT_CONFIG
from warpscatter.core.io import format_result
from warpscatter.tools import COMMANDS, RunConfig, parse_lambda_grid, parse_pair, run

HELP = {
    "spectrum": "Threshold E0 per end, essential-spectrum bottom and cross-section eigenvalues.",
    "jost": "Jost solutions of one end and mode: Wronskian constancy and far-field normalization.",
    "smatrix": "(Generalized) scattering matrices over the λ grid with unitarity residuals.",
    "resolvent": "Outgoing resolvent on seeded random sources and the Parseval identity.",
    "normalize-metric": "Hamilton-flow fixed point and warped-product form of a general metric.",
    "wave": "Forced wave evolution with energy trace and finite-speed check.",
    "blago-check": "Inner products of waves at time T by evolution and from boundary data.",
    "invert-volume": "Volume of a domain of influence from data measured on the region.",
    "invert-distance": "Interior distance from crossing-ball tests, checked against the orbit distance.",
    "oracle-geodesic": "Geodesic by the Clairaut integral and the geodesic equations.",
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

app = typer.Typer(
    name="warpscatter",
    help="Forward and inverse scattering on warped-product manifolds.",
    no_args_is_help=True,
    add_completion=False,
)


def _epsilons(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as e:
        raise ValueError(f"Invalid --eps '{text}': expected comma-separated probe sizes") from e


def build_config(command: str, **values) -> RunConfig:
    """RunConfig from raw option values; unset options keep the model defaults."""
    if values.get("lambdas") is not None:
        values["lambdas"] = parse_lambda_grid(values["lambdas"])
    for name in ("band", "region"):
        if values.get(name) is not None:
            values[name] = parse_pair(values[name], f"--{name}")
    if values.get("epsilons") is not None:
        values["epsilons"] = _epsilons(values["epsilons"])
    return RunConfig(command=command, **{k: v for k, v in values.items() if v is not None})


def _configure_logging(level: str) -> None:
    name = level.upper()
    if name not in LOG_LEVELS:
        raise ValueError(f"Invalid --log-level '{level}': expected one of {', '.join(LOG_LEVELS)}")
    logging.basicConfig(level=getattr(logging, name), format="%(levelname)s %(name)s: %(message)s")


def run_command(
    ctx: typer.Context,
    config: Annotated[Optional[Path], typer.Option("--config", help="Manifold (or metric) JSON file")] = None,
    out: Annotated[Path, typer.Option("--out", help="Output directory")] = Path("results"),
    lambdas: Annotated[Optional[str], typer.Option("--lambda", help="λ grid A:B:N or a single value")] = None,
    lambda_max: Annotated[Optional[float], typer.Option("--lmax", help="Cross-section cutoff Λ_max")] = None,
    r_max: Annotated[Optional[float], typer.Option("--rmax", help="Matching / truncation radius")] = None,
    seed: Annotated[Optional[int], typer.Option("--seed", help="Seed of random sources")] = None,
    tol: Annotated[Optional[float], typer.Option("--tol", help="Acceptance tolerance")] = None,
    generalized: Annotated[bool, typer.Option("--generalized", help="Include generalized cusp channels")] = False,
    as_json: Annotated[bool, typer.Option("--json", help="Print the run outcome as JSON")] = False,
    log_level: Annotated[str, typer.Option("--log-level", help="DEBUG, INFO, WARNING or ERROR")] = "WARNING",
    T: Annotated[Optional[float], typer.Option("--T", "-T", help="Time horizon")] = None,
    dr: Annotated[Optional[float], typer.Option("--dr", help="Space step of wave grids")] = None,
    sigma: Annotated[Optional[float], typer.Option("--sigma", help="Tikhonov parameter")] = None,
    ell: Annotated[Optional[int], typer.Option("--ell", help="Cross-section mode index")] = None,
    end: Annotated[Optional[int], typer.Option("--end", help="End id")] = None,
    band: Annotated[Optional[str], typer.Option("--band", help="Source band A:B")] = None,
    region: Annotated[Optional[str], typer.Option("--region", help="Observation region A:B")] = None,
    q: Annotated[Optional[float], typer.Option("--q", help="Start radius of the geodesic")] = None,
    psi: Annotated[Optional[float], typer.Option("--psi", help="Angle of the geodesic to ∂_r")] = None,
    r_tilde: Annotated[Optional[float], typer.Option("--r-tilde", help="Length of the geodesic segment")] = None,
    z: Annotated[Optional[float], typer.Option("--z", help="Target orbit radius")] = None,
    epsilons: Annotated[Optional[str], typer.Option("--eps", help="Probe sizes, comma-separated")] = None,
    length: Annotated[Optional[float], typer.Option("--length", help="Length of the oracle geodesic")] = None,
) -> None:
    command = ctx.info_name
    try:
        _configure_logging(log_level)
        get_config()
        run_config = build_config(
            command,
            config=config,
            out=out,
            lambdas=lambdas,
            lambda_max=lambda_max,
            r_max=r_max,
            seed=seed,
            tol=tol,
            generalized=generalized or None,
            T=T,
            dr=dr,
            sigma=sigma,
            ell=ell,
            end=end,
            band=band,
            region=region,
            q=q,
            psi=psi,
            r_tilde=r_tilde,
            z=z,
            epsilons=epsilons,
            length=length,
        )
    except ValueError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_CONFIG) from e

    outcome = run(run_config)
    if as_json:
        typer.echo(format_result(outcome))
    elif outcome.error is not None:
        typer.echo(f"Error: {outcome.error['message']}", err=True)
    else:
        for line in outcome.summary:
            typer.echo(line)
        typer.echo(f"{len(outcome.artifacts)} artifact(s) in {run_config.out}")
    raise typer.Exit(outcome.exit_code)


for _name in COMMANDS:
    app.command(_name, help=HELP[_name])(run_command)


def main() -> None:
    """Entry point of the warpscatter console script."""
    app()


if __name__ == "__main__":
    main()

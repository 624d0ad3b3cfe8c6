"""Command line interface for the Zinbiel toolkit."""

import functools
from pathlib import Path
from typing import Any, Callable, Optional, Tuple

import click
from pydantic import BaseModel, ValidationError
from rich.console import Console

from . import __version__
from .app import ZinbielApp, exit_code_for, render
from .core.config import get_settings
from .core.exceptions import EX_USAGE, ParameterError, ZinbielError
from .core.logging import bind_run, get_logger, setup_logging
from .models import FamilyId, FamilyParams
from .utils import parse_assignments

console = Console(highlight=False, soft_wrap=True, emoji=False)
err_console = Console(stderr=True, highlight=False, soft_wrap=True, emoji=False)

logger = get_logger(__name__)


class ExitCodeGroup(click.Group):
    """Click group whose usage errors exit with 64 instead of 2."""

    def make_context(self, info_name: Optional[str], args: Any, parent: Any = None, **extra: Any) -> click.Context:
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = EX_USAGE
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EX_USAGE
            raise


def _handled(command: str) -> Callable[[Callable[..., Optional[BaseModel]]], Callable[..., None]]:
    """Bind the run context, emit the report and map errors to exit codes."""

    def decorator(func: Callable[..., Optional[BaseModel]]) -> Callable[..., None]:
        @functools.wraps(func)
        def wrapper(ctx: click.Context, *args: Any, json_out: Optional[Path] = None, **kwargs: Any) -> None:
            bind_run(command, **{k: str(v) for k, v in kwargs.items() if v not in (None, ())})
            app: ZinbielApp = ctx.obj["app"]
            try:
                report = func(app, *args, **kwargs)
                if report is None:
                    return
                console.print(render(app, command, report), markup=False)
                if json_out is not None:
                    app.file_service.save_report(report, json_out)
            except ZinbielError as e:
                logger.debug("command_failed", error=type(e).__name__)
                err_console.print(f"error: {e.message}", style="red", markup=False)
                if ctx.obj["debug"]:
                    err_console.print_exception()
                ctx.exit(e.exit_code)
            ctx.exit(exit_code_for(report))

        return click.pass_context(wrapper)

    return decorator


json_out_option = click.option(
    "--json-out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Also write the report as JSON",
)
assignment_option = click.option(
    "--set",
    "assignments",
    multiple=True,
    metavar="NAME=VALUE",
    help="Bind a symbolic parameter before computing",
)


def family_options(func: Callable[..., Any]) -> Callable[..., Any]:
    options = [
        click.option(
            "--name",
            "family",
            required=True,
            type=click.Choice([f.value for f in FamilyId]),
            help="Family name",
        ),
        click.option("--n", type=int, help="Dimension"),
        click.option("--p", type=int, help="Short block length"),
        click.option("--t", type=int, help="Dimension offset n - 2p"),
        click.option("--beta1", help="Value of beta_1"),
        click.option("--gamma1", help="Value of gamma_1"),
        click.option("--delta1", help="Value of delta_1"),
        click.option("--delta-pm1", "delta_pm1", help="Value of delta_{p-1}"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _family_params(**fields: Any) -> FamilyParams:
    try:
        return FamilyParams(**{k: v for k, v in fields.items() if v is not None})
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ParameterError(f"{where}: {first['msg']}", e) from e


def _assignments(items: Tuple[str, ...]) -> Optional[dict]:
    return parse_assignments(items) if items else None


@click.group(cls=ExitCodeGroup)
@click.option(
    "--log-level",
    default=None,
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    help="Logging level",
)
@click.option("--debug", is_flag=True, help="Enable debug mode")
@click.option("--json-logs", is_flag=True, help="Emit log events as JSON lines on stderr")
@click.version_option(version=__version__)
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], debug: bool, json_logs: bool) -> None:
    """Exact computations on naturally graded Zinbiel algebras."""
    settings = get_settings()
    debug = debug or settings.debug
    setup_logging(
        log_level=log_level or settings.log_level,
        debug=debug,
        json_logs=json_logs or settings.json_logs,
        console=err_console,
    )
    ctx.ensure_object(dict)
    ctx.obj["debug"] = debug
    ctx.obj["app"] = ZinbielApp()


@cli.command()
@family_options
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the algebra here")
@_handled("family")
def family(app: ZinbielApp, out: Optional[Path], **fields: Any) -> None:
    """Build one member of a family; prints its JSON without --out."""
    text = app.family(_family_params(**fields), out)
    if out is None:
        console.out(text, end="", highlight=False)
    else:
        console.print(f"wrote {out}", markup=False)


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
@json_out_option
@_handled("verify")
def verify(app: ZinbielApp, path: Path) -> BaseModel:
    """Check the Zinbiel identity and the lower central series."""
    return app.verify(path)


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--strategy", type=click.Choice(["grid", "random"]), default="grid", show_default=True)
@click.option("--grid-height", type=click.IntRange(min=1), help="Integer grid height")
@click.option("--samples", type=click.IntRange(min=0), help="Random candidates")
@click.option("--sample-height", type=click.IntRange(min=1), help="Random coefficient height")
@click.option("--seed", type=int, help="Random seed")
@assignment_option
@json_out_option
@_handled("charseq")
def charseq(
    app: ZinbielApp,
    path: Path,
    strategy: str,
    grid_height: Optional[int],
    samples: Optional[int],
    sample_height: Optional[int],
    seed: Optional[int],
    assignments: Tuple[str, ...],
) -> BaseModel:
    """Characteristic sequence, type and block layout."""
    if (samples is not None or sample_height is not None or seed is not None) and strategy == "grid":
        strategy = "random"
    return app.charseq(
        path, strategy, grid_height, samples, sample_height, seed, _assignments(assignments)
    )


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the graded algebra here")
@json_out_option
@_handled("grade")
def grade(app: ZinbielApp, path: Path, out: Optional[Path]) -> BaseModel:
    """Natural gradation of a nilpotent algebra."""
    return app.grade(path, out)


@cli.command()
@click.argument("src", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("dst", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--height", type=click.IntRange(min=1), help="Rational grid height")
@click.option("--nodes", type=click.IntRange(min=1), help="Search node budget")
@assignment_option
@json_out_option
@_handled("iso")
def iso(
    app: ZinbielApp,
    src: Path,
    dst: Path,
    height: Optional[int],
    nodes: Optional[int],
    assignments: Tuple[str, ...],
) -> BaseModel:
    """Decide isomorphism; exit 0 yes, 1 no, 2 exhausted."""
    return app.iso(src, dst, height, nodes, _assignments(assignments))


@cli.command()
@click.argument("path", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--height", type=click.IntRange(min=1), help="Rational grid height")
@json_out_option
@_handled("natural")
def natural(app: ZinbielApp, path: Path, height: Optional[int]) -> BaseModel:
    """Whether an algebra is isomorphic to its natural gradation."""
    return app.natural(path, height)


@cli.command()
@click.option("--table", required=True, type=click.Path(dir_okay=False, path_type=Path), help="Partial table")
@click.option("--budget", type=click.IntRange(min=1), help="Identity instances to expand")
@json_out_option
@_handled("deduce")
def deduce(app: ZinbielApp, table: Path, budget: Optional[int]) -> BaseModel:
    """Propagate identity instances over a partially known table."""
    return app.deduce(table, budget)


@cli.command()
@click.option("--p", "p", required=True, type=int, help="Short block length")
@json_out_option
@_handled("nonexist")
def nonexist(app: ZinbielApp, p: int) -> BaseModel:
    """Certificate that the β system with β₀ = 1 has no solution."""
    return app.nonexist(p)


@cli.command(name="identity-suite")
@click.option("--max", "max_n", type=click.IntRange(min=1), default=12, show_default=True)
@json_out_option
@_handled("identity-suite")
def identity_suite(app: ZinbielApp, max_n: int) -> BaseModel:
    """Check the binomial identities exactly."""
    return app.identity_suite(max_n)


@cli.command()
@family_options
@json_out_option
@_handled("residuals")
def residuals(app: ZinbielApp, **fields: Any) -> BaseModel:
    """Restriction residuals of a family member."""
    return app.residuals(_family_params(**fields))


def main() -> None:
    """Main CLI entry point."""
    cli()


if __name__ == "__main__":
    main()

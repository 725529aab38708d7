"""Command-line entry point."""
import logging
from pathlib import Path
from typing import Callable, List, Optional

import typer
from typing_extensions import Annotated

from radembed.api import examples as examples_api
from radembed.api import region as region_api
from radembed.api import verdict as verdict_api
from radembed.api import verify as verify_api
from radembed.api.common import CommandOutcome, ExitCode
from radembed.core.config import settings
from radembed.core.errors import EmbeddingError

logger = logging.getLogger(__name__)

# ValueError covers pydantic ValidationError and json.JSONDecodeError
INPUT_ERRORS = (EmbeddingError, ValueError, OSError)

app = typer.Typer(
    name="radembed",
    help="Compact embeddings of weighted radial Sobolev spaces: verdicts, regions, examples and checks.",
    add_completion=False,
)


@app.callback()
def configure(
    log_level: Annotated[Optional[str], typer.Option("--log-level", help="Logging level (overrides RADEMBED_LOG_LEVEL)")] = None,
):
    logging.basicConfig(level=(log_level or settings.LOG_LEVEL).upper())


def _finish(command: Callable[[], CommandOutcome]):
    try:
        outcome = command()
    except INPUT_ERRORS as e:
        logger.debug("Command failed", exc_info=True)
        typer.echo(f"error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(int(ExitCode.INPUT_ERROR))
    typer.echo(outcome.output)
    raise typer.Exit(int(outcome.exit_code))


@app.command()
def verdict(
    spec: Annotated[Path, typer.Option("--spec", "-s", help="Path to the problem spec (JSON)")],
    out: Annotated[Optional[Path], typer.Option("--out", "-o", help="Write the verdict document here")] = None,
):
    """Compute the admissible exponent intervals for a problem spec."""
    _finish(lambda: verdict_api.run_verdict(spec, out))


@app.command()
def region(
    beta: Annotated[str, typer.Option("--beta", help="beta <= 1, rational like 1/2 allowed")],
    gamma: Annotated[str, typer.Option("--gamma", help="gamma >= 2, or inf")],
    dim: Annotated[int, typer.Option("--dim", "-n", help="Dimension N >= 3")],
    alpha: Annotated[str, typer.Option("--alpha", help="Alpha range LO:HI")],
    fmt: Annotated[str, typer.Option("--format", "-f", help="csv or svg")] = "csv",
    out: Annotated[Path, typer.Option("--out", "-o", help="Output directory (csv) or file/directory (svg)")] = Path("output"),
    samples: Annotated[int, typer.Option("--samples", help="Alpha samples per curve")] = 200,
):
    """Export the boundary of the region A(beta, gamma) as CSV polylines or an SVG sketch."""
    _finish(lambda: region_api.run_region(beta, gamma, dim, alpha, fmt, out, samples))


@app.command()
def example(
    name: Annotated[str, typer.Argument(help="Catalog name, or 'list'")],
    param: Annotated[Optional[List[str]], typer.Option("--param", "-p", help="Parameter binding key=value")] = None,
):
    """Reproduce a catalog example and compare with its expected verdict."""
    if name == "list":
        typer.echo(examples_api.list_examples())
        raise typer.Exit(int(ExitCode.OK))
    _finish(lambda: examples_api.run_example(name, param))


@app.command()
def verify(
    suite: Annotated[str, typer.Option("--suite", help="exponents, region, appendix, examples, numerics or all")] = "all",
    seed: Annotated[Optional[int], typer.Option("--seed", help="Random seed (overrides RADEMBED_DEFAULT_SEED)")] = None,
    out: Annotated[Optional[Path], typer.Option("--out", "-o", help="Write the verification report here")] = None,
):
    """Run the property suites and report every check."""
    _finish(lambda: verify_api.run_verify(suite, seed, out))


def main():
    """Main entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()

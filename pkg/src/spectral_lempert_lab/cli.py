# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""The CLI entrypoint for spectral-lempert-lab."""

import json
import logging
import sys
from typing import Any, Optional, Sequence, TextIO

import click
from pydantic import ValidationError

from spectral_lempert_lab.bounds import bharali_lower, disc_search_upper, safe_ball_radius
from spectral_lempert_lab.configuration import OutputFormat, RunConfig
from spectral_lempert_lab.discontinuity_lab import (
    PerturbationSpec,
    discontinuity_certificate,
    example_5_1,
    example_5_2,
    green_vs_lempert_chain,
    verify_det_identity,
)
from spectral_lempert_lab.errors import (
    CertificateFailedError,
    ChainInconclusiveError,
    InconclusiveError,
    SpectralLabError,
)
from spectral_lempert_lab.gn_geometry import (
    ball_radius_in_Gn,
    caratheodory_lb_G3,
    certified_inscribed_radius,
)
from spectral_lempert_lab.lifting import lift_through
from spectral_lempert_lab.matrix_core import is_cyclic, sigma
from spectral_lempert_lab.payloads import (
    DiscPayload,
    MatrixPayload,
    PointPayload,
    complex_payload,
    load_disc,
    load_matrix,
    load_point,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64


class ComplexParamType(click.ParamType):
    """Complex number written as 0.1, 0.4j, 0.4i or 1+2j."""

    name = "complex"

    def convert(
        self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]
    ) -> complex:
        """Parse the value.

        Args:
            value: Raw value.
            param: The parameter.
            ctx: The click context.

        Returns:
            The complex number.
        """
        if isinstance(value, complex):
            return value
        try:
            return complex(str(value).replace(" ", "").replace("i", "j"))
        except ValueError:
            self.fail(f"{value!r} is not a complex number", param, ctx)


COMPLEX = ComplexParamType()


def _flatten(prefix: str, value: Any) -> list[tuple[str, str]]:
    """Flatten nested results into dotted key rows.

    Args:
        prefix: Key path so far.
        value: The value to flatten.

    Returns:
        The rows.
    """
    if isinstance(value, dict):
        return [
            row
            for key in sorted(value)
            for row in _flatten(f"{prefix}.{key}" if prefix else str(key), value[key])
        ]
    if isinstance(value, list) and any(isinstance(item, (dict, list)) for item in value):
        return [
            row for index, item in enumerate(value) for row in _flatten(f"{prefix}[{index}]", item)
        ]
    return [(prefix, json.dumps(value))]


def render(result: dict[str, Any], output: OutputFormat) -> str:
    """Render a result.

    Args:
        result: The result dictionary.
        output: Output format.

    Returns:
        Sorted-key JSON, or a two-column table derived from it.
    """
    if output == OutputFormat.JSON:
        return json.dumps(result, sort_keys=True, indent=2)
    rows = _flatten("", result)
    width = max((len(key) for key, _ in rows), default=0)
    return "\n".join(f"{key.ljust(width)}  {value}" for key, value in rows)


def _emit(result: dict[str, Any]) -> None:
    """Write a result in the configured format.

    Args:
        result: The result dictionary.
    """
    cfg: RunConfig = click.get_current_context().find_object(RunConfig) or RunConfig()
    click.echo(render(result, cfg.output))


def _emit_diagnostics(exc: InconclusiveError) -> None:
    """Write the partial result attached to an inconclusive outcome.

    Args:
        exc: The inconclusive outcome.
    """
    if isinstance(exc, CertificateFailedError) and exc.certificate is not None:
        _emit(exc.certificate.to_dict())
    elif isinstance(exc, ChainInconclusiveError):
        _emit(exc.report)


def _perturbation(
    m: int, j: Sequence[int], delta: float, a1: Optional[TextIO]
) -> PerturbationSpec:
    """Build the perturbation from the command options.

    Args:
        m: Size of the nilpotent block.
        j: Superdiagonal positions holding a 1.
        delta: Perturbation size.
        a1: Optional matrix document of the invertible block.

    Returns:
        The perturbation.
    """
    block = load_matrix(a1) if a1 is not None else None
    rows = () if block is None else tuple(tuple(complex(x) for x in row) for row in block)
    n = m + (0 if block is None else block.shape[0])
    return PerturbationSpec(n=n, m=m, J=tuple(sorted(set(j))), delta=delta, A1=rows)


_perturbation_options = [
    click.option("--m", "m", type=int, required=True, help="Size of the nilpotent block."),
    click.option(
        "--j",
        "j",
        type=int,
        multiple=True,
        help="1-based superdiagonal position of the nilpotent block holding a 1.",
    ),
    click.option("--delta", type=float, required=True, help="Size of the perturbation."),
    click.option(
        "--a1",
        type=click.File(mode="r", encoding="utf-8"),
        default=None,
        help="Matrix JSON of the invertible block.",
    ),
]


def perturbation_options(func: Any) -> Any:
    """Attach the perturbation options to a command.

    Args:
        func: The command function.

    Returns:
        The decorated function.
    """
    for option in reversed(_perturbation_options):
        func = option(func)
    return func


@click.group()
@click.option("--tol", type=float, default=None, help="Clustering tolerance.")
@click.option("--grid", type=int, default=None, help="Carathéodory grid, a power of two.")
@click.option("--degree", type=int, default=None, help="Degree cap of searched discs.")
@click.option("--restarts", type=int, default=None, help="Disc search restarts.")
@click.option("--seed", type=int, default=None, help="Seed of every randomised step.")
@click.option("--margin", type=float, default=None, help="Certificate margin.")
@click.option(
    "--output",
    type=click.Choice([member.value for member in OutputFormat]),
    default=None,
    help="Output format.",
)
@click.option(
    "--config-file",
    type=click.File(mode="r", encoding="utf-8"),
    help="The file path containing the configurations.",
)
@click.option(
    "--debug",
    is_flag=True,
    show_default=True,
    default=False,
    help="Debug logging.",
)
@click.pass_context
def cli(  # pylint: disable=too-many-arguments, too-many-positional-arguments
    ctx: click.Context,
    tol: Optional[float],
    grid: Optional[int],
    degree: Optional[int],
    restarts: Optional[int],
    seed: Optional[int],
    margin: Optional[float],
    output: Optional[str],
    config_file: Optional[TextIO],
    debug: bool,
) -> None:
    """Bound the Lempert function of the spectral ball and the symmetrized polydisc.

    Args:
        ctx: The click context.
        tol: Clustering tolerance.
        grid: Carathéodory grid.
        degree: Degree cap of searched discs.
        restarts: Disc search restarts.
        seed: Seed.
        margin: Certificate margin.
        output: Output format.
        config_file: YAML configuration; flags override it.
        debug: Whether to log at debug level.

    Raises:
        UsageError: If the configuration is invalid.
    """
    if debug:
        logging.basicConfig(level=logging.DEBUG)
    flags = {
        "tol": tol,
        "grid": grid,
        "degree": degree,
        "restarts": restarts,
        "seed": seed,
        "margin": margin,
        "output": output,
    }
    try:
        base = RunConfig.from_yaml_file(config_file) if config_file else RunConfig()
        given = {key: value for key, value in flags.items() if value is not None}
        merged = {**base.dict(), **given}
        cfg = RunConfig.parse_obj(merged).with_env_overrides()
    except ValidationError as exc:
        raise click.UsageError(f"Invalid configuration: {exc}") from exc
    logger.debug("Run configuration: %s", cfg)
    ctx.obj = cfg


@cli.command("sigma")
@click.argument("matrix", type=click.File(mode="r", encoding="utf-8"))
def sigma_command(matrix: TextIO) -> None:
    """Print sigma(A).

    Args:
        matrix: Matrix JSON.
    """
    _emit({"coords": PointPayload.from_point(sigma(load_matrix(matrix))).dict()})


@cli.command("cyclic")
@click.argument("matrix", type=click.File(mode="r", encoding="utf-8"))
@click.pass_obj
def cyclic_command(cfg: RunConfig, matrix: TextIO) -> None:
    """Decide whether A is cyclic.

    Args:
        cfg: Run configuration.
        matrix: Matrix JSON.
    """
    _emit({"cyclic": is_cyclic(load_matrix(matrix), tol=cfg.tol, seed=cfg.seed)})


@cli.command("bharali")
@click.argument("first", type=click.File(mode="r", encoding="utf-8"))
@click.argument("second", type=click.File(mode="r", encoding="utf-8"))
@click.pass_obj
def bharali_command(cfg: RunConfig, first: TextIO, second: TextIO) -> None:
    """Print the spectral lower bound for l(A, B).

    Args:
        cfg: Run configuration.
        first: Matrix JSON of A.
        second: Matrix JSON of B.
    """
    value = bharali_lower(load_matrix(first), load_matrix(second), cfg.tol, seed=cfg.seed)
    _emit({"value": value})


@cli.command("cara3")
@click.argument("source", type=click.File(mode="r", encoding="utf-8"))
@click.argument("target", type=click.File(mode="r", encoding="utf-8"))
@click.pass_obj
def cara3_command(cfg: RunConfig, source: TextIO, target: TextIO) -> None:
    """Print the Carathéodory lower bound on G_3.

    Args:
        cfg: Run configuration.
        source: Point JSON of s.
        target: Point JSON of t.
    """
    _emit({"value": caratheodory_lb_G3(load_point(source), load_point(target), cfg.grid)})


@cli.command("disc-search")
@click.argument("source", type=click.File(mode="r", encoding="utf-8"))
@click.argument("target", type=click.File(mode="r", encoding="utf-8"))
@click.pass_obj
def disc_search_command(cfg: RunConfig, source: TextIO, target: TextIO) -> None:
    """Search a polynomial disc through s and t.

    Args:
        cfg: Run configuration.
        source: Point JSON of s.
        target: Point JSON of t.
    """
    s, t = load_point(source), load_point(target)
    alpha, disc = disc_search_upper(
        s,
        t,
        cfg.disc_degree(s.n),
        cfg.restarts,
        cfg.seed,
        cfg.boundary_grid,
        cfg.tol,
        membership_margin=cfg.membership_margin,
    )
    _emit({"alpha": alpha, "disc": DiscPayload.from_disc(disc).dict()})


@cli.command("lift")
@click.argument("start", type=click.File(mode="r", encoding="utf-8"))
@click.argument("end", type=click.File(mode="r", encoding="utf-8"))
@click.argument("disc", type=click.File(mode="r", encoding="utf-8"))
@click.option("--zeta0", type=COMPLEX, required=True, help="Node where the disc meets A.")
@click.pass_obj
def lift_command(
    cfg: RunConfig, start: TextIO, end: TextIO, disc: TextIO, zeta0: complex
) -> None:
    """Lift a disc through B at 0 and a cyclic A at zeta0.

    Args:
        cfg: Run configuration.
        start: Matrix JSON of B.
        end: Matrix JSON of A.
        disc: Disc JSON.
        zeta0: The second node.
    """
    matrix_disc = lift_through(
        load_matrix(start), load_matrix(end), load_disc(disc), zeta0, cfg.tol, cfg.seed
    )
    assert matrix_disc.lift is not None  # nosec B101
    _emit(
        {
            "zeta0": complex_payload(zeta0),
            "lift": matrix_disc.lift.to_dict(),
            "at_zero": MatrixPayload.from_matrix(matrix_disc(0)).dict(),
            "at_zeta0": MatrixPayload.from_matrix(matrix_disc(zeta0)).dict(),
            "verified": True,
        }
    )


@cli.command("detcheck")
@perturbation_options
def detcheck_command(m: int, j: Sequence[int], delta: float, a1: Optional[TextIO]) -> None:
    """Compare sigma(B_0) with (0, ..., 0, ±delta^(m-r)).

    Args:
        m: Size of the nilpotent block.
        j: Superdiagonal positions holding a 1.
        delta: Perturbation size.
        a1: Optional matrix JSON of the invertible block.
    """
    spec = _perturbation(m, j, delta, a1)
    check = verify_det_identity(spec)
    _emit(
        {
            "residual": check.residual,
            "observed_sign": check.observed_sign,
            "expected_sign": (-1) ** spec.r,
        }
    )


@cli.command("discont")
@perturbation_options
@click.option(
    "--approximant",
    "approximants",
    type=int,
    multiple=True,
    default=(10, 100),
    show_default=True,
    help="Index j of a cyclic approximant.",
)
@click.option("--auto-shrink", is_flag=True, default=False, help="Halve delta on failure.")
@click.pass_obj
def discont_command(  # pylint: disable=too-many-arguments, too-many-positional-arguments
    cfg: RunConfig,
    m: int,
    j: Sequence[int],
    delta: float,
    a1: Optional[TextIO],
    approximants: Sequence[int],
    auto_shrink: bool,
) -> None:
    """Certify the discontinuity at a derogatory matrix.

    Args:
        cfg: Run configuration.
        m: Size of the nilpotent block.
        j: Superdiagonal positions holding a 1.
        delta: Perturbation size.
        a1: Optional matrix JSON of the invertible block.
        approximants: Indices of the approximants.
        auto_shrink: Whether to halve delta on failure.
    """
    spec = _perturbation(m, j, delta, a1)
    try:
        certificate = discontinuity_certificate(spec, tuple(approximants), cfg, auto_shrink)
    except InconclusiveError as exc:
        _emit_diagnostics(exc)
        raise
    _emit(certificate.to_dict())


@cli.command("example51")
@click.option("--eps", type=float, default=0.1, show_default=True, help="Diagonal size.")
@click.option("--auto-shrink", is_flag=True, default=False, help="Halve eps on failure.")
@click.pass_obj
def example51_command(cfg: RunConfig, eps: float, auto_shrink: bool) -> None:
    """Certify the nilpotent-versus-diagonal gap.

    Args:
        cfg: Run configuration.
        eps: Size of the diagonal entries.
        auto_shrink: Whether to halve eps on failure.
    """
    try:
        certificate = example_5_1(eps, cfg, auto_shrink)
    except InconclusiveError as exc:
        _emit_diagnostics(exc)
        raise
    _emit(certificate.to_dict())


@cli.command("example52")
@click.option("--mu", type=COMPLEX, default="0.1", show_default=True, help="Eigenvalue of B.")
@click.pass_obj
def example52_command(cfg: RunConfig, mu: complex) -> None:
    """Bound l(A, mu I + J_3) for the nilpotent A of rank one.

    Args:
        cfg: Run configuration.
        mu: Eigenvalue of B.
    """
    _emit(example_5_2(mu, cfg).to_dict())


@cli.command("green-chain")
@click.argument("matrix", type=click.File(mode="r", encoding="utf-8"))
@click.option("--mu", type=COMPLEX, default="0", show_default=True, help="Eigenvalue of B_0.")
@click.option("--alpha", type=COMPLEX, default="0.1", show_default=True, help="Superdiagonal.")
@click.pass_obj
def green_chain_command(cfg: RunConfig, matrix: TextIO, mu: complex, alpha: complex) -> None:
    """Certify l(A, mu I) > g(A, mu I).

    Args:
        cfg: Run configuration.
        matrix: Matrix JSON of a cyclic A.
        mu: Eigenvalue of B_0.
        alpha: Superdiagonal of B_alpha.
    """
    try:
        report = green_vs_lempert_chain(load_matrix(matrix), mu, alpha, cfg)
    except InconclusiveError as exc:
        _emit_diagnostics(exc)
        raise
    _emit(report)


@cli.command("ball-radius")
@click.option("--n", "n", type=int, required=True, help="Dimension.")
@click.pass_obj
def ball_radius_command(cfg: RunConfig, n: int) -> None:
    """Print the sampled, certified and safe inscribed radii of G_n.

    Args:
        cfg: Run configuration.
        n: Dimension.
    """
    _emit(
        {
            "n": n,
            "sampled": ball_radius_in_Gn(n, cfg.directions, cfg.seed),
            "certified": certified_inscribed_radius(n),
            "safe": safe_ball_radius(n, cfg.directions, cfg.seed),
        }
    )


def run(argv: Sequence[str]) -> int:
    """Run a command line and map the outcome to an exit code.

    Args:
        argv: Arguments after the program name.

    Returns:
        0 on success, 2 on an inconclusive certificate, 1 on any other error, 64 on usage errors.
    """
    try:
        outcome = cli.main(
            args=list(argv), prog_name="spectral-lempert-lab", standalone_mode=False
        )
    except click.ClickException as exc:
        click.echo(f"Usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted", err=True)
        return EXIT_ERROR
    except InconclusiveError as exc:
        click.echo(f"Inconclusive: {exc}", err=True)
        return EXIT_INCONCLUSIVE
    except SpectralLabError as exc:
        logger.debug("Command failed", exc_info=True)
        click.echo(f"Error: {exc}", err=True)
        return EXIT_ERROR
    return outcome if isinstance(outcome, int) else EXIT_OK


def main() -> None:  # pragma: no cover
    """Run the CLI and exit with its code."""
    sys.exit(run(sys.argv[1:]))

"""Command line surface"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import click

from ... import hooks
from ..bases.bases import (
    BasisKind,
    all_rules_count,
    bstar,
    double_support_bstar,
    format_basis,
    representative_rules,
)
from ..bases.basis_builder import BasisBuilder
from ..closure.closure import enumerate_closures, format_lattice
from ..constants import (
    COMPARE_COLUMNS,
    EXIT_NEGATIVE_VERDICT,
    EXIT_OK,
    SWEEP_CSV_HEADER,
)
from ..dataset.dataset import Dataset, load_dataset, vocabulary_from_rules
from ..entailment2.entailment2 import (
    counterexample_search,
    derive_two_premise,
    two_premise_entails,
)
from ..exceptions import InputError, RuleBasesError, ThresholdError
from ..handlers import handle_errors
from ..implications.implications import (
    ImplicationSet,
    gd_basis,
    iteration_free_basis,
)
from ..logger import bases_logger, configure_logging
from ..redundancy.calculus import check_trace, derive, format_trace, parse_trace
from ..redundancy.redundancy import closure_redundant, plainly_redundant
from ..utils import parse_gamma, parse_support

BASIS_KINDS = {
    "rr": BasisKind.RR,
    "bstar": BasisKind.BSTAR,
    "gd": BasisKind.GD,
    "iterfree": BasisKind.ITER_FREE,
    "bstar-minmax": BasisKind.BSTAR_MINMAX,
    "bstar-minmin": BasisKind.BSTAR_MINMIN,
}


@dataclass(frozen=True)
class RunConfig:
    """Options shared by the subcommands, as parsed from the command line."""

    input: Path | None = None
    gamma: Fraction | None = None
    support: str = "1"
    output: Path | None = None
    mode: str = "closure"
    implications: tuple[str, ...] = ()
    hide_empty_antecedent: bool = False
    double_support: bool = False
    show_trace: bool = False
    trace: Path | None = None
    counterexample: bool = False
    bound: int | None = None
    convention: str = "traditional_singleton"

    def load(self) -> Dataset:
        if self.input is None:
            raise InputError("this command needs a transaction file")
        return load_dataset(self.input)

    def support_floor(self, d: Dataset) -> int:
        return parse_support(self.support, len(d))

    def require_gamma(self) -> Fraction:
        if self.gamma is None:
            raise ThresholdError("a confidence threshold (--gamma) is required")
        return self.gamma


@dataclass(frozen=True)
class CommandResult:
    output: str
    exit_code: int = EXIT_OK


def _rule_context(cfg: RunConfig, texts: Sequence[str]) -> Dataset:
    """The dataset naming the items; a transaction-free one when no input is given."""
    if cfg.input is not None:
        return cfg.load()
    return Dataset(vocabulary_from_rules([*texts, *cfg.implications]), [])


def _implications(cfg: RunConfig, d: Dataset) -> ImplicationSet:
    if cfg.implications:
        return ImplicationSet(tuple(d.parse_rule(text) for text in cfg.implications))
    if cfg.input is None or len(d) == 0:
        return ImplicationSet()
    return gd_basis(enumerate_closures(d, cfg.support_floor(d)), d)


def cmd_mine(cfg: RunConfig) -> CommandResult:
    d = cfg.load()
    return CommandResult(format_lattice(enumerate_closures(d, cfg.support_floor(d))))


def cmd_basis(cfg: RunConfig, kind: str) -> CommandResult:
    d = cfg.load()
    floor = cfg.support_floor(d)

    if cfg.double_support and BASIS_KINDS[kind] is BasisKind.BSTAR:
        basis = double_support_bstar(d, cfg.require_gamma(), max(floor, 1))
    else:
        builder = BasisBuilder()
        builder.dataset = d
        builder.kind = BASIS_KINDS[kind]
        builder.support_floor = floor
        if cfg.gamma is not None:
            builder.gamma = cfg.gamma
        basis = builder.build()

    return CommandResult(format_basis(basis, d, cfg.hide_empty_antecedent))


def _verdict_line(redundant: bool) -> str:
    return "redundant" if redundant else "not redundant"


def cmd_check(cfg: RunConfig, premise: str, conclusion: str) -> CommandResult:
    """Decides whether the premise makes the conclusion redundant; replays a trace."""
    d = _rule_context(cfg, [premise, conclusion])
    r1, r0 = d.parse_rule(premise), d.parse_rule(conclusion)
    B = _implications(cfg, d) if cfg.mode == "closure" else ImplicationSet()

    if cfg.mode == "plain":
        redundant = plainly_redundant(r1, r0)
    elif cfg.mode == "closure":
        redundant = closure_redundant(B, r1, r0)
    else:
        raise InputError(f"unknown redundancy mode {cfg.mode!r}")

    lines = [_verdict_line(redundant)]

    if cfg.trace is not None:
        try:
            text = cfg.trace.read_text()
        except OSError as error:
            raise InputError(f"cannot read {cfg.trace}: {error}") from error
        trace = parse_trace(text, d)
        replayed = (
            check_trace(B, trace)
            and set(trace.root_premises) <= {r1}
            and trace.final == r0
        )
        lines.append(f"trace: {'valid' if replayed else 'invalid'}")
        redundant = redundant and replayed
    elif cfg.show_trace and redundant:
        lines.append(format_trace(derive(B, r1, r0, cfg.mode), d).rstrip("\n"))

    return CommandResult(
        "\n".join(lines) + "\n", EXIT_OK if redundant else EXIT_NEGATIVE_VERDICT
    )


def cmd_derive(
    cfg: RunConfig, premise: str, conclusion: str, second_premise: str | None = None
) -> CommandResult:
    """Prints a derivation of the conclusion; two premises go through (2A)."""
    texts = [premise, conclusion] + ([second_premise] if second_premise else [])
    d = _rule_context(cfg, texts)
    r1, r0 = d.parse_rule(premise), d.parse_rule(conclusion)
    plain = cfg.mode == "plain" and second_premise is None
    B = ImplicationSet() if plain else _implications(cfg, d)

    if second_premise is not None:
        trace = derive_two_premise(B, r1, d.parse_rule(second_premise), r0)
    else:
        if plain:
            redundant = plainly_redundant(r1, r0)
        else:
            redundant = closure_redundant(B, r1, r0)
        if not redundant:
            return CommandResult(_verdict_line(False) + "\n", EXIT_NEGATIVE_VERDICT)
        trace = derive(B, r1, r0, cfg.mode)

    return CommandResult(format_trace(trace, d))


def cmd_entail2(
    cfg: RunConfig, r1_text: str, r2_text: str, r0_text: str
) -> CommandResult:
    d = _rule_context(cfg, [r1_text, r2_text, r0_text])
    r1, r2, r0 = (d.parse_rule(text) for text in (r1_text, r2_text, r0_text))
    B = _implications(cfg, d)
    gamma = cfg.require_gamma()

    verdict = two_premise_entails(B, r1, r2, r0, gamma)
    lines = [f"holds: {'yes' if verdict.holds else 'no'} ({verdict.reason.value})"]
    if verdict.failed_conditions:
        lines.append(f"failed conditions: {' '.join(verdict.failed_conditions)}")

    if cfg.counterexample and not verdict.holds:
        bound_kwargs = {} if cfg.bound is None else {"bound": cfg.bound}
        witness = counterexample_search(
            B, r1, r2, r0, gamma, names=d.names, **bound_kwargs
        )
        if witness is None:
            lines.append("no counterexample within the bound")
        else:
            lines.append("counterexample:")
            lines.append(witness.to_fimi().rstrip("\n"))

    return CommandResult(
        "\n".join(lines) + "\n",
        EXIT_OK if verdict.holds else EXIT_NEGATIVE_VERDICT,
    )


def sweep_gammas(start: Fraction, stop: Fraction, step: Fraction) -> list[Fraction]:
    """Thresholds from start towards stop, both included when reached."""
    if step <= 0:
        raise ThresholdError("the sweep step must be positive")
    direction = -1 if start > stop else 1
    gammas = []
    gamma = start
    while (gamma >= stop) if direction < 0 else (gamma <= stop):
        gammas.append(gamma)
        gamma += direction * step
    return gammas


def cmd_sweep(
    cfg: RunConfig, start: Fraction, stop: Fraction, step: Fraction
) -> CommandResult:
    """CSV of basis sizes per confidence threshold; GD does not depend on it."""
    d = cfg.load()
    lattice = enumerate_closures(d, cfg.support_floor(d))
    gd_size = len(gd_basis(lattice, d))

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    for gamma in sweep_gammas(start, stop, step):
        if gamma >= 1:
            continue
        rr_size = len(representative_rules(d, lattice, gamma))
        bstar_size = len(bstar(d, lattice, gamma))
        writer.writerow(
            [f"{float(gamma):.4f}", rr_size, bstar_size, gd_size, bstar_size + gd_size]
        )
    return CommandResult(buffer.getvalue())


def compare_row(
    d: Dataset, gamma: Fraction, tau: int, convention: str = "traditional_singleton"
) -> dict[str, int]:
    """Rule counts of the traditional set and of each basis at one threshold pair."""
    lattice = enumerate_closures(d, tau)
    traditional = all_rules_count(d, gamma, tau, convention)
    implications = len(iteration_free_basis(lattice, d))
    gd = len(gd_basis(lattice, d))
    partial = len(bstar(d, lattice, gamma))
    return dict(
        zip(COMPARE_COLUMNS, (traditional, implications, gd, partial, gd + partial))
    )


def cmd_compare(cfg: RunConfig) -> CommandResult:
    d = cfg.load()
    row = compare_row(d, cfg.require_gamma(), cfg.support_floor(d), cfg.convention)
    values = [str(row[name]) for name in COMPARE_COLUMNS]
    lines = ["\t".join(COMPARE_COLUMNS), "\t".join(values)]
    return CommandResult("\n".join(lines) + "\n")


def _run(
    ctx: click.Context, command: str, action: Callable[[], CommandResult]
) -> None:
    output: Path | None = ctx.obj.get("output") if ctx.obj else None
    try:
        result = action()
    except RuleBasesError as error:
        ctx.exit(handle_errors(error, command))
        return

    if output is not None:
        output.write_text(result.output)
    else:
        click.echo(result.output, nl=False)
    ctx.exit(result.exit_code)


class GammaType(click.ParamType):
    name = "gamma"

    def convert(self, value, param, ctx) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return parse_gamma(value)
        except ThresholdError as error:
            self.fail(str(error), param, ctx)


GAMMA = GammaType()

input_argument = click.argument(
    "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
support_option = click.option(
    "-s",
    "--support",
    default="1",
    show_default=True,
    help='Support floor: a count, or a fraction such as "0.4" or "2/5".',
)
gamma_option = click.option(
    "-g",
    "--gamma",
    type=GAMMA,
    default=None,
    help='Confidence threshold, "m/n" or decimal.',
)
implication_option = click.option(
    "--implication",
    "implications",
    multiple=True,
    help='Implication assumed to hold, e.g. "A C => B". Repeatable.',
)
dataset_option = click.option(
    "-i",
    "--input",
    "input_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Transaction file naming the items and, by default, giving the implications.",
)
mode_option = click.option(
    "--mode",
    type=click.Choice(["plain", "closure"]),
    default="closure",
    show_default=True,
)


@click.group(help=hooks.app_description)
@click.version_option(hooks.app_version, prog_name=hooks.console_script)
@click.option("-v", "--verbose", count=True, help="Repeat for more log output.")
@click.option("--log-file", type=click.Path(path_type=Path), default=None)
@click.option(
    "-o",
    "--output",
    type=click.Path(path_type=Path),
    default=None,
    help="Write here instead of stdout.",
)
@click.pass_context
def cli(
    ctx: click.Context, verbose: int, log_file: Path | None, output: Path | None
) -> None:
    level = ("WARNING", "INFO", "DEBUG")[min(verbose, 2)]
    configure_logging(level, log_file)
    ctx.ensure_object(dict)
    ctx.obj["output"] = output
    bases_logger.debug("Running %s", ctx.invoked_subcommand)


@cli.command()
@input_argument
@support_option
@click.pass_context
def mine(ctx: click.Context, input_path: Path, support: str) -> None:
    """Write the closed itemset lattice."""
    cfg = RunConfig(input=input_path, support=support)
    _run(ctx, "mine", lambda: cmd_mine(cfg))


@cli.command()
@click.argument("kind", type=click.Choice(sorted(BASIS_KINDS)))
@input_argument
@gamma_option
@support_option
@click.option(
    "--hide-empty-antecedent",
    is_flag=True,
    help="Do not print rules with an empty left side.",
)
@click.option(
    "--double-support",
    is_flag=True,
    help="Mine B* at ceil(gamma * support), then filter.",
)
@click.pass_context
def basis(
    ctx: click.Context,
    kind: str,
    input_path: Path,
    gamma: Fraction | None,
    support: str,
    hide_empty_antecedent: bool,
    double_support: bool,
) -> None:
    """Build a rule basis."""
    cfg = RunConfig(
        input=input_path,
        gamma=gamma,
        support=support,
        hide_empty_antecedent=hide_empty_antecedent,
        double_support=double_support,
    )
    _run(ctx, "basis", lambda: cmd_basis(cfg, kind))


@cli.command()
@click.argument("premise")
@click.argument("conclusion")
@dataset_option
@support_option
@implication_option
@mode_option
@click.option("--show-trace", is_flag=True, help="Print a derivation when redundant.")
@click.option(
    "--trace",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Replay a stored derivation.",
)
@click.pass_context
def check(
    ctx: click.Context,
    premise: str,
    conclusion: str,
    input_path: Path | None,
    support: str,
    implications: tuple[str, ...],
    mode: str,
    show_trace: bool,
    trace: Path | None,
) -> None:
    """Is CONCLUSION redundant with respect to PREMISE?"""
    cfg = RunConfig(
        input=input_path,
        support=support,
        implications=implications,
        mode=mode,
        show_trace=show_trace,
        trace=trace,
    )
    _run(ctx, "check", lambda: cmd_check(cfg, premise, conclusion))


@cli.command(name="derive")
@click.argument("premise")
@click.argument("conclusion")
@click.option(
    "--second-premise", default=None, help="Derive through (2A) from two premises."
)
@dataset_option
@support_option
@implication_option
@mode_option
@click.pass_context
def derive_command(
    ctx: click.Context,
    premise: str,
    conclusion: str,
    second_premise: str | None,
    input_path: Path | None,
    support: str,
    implications: tuple[str, ...],
    mode: str,
) -> None:
    """Print a derivation of CONCLUSION."""
    cfg = RunConfig(
        input=input_path, support=support, implications=implications, mode=mode
    )
    _run(ctx, "derive", lambda: cmd_derive(cfg, premise, conclusion, second_premise))


@cli.command()
@click.argument("first_premise")
@click.argument("second_premise")
@click.argument("conclusion")
@gamma_option
@dataset_option
@support_option
@implication_option
@click.option(
    "--counterexample",
    is_flag=True,
    help="Print a refuting dataset when entailment fails.",
)
@click.option(
    "--bound",
    type=click.IntRange(min=1),
    default=None,
    help="Largest transaction multiplicity.",
)
@click.pass_context
def entail2(
    ctx: click.Context,
    first_premise: str,
    second_premise: str,
    conclusion: str,
    gamma: Fraction | None,
    input_path: Path | None,
    support: str,
    implications: tuple[str, ...],
    counterexample: bool,
    bound: int | None,
) -> None:
    """Do the two premises gamma-entail CONCLUSION?"""
    cfg = RunConfig(
        input=input_path,
        gamma=gamma,
        support=support,
        implications=implications,
        counterexample=counterexample,
        bound=bound,
    )
    _run(
        ctx,
        "entail2",
        lambda: cmd_entail2(cfg, first_premise, second_premise, conclusion),
    )


@cli.command()
@input_argument
@support_option
@click.option("--from", "start", type=GAMMA, default="0.99", show_default=True)
@click.option("--to", "stop", type=GAMMA, default="0.51", show_default=True)
@click.option("--step", type=GAMMA, default="0.01", show_default=True)
@click.pass_context
def sweep(
    ctx: click.Context,
    input_path: Path,
    support: str,
    start: Fraction,
    stop: Fraction,
    step: Fraction,
) -> None:
    """Basis sizes across confidence thresholds, as CSV."""
    cfg = RunConfig(input=input_path, support=support)
    _run(ctx, "sweep", lambda: cmd_sweep(cfg, start, stop, step))


@cli.command()
@input_argument
@gamma_option
@support_option
@click.option(
    "--convention",
    type=click.Choice(["traditional_singleton", "general"]),
    default="traditional_singleton",
    show_default=True,
)
@click.pass_context
def compare(
    ctx: click.Context,
    input_path: Path,
    gamma: Fraction | None,
    support: str,
    convention: str,
) -> None:
    """Rule counts: traditional, iteration-free, GD, B* and GD + B*."""
    cfg = RunConfig(
        input=input_path, gamma=gamma, support=support, convention=convention
    )
    _run(ctx, "compare", lambda: cmd_compare(cfg))

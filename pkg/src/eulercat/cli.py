"""Command-line interface for eulercat."""

import random
import sys
from pathlib import Path
from typing import List, Optional

import click
import yaml

from . import euler, generators
from .catfile import dump_category, load_category, write_category, write_levels
from .config import EulercatConfig
from .euler import EulerResult, InvalidFiltration, NFiltration, UndefinedReason
from .fincat import CategoryError, FinCat, from_monoid, is_acyclic
from .nerve import INFINITE, iter_nondegenerate_chains, level_counts, max_nondegenerate_length
from .reporters import ReporterFactory, ReportTable
from .simplex import BoundExceeded
from .subdivision import sd, sd_truncated
from .verify import FAMILIES, VerifyHarness

METHODS = ("leinster", "series", "l2", "fil", "l2ext")

MONOID_PRESETS = {
    "M": generators.monoid_m,
    "Z2": generators.cyclic_group_2,
    "trivial": lambda: from_monoid(["e"], "e", {}),
}

format_option = click.option(
    "--format", "fmt",
    type=click.Choice(["tsv", "json", "yaml"]),
    default="tsv",
    show_default=True,
    help="Output format",
)


@click.group()
@click.version_option(package_name="eulercat")
@click.option(
    "-c", "--config", "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Path to configuration file (YAML)",
)
@click.option("-v", "--verbose", is_flag=True, help="Enable verbose logging")
@click.pass_context
def main(ctx: click.Context, config_path: Optional[str], verbose: bool):
    """eulercat - Euler characteristics of finite categories, computed exactly."""
    try:
        config = EulercatConfig.from_yaml(config_path) if config_path else EulercatConfig.from_env()
    except Exception as e:
        click.echo(f"Error loading config: {e}", err=True)
        sys.exit(2)

    if verbose:
        config.log_level = "DEBUG"

    errors = config.validate()
    if errors:
        click.echo("Configuration errors:", err=True)
        for error in errors:
            click.echo(f"  - {error}", err=True)
        sys.exit(2)

    config.setup_logging()
    ctx.obj = config


def _load(path: str) -> FinCat:
    try:
        return load_category(path)
    except (FileNotFoundError, CategoryError) as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(2)


def _emit(table: ReportTable, fmt: str) -> None:
    text = ReporterFactory.create(fmt).render(table)
    if text:
        click.echo(text)


def _parse_methods(spec: str) -> List[str]:
    methods: List[str] = []
    for part in spec.split(","):
        name = part.strip().lower()
        if name == "all":
            wanted = list(METHODS)
        elif name in METHODS:
            wanted = [name]
        else:
            raise click.BadParameter(
                f"{part!r} is not one of {', '.join(METHODS + ('all',))}", param_hint="--method"
            )
        methods.extend(m for m in wanted if m not in methods)
    return methods


def _parse_filtration(spec: str) -> NFiltration:
    try:
        return NFiltration(tuple(int(v) for v in spec.split(",") if v.strip()))
    except ValueError:
        raise click.BadParameter(
            f"expected comma-separated natural numbers, got {spec!r}", param_hint="--filtration"
        )


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def validate(path: str):
    """Validate a category file."""
    cat = _load(path)
    click.echo("✅ Category is valid")
    click.echo(f"  Objects: {len(cat.objects)}")
    non_identity = len(cat.non_identity_morphisms)
    click.echo(f"  Morphisms: {len(cat.morphisms)} ({non_identity} non-identity)")
    click.echo(f"  Acyclic: {'yes' if is_acyclic(cat) else 'no'}")


@main.command()
@click.option(
    "-m", "--method", "method_spec",
    default="all",
    show_default=True,
    help="Comma-separated subset of leinster, series, l2, fil, l2ext, all",
)
@click.option("--filtration", help="Explicit N-filtration v0,v1,... in object order (for fil)")
@format_option
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def chi(method_spec: str, filtration: Optional[str], fmt: str, path: str):
    """Compute Euler characteristics of a category."""
    methods = _parse_methods(method_spec)
    mu = _parse_filtration(filtration) if filtration else None
    cat = _load(path)

    table = ReportTable(("method", "value"), meta={"category": path})
    for method in methods:
        if method == "leinster":
            result = euler.chi_leinster(cat)
        elif method == "series":
            result = euler.chi_series(cat)
        elif method == "l2":
            result = euler.chi_l2_acyclic(cat)
        elif method == "l2ext":
            result = euler.chi_ext_l2_of_sd_op(cat)
        elif not is_acyclic(cat):
            result = EulerResult.undefined(UndefinedReason.NOT_ACYCLIC)
        else:
            try:
                result = euler.chi_fil(cat, mu or euler.filtration_from_topological_order(cat))
            except InvalidFiltration as e:
                click.echo(f"Error: invalid filtration: {e}", err=True)
                sys.exit(2)
        table.add(method, result)
    _emit(table, fmt)


@main.command()
@click.option("--max", "max_n", type=click.IntRange(min=0), default=5, show_default=True,
              help="Highest chain length to count")
@click.option("--list", "list_chains", is_flag=True, help="Also list the chains of each level")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def nerve(config: EulercatConfig, max_n: int, list_chains: bool, path: str):
    """Count non-degenerate chains of a category, level by level."""
    cat = _load(path)
    for n, count in enumerate(level_counts(cat, max_n)):
        click.echo(f"{n}\t{count}")
        if list_chains:
            for chain in iter_nondegenerate_chains(cat, n):
                click.echo(f"\t{chain.label(config.ascii_labels)}")


@main.command(name="sd")
@click.option("--max-level", type=click.IntRange(min=0),
              help="Truncate to chains of length at most K (required for non-acyclic input)")
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True,
              help="Output category file")
@click.option(
    "--ascii", "ascii_only", is_flag=True, help="ASCII labels (<f;g> instead of ⟨f;g⟩)"
)
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def subdivide(
    config: EulercatConfig, max_level: Optional[int], output: str, ascii_only: bool, path: str
):
    """Write the barycentric subdivision Sd(C) as a category file."""
    cat = _load(path)
    ascii_only = ascii_only or config.ascii_labels

    try:
        if max_level is not None:
            result = sd_truncated(cat, max_level, ascii_only)
        elif max_nondegenerate_length(cat) is INFINITE:
            click.echo(
                "Error: category is not acyclic, so Sd is infinite; pass --max-level", err=True
            )
            sys.exit(2)
        else:
            result = sd(cat, ascii_only)
    except CategoryError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(2)

    write_category(output, result.category, ascii_only)
    sidecar = write_levels(output, result.category, result.levels)
    sub = result.category
    click.echo(f"✅ Wrote {output}: {len(sub.objects)} objects, {len(sub.morphisms)} morphisms")
    click.echo(f"   Levels: {sidecar}")


@main.command()
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Simplex dimension")
@click.option("--check-all", is_flag=True, help="Check every dimension from 0 up to n")
@format_option
@click.pass_obj
def simplex(config: EulercatConfig, n: int, check_all: bool, fmt: str):
    """Check equivalence simplices: D∘D = 0, contracting homotopy, exactness."""
    try:
        checks = VerifyHarness(config).simplex_sweep(n, all_up_to=check_all)
    except BoundExceeded as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(2)

    table = ReportTable(("relation", "verdict"), meta={"n": n, "relations": len(checks)})
    for check in checks:
        table.add(check.rel.rel_id, check.verdict)
    _emit(table, fmt)

    if not all(check.passed for check in checks):
        sys.exit(1)


@main.command()
@click.option("--family", type=click.Choice(FAMILIES), required=True, help="Generated family")
@click.option("--size", type=click.IntRange(min=0), required=True, help="Family size parameter")
@click.option("--seed", type=int, default=0, show_default=True, help="Random seed")
@click.option("--count", type=click.IntRange(min=1),
              help="Random categories to draw (acyclic-random; default from config)")
@format_option
@click.pass_obj
def verify(
    config: EulercatConfig, family: str, size: int, seed: int, count: Optional[int], fmt: str
):
    """Run the theorem checks over a generated family of categories."""
    if count is not None:
        config.random_count = count
    try:
        report = VerifyHarness(config).run(family, size, seed)
    except ValueError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(2)

    _emit(report.to_table(), fmt)
    click.echo(
        f"{report.category_count} categories, {len(report.records)} checks, "
        f"{len(report.failed)} failed",
        err=True,
    )
    if not report.passed:
        sys.exit(1)


@main.command()
@click.option("-o", "--output", type=click.Path(), help="Output file path")
def init(output: Optional[str]):
    """Generate a sample configuration file."""
    sample = (
        "# eulercat configuration\n"
        + yaml.safe_dump(EulercatConfig(threads=1).to_dict(), sort_keys=False)
        + "# threads defaults to EULERCAT_THREADS or the CPU count when omitted\n"
    )
    if output:
        Path(output).write_text(sample)
        click.echo(f"✅ Sample config written to: {output}")
    else:
        click.echo(sample, nl=False)


# -- gen ---------------------------------------------------------------------


@main.group()
def gen():
    """Generate a category file."""
    pass


output_option = click.option(
    "-o", "--output", type=click.Path(dir_okay=False), help="Output file (default: stdout)"
)


def _write(config: EulercatConfig, cat: FinCat, output: Optional[str]) -> None:
    if output:
        write_category(output, cat, config.ascii_labels)
        click.echo(f"✅ Wrote {output}", err=True)
    else:
        click.echo(
            yaml.safe_dump(
                dump_category(cat, config.ascii_labels), allow_unicode=True, sort_keys=False
            ),
            nl=False,
        )


@gen.command("poset-chain")
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Number of elements")
@output_option
@click.pass_obj
def gen_poset_chain(config: EulercatConfig, n: int, output: Optional[str]):
    """The chain 0 < 1 < ... < n-1."""
    _write(config, generators.chain_poset(n), output)


@gen.command("poset-random")
@click.option("--objects", type=click.IntRange(min=0), required=True, help="Number of elements")
@click.option("--seed", type=int, default=0, show_default=True)
@output_option
@click.pass_obj
def gen_poset_random(config: EulercatConfig, objects: int, seed: int, output: Optional[str]):
    """A random poset, deterministic in the seed."""
    _write(config, generators.random_poset(objects, seed), output)


@gen.command("acyclic-random")
@click.option("--objects", type=click.IntRange(min=0), required=True, help="Number of objects")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mode", type=click.Choice(generators.RANDOM_MODES), help="Default: drawn at random")
@click.option("--max-multiplicity", type=click.IntRange(min=1, max=8), default=2,
              show_default=True, help="Parallel generating arrows per pair")
@output_option
@click.pass_obj
def gen_acyclic_random(
    config: EulercatConfig,
    objects: int,
    seed: int,
    mode: Optional[str],
    max_multiplicity: int,
    output: Optional[str],
):
    """A random finite acyclic category (poset, free, or truncated path category)."""
    rng = random.Random(seed)
    _write(config, generators.random_acyclic(rng, objects, mode, max_multiplicity), output)


@gen.command("monoid")
@click.option("--preset", type=click.Choice(sorted(MONOID_PRESETS)), required=True)
@output_option
@click.pass_obj
def gen_monoid(config: EulercatConfig, preset: str, output: Optional[str]):
    """A one-object category from a named monoid."""
    _write(config, MONOID_PRESETS[preset](), output)


@gen.command("iso-pair")
@output_option
@click.pass_obj
def gen_iso_pair(config: EulercatConfig, output: Optional[str]):
    """Two objects joined by an isomorphism."""
    _write(config, generators.iso_pair(), output)


@gen.command("pole-witness")
@output_option
@click.pass_obj
def gen_pole_witness(config: EulercatConfig, output: Optional[str]):
    """A category whose series characteristic has a pole at -1."""
    _write(config, generators.pole_witness(), output)


if __name__ == "__main__":
    main()

#!/usr/bin/env python

import logging
import sys
from pathlib import Path
from typing import Optional, Type

import click
from click_help_colors import HelpColorsCommand, HelpColorsGroup
from rich import traceback

from poissonforge.config.config import configure_command, source_config

traceback.install()

from poissonforge.CheckSuite import CheckSuite, get_all_suites
from poissonforge.config.settings import Settings
from poissonforge.exceptions import (
    EXIT_CAPABILITY,
    EXIT_FAILED,
    EXIT_INPUT,
    EXIT_INTERNAL,
    EXIT_OK,
    CapabilityException,
    InputException,
    StructureException,
)
from poissonforge.output import print, setup_logging
from poissonforge.report import Report
from poissonforge.specfile.SpecLoader import FIXTURE_DIR, SpecLoader

logger = logging.getLogger(__name__)


@click.group(
    cls=HelpColorsGroup, help_headers_color="yellow", help_options_color="green"
)
@click.option("-v", "--verbose", is_flag=True, default=False, help="Log at debug level")
def cli(verbose: bool):
    """Exact checks for Lie bialgebras, Poisson-Lie groups and their quantizations"""
    setup_logging(verbose)
    source_config()


def run_suite(
    suite: Type[CheckSuite],
    file: Optional[Path],
    name: Optional[str],
    fixtures: bool,
    settings: Settings,
) -> Report:
    if file is None and not fixtures:
        raise InputException("give a spec file or --fixtures")
    loaders = [SpecLoader.from_file(file, settings)] if file is not None else []
    if fixtures:
        loaders.extend(SpecLoader.from_fixture(f, settings) for f in suite.fixture_files)
    report = Report(suite.name())
    for loader in loaders:
        report.extend(suite(loader, settings).run(name))
    if not report.records:
        raise InputException(f"no {' or '.join(suite.sections)} entries to check")
    return report


def suite_command(suite: Type[CheckSuite]) -> click.Command:
    @click.command(
        cls=HelpColorsCommand,
        help_headers_color="yellow",
        help_options_color="green",
        name=suite.name(),
        help=suite.help(),
    )
    @click.argument("file", type=click.Path(path_type=Path), required=False)
    @click.option("-n", "--name", help="Check only the entry with this name")
    @click.option("--fixtures", is_flag=True, default=False, help="Run the shipped fixtures")
    @click.option("--order", help="ħ truncation order N")
    @click.option("--degree", help="Monomial degree bound d")
    @click.option("--overlap-degree", help="Overlap degree bound for confluence")
    @click.option("--json", "json_path", type=click.Path(path_type=Path), help="Write records as JSON lines")
    @click.option("--timings/--no-timings", default=None, help="Record runtimes")
    def command(
        file: Optional[Path],
        name: Optional[str],
        fixtures: bool,
        order: Optional[str],
        degree: Optional[str],
        overlap_degree: Optional[str],
        json_path: Optional[Path],
        timings: Optional[bool],
    ):
        try:
            settings = Settings.from_environment(
                order=order, degree=degree, overlap_degree=overlap_degree, timings=timings
            )
            report = run_suite(suite, file, name, fixtures, settings)
        except (InputException, StructureException) as e:
            print(f"[red]Input error: {e}[/red]")
            sys.exit(EXIT_INPUT)
        except CapabilityException as e:
            print(f"[red]Capability exceeded: {e}[/red]")
            sys.exit(EXIT_CAPABILITY)
        except Exception as e:
            logger.debug("unexpected failure in %s", suite.name(), exc_info=True)
            print(f"[red]Internal error: {type(e).__name__}: {e}[/red]")
            sys.exit(EXIT_INTERNAL)
        report.render(settings.timings)
        if json_path is not None:
            report.write_jsonl(json_path)
        sys.exit(EXIT_OK if report.all_satisfied else EXIT_FAILED)

    return command


@cli.command(
    cls=HelpColorsCommand, help_headers_color="yellow", help_options_color="green"
)
def fixtures():
    """List the shipped fixture files and the commands that use them"""
    users: dict[str, list[str]] = {}
    for suite in get_all_suites():
        for file_name in suite.fixture_files:
            users.setdefault(file_name, []).append(suite.name())
    for path in sorted(FIXTURE_DIR.glob("*.json")):
        print(f"[cyan]{path.name}[/cyan] {', '.join(users.get(path.name, []))}")


for _suite in get_all_suites():
    cli.add_command(suite_command(_suite), name=_suite.name())
cli.add_command(configure_command, name="configure")

if __name__ == "__main__":
    cli()

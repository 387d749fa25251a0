import sys
from dataclasses import dataclass
from os import environ
from typing import Optional, Sequence

import click
import dotenv
from click_help_colors.core import HelpColorsGroup
from rich.table import Table as RichTable
from sqlalchemy import Column, String, Table, delete, select
from sqlalchemy_utils.types import JSONType

from poissonforge.config.settings import (
    DEFAULTS,
    Settings,
    env_key,
    parse_value,
    setting_name,
)
from poissonforge.db import mapper_registry, open_session, requires_db, settings_home
from poissonforge.exceptions import EXIT_INPUT, InputException
from poissonforge.output import print

SESSION_SECTION = "session"


@mapper_registry.mapped
@dataclass
class DBConfig:
    __table__ = Table(
        "settings",
        mapper_registry.metadata,
        Column("section", String(50), primary_key=True, nullable=False),
        Column("config", JSONType, nullable=False),
    )
    section: str
    config: dict[str, str]


@requires_db
def write_config(section: str, data: dict[str, str]):
    with open_session() as session:
        session.merge(DBConfig(section=section, config=dict(data)))
        session.commit()


@requires_db
def read_config() -> Sequence[DBConfig]:
    with open_session() as session:
        result = session.execute(select(DBConfig))
        return result.scalars().all()


@requires_db
def read_section_config(section: str) -> Optional[DBConfig]:
    with open_session() as session:
        result = session.execute(select(DBConfig).where(DBConfig.section == section))
        return result.scalar_one_or_none()


@requires_db
def clear_section_config(section: str):
    with open_session() as session:
        session.execute(delete(DBConfig).where(DBConfig.section == section))
        session.commit()


def stored_settings() -> dict[str, str]:
    config = read_section_config(SESSION_SECTION)
    return dict(config.config) if config is not None else {}


def source_config():
    """Environment wins over .env, which wins over the settings store."""
    dotenv.load_dotenv(dotenv.find_dotenv(usecwd=True), override=False)
    for config in read_config() or []:
        for k, v in config.config.items():
            environ.setdefault(k, str(v))


@click.group(
    cls=HelpColorsGroup, help_headers_color="yellow", help_options_color="green"
)
def configure_command():
    """Commands for the persisted session parameters"""
    pass


@configure_command.command(name="list")
def list_config():
    stored = stored_settings()
    effective = Settings.from_environment().as_dict()
    table = RichTable(title="Session parameters", caption=f"Stored in {settings_home()}")
    table.add_column("Variable", style="cyan", justify="right")
    table.add_column("Stored", style="magenta")
    table.add_column("Effective", style="green")
    table.add_column("Default")
    for name, default in DEFAULTS.items():
        key = env_key(name)
        table.add_row(key, stored.get(key, ""), str(effective[name]), str(default))
    print(table)


@configure_command.command(name="set")
@click.argument("key")
@click.argument("value")
def set_config(key: str, value: str):
    """Validate and store one parameter, e.g. `set order 8`"""
    try:
        name = setting_name(key)
        parse_value(name, value)
    except InputException as e:
        print(f"[red]{e}[/red]")
        sys.exit(EXIT_INPUT)
    stored = stored_settings()
    stored[env_key(name)] = value
    write_config(SESSION_SECTION, stored)
    print(f"[green]Stored {env_key(name)}={value}[/green]")


@configure_command.command(name="delete")
@click.argument("key")
def delete_config(key: str):
    try:
        name = setting_name(key)
    except InputException as e:
        print(f"[red]{e}[/red]")
        sys.exit(EXIT_INPUT)
    stored = stored_settings()
    if stored.pop(env_key(name), None) is None:
        print(f"[yellow]{env_key(name)} is not stored[/yellow]")
        return
    if stored:
        write_config(SESSION_SECTION, stored)
    else:
        clear_section_config(SESSION_SECTION)
    print(f"[green]Deleted {env_key(name)}[/green]")

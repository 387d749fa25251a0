import logging
from functools import cache, wraps
from os import environ
from pathlib import Path
from typing import Callable, ParamSpec, TypeVar

from alembic import command
from alembic.config import Config
from appdirs import user_config_dir
from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, registry, sessionmaker

from poissonforge.utils import typed_cache

logger = logging.getLogger(__name__)

mapper_registry = registry()

HOME_VARIABLE = "POISSON_FORGE_HOME"
STORE_FILE = "settings.sqlite"
ALEMBIC_INI = Path(__file__).parent.parent / "alembic.ini"


def settings_home() -> Path:
    """Directory of the settings store, created on demand."""
    home = Path(environ.get(HOME_VARIABLE) or user_config_dir(appname="poisson-forge"))
    home.mkdir(parents=True, exist_ok=True)
    return home


def get_db_location() -> str:
    return f"sqlite:///{settings_home() / STORE_FILE}"


@typed_cache
def get_engine() -> Engine:
    return create_engine(get_db_location(), future=True)  # type: ignore


@cache
def ensure_latest_db_exists():
    logging.getLogger("alembic").setLevel(logging.CRITICAL)
    logger.debug("migrating settings store at %s", get_db_location())
    command.upgrade(Config(str(ALEMBIC_INI)), "head")


P = ParamSpec("P")
R = TypeVar("R")


def requires_db(func: Callable[P, R]) -> Callable[P, R]:
    @wraps(func)
    def wrapped(*args: P.args, **kwargs: P.kwargs) -> R:
        ensure_latest_db_exists()
        return func(*args, **kwargs)

    return wrapped


@typed_cache
def _session_factory() -> sessionmaker:
    return sessionmaker(get_engine())


def open_session() -> Session:
    """A session on the same engine the migrations ran against."""
    return _session_factory()()

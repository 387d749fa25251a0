from dataclasses import asdict, dataclass, replace
from os import environ
from typing import Any, Optional

from poissonforge.exceptions import InputException

ENV_PREFIX = "POISSON_FORGE_"

DEFAULTS = {
    "order": 6,
    "degree": 3,
    "overlap_degree": 4,
    "seed": 20240601,
    "max_rewrite_depth": 2000,
    "timings": False,
}

MINIMUMS = {"order": 1, "degree": 0, "overlap_degree": 2, "max_rewrite_depth": 1}

TRUTHY = {"1", "true", "yes", "on"}
FALSY = {"0", "false", "no", "off", ""}


def env_key(name: str) -> str:
    return f"{ENV_PREFIX}{name.upper()}"


def setting_name(key: str) -> str:
    """Accept ``order``, ``overlap-degree`` or ``POISSON_FORGE_ORDER``."""
    name = key.strip()
    if name.upper().startswith(ENV_PREFIX):
        name = name[len(ENV_PREFIX) :]
    name = name.lower().replace("-", "_")
    if name not in DEFAULTS:
        raise InputException(f"unknown setting {key!r}", key=key)
    return name


def parse_value(name: str, value: Any) -> Any:
    if name == "timings":
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in TRUTHY:
            return True
        if text in FALSY:
            return False
        raise InputException(f"{env_key(name)} must be a boolean, got {value!r}", key=name)
    try:
        number = int(str(value).strip())
    except ValueError:
        raise InputException(f"{env_key(name)} must be an integer, got {value!r}", key=name)
    minimum = MINIMUMS.get(name)
    if minimum is not None and number < minimum:
        raise InputException(f"{env_key(name)} must be at least {minimum}, got {number}", key=name)
    return number


@dataclass(frozen=True)
class Settings:
    """Session parameters shared by every check of one invocation."""

    order: int = DEFAULTS["order"]
    degree: int = DEFAULTS["degree"]
    overlap_degree: int = DEFAULTS["overlap_degree"]
    seed: int = DEFAULTS["seed"]
    max_rewrite_depth: int = DEFAULTS["max_rewrite_depth"]
    timings: bool = DEFAULTS["timings"]

    @classmethod
    def from_environment(cls, **overrides: Optional[Any]) -> "Settings":
        """Explicit overrides first, then the process environment, then defaults.

        The .env file and the settings store reach this point through the
        environment, see :func:`poissonforge.config.config.source_config`.
        """
        values = {}
        for name in DEFAULTS:
            if overrides.get(name) is not None:
                values[name] = parse_value(name, overrides[name])
            elif env_key(name) in environ:
                values[name] = parse_value(name, environ[env_key(name)])
        return cls(**values)

    def with_overrides(self, **overrides: Optional[Any]) -> "Settings":
        return replace(
            self, **{k: parse_value(k, v) for k, v in overrides.items() if v is not None}
        )

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)

    @property
    def inputs(self) -> dict[str, int]:
        """The parameters a report depends on."""
        return {"order": self.order, "degree": self.degree, "overlapDegree": self.overlap_degree}

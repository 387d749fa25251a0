from dataclasses import dataclass
from typing import Any, Optional


@dataclass
class InputException(Exception):
    """Malformed input, unresolved reference or invalid parameter."""

    message: str
    key: Optional[str] = None

    def __str__(self) -> str:
        return self.message if self.key is None else f"{self.message} ({self.key})"


@dataclass
class CapabilityException(Exception):
    """The kernel cannot answer within its truncation or rewriting limits."""

    message: str

    def __str__(self) -> str:
        return self.message


@dataclass
class ValuationException(CapabilityException):
    index: Optional[int] = None

    def __str__(self) -> str:
        if self.index is None:
            return self.message
        return f"{self.message} (offending coefficient index {self.index})"


@dataclass
class NonTerminationException(CapabilityException):
    word: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.message}: {' '.join(self.word) or '1'}"


@dataclass
class StructureException(Exception):
    """A strict constructor rejected its data."""

    message: str
    defect: Any = None

    def __str__(self) -> str:
        return self.message


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_CAPABILITY = 3
EXIT_INTERNAL = 4

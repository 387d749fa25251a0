import logging
from abc import ABC, ABCMeta, abstractmethod
from typing import Any, Callable, ClassVar, Iterable, Iterator, Optional, Type

from poissonforge.config.settings import Settings
from poissonforge.exceptions import InputException
from poissonforge.report import CheckRecord, CheckResult, Verdict
from poissonforge.specfile.models import Checked
from poissonforge.specfile.SpecLoader import SpecLoader
from poissonforge.utils import timed

logger = logging.getLogger(__name__)


class CheckSuite(ABC, metaclass=ABCMeta):
    """One command: the spec-file sections it reads and the records it emits per entry."""

    sections: ClassVar[tuple[str, ...]] = ()
    fixture_files: ClassVar[tuple[str, ...]] = ()

    def __init__(self, loader: SpecLoader, settings: Settings):
        self.loader = loader
        self.settings = settings
        super().__init__()

    @classmethod
    @abstractmethod
    def name(cls) -> str:
        return "generic"

    @classmethod
    def help(cls) -> str:
        return (cls.__doc__ or "").strip().splitlines()[0]

    @abstractmethod
    def check(self, entry: Any) -> Iterator[CheckRecord]:
        pass

    def entries(self, name: Optional[str] = None) -> list[Any]:
        found = [e for section in self.sections for e in self.loader.entries(section, name)]
        if name is not None and not found:
            raise InputException(f"no {' or '.join(self.sections)} entry named {name!r}", key=name)
        return found

    def run(self, name: Optional[str] = None) -> list[CheckRecord]:
        records = []
        for entry in self.entries(name):
            logger.debug("%s: checking %s", self.name(), entry.name)
            for record in self.check(entry):
                records.append(record)
        return records

    # record helpers

    def inputs(self, entry: Checked, **extra: Any) -> dict[str, Any]:
        return {"name": entry.name, **self.settings.inputs, **extra}

    def measure(self, func: Callable[..., Any], *args: Any, **kwargs: Any) -> tuple[Any, Optional[float]]:
        value, elapsed = timed(func)(*args, **kwargs)
        return value, elapsed if self.settings.timings else None

    def record(
        self,
        entry: Checked,
        check: str,
        result: CheckResult,
        runtime: Optional[float] = None,
        details: Optional[dict[str, Any]] = None,
        discrepancy: bool = False,
    ) -> CheckRecord:
        """A structural check; failures of a stated (paper) structure become discrepancies."""
        expect = entry.expect.get(check, "pass")
        record = CheckRecord.from_result(
            f"{entry.name}/{check}", result, self.inputs(entry), expect, details
        )
        if not result.passed and expect == "pass" and (entry.paper or discrepancy):
            record.verdict = Verdict.DISCREPANCY
        record.runtime = runtime
        return record

    def claim(
        self,
        entry: Checked,
        check: str,
        matches: bool,
        defect: Optional[str] = None,
        details: Optional[dict[str, Any]] = None,
        normalization: Any = None,
    ) -> CheckRecord:
        inputs = self.inputs(entry)
        if normalization is not None:
            inputs["normalization"] = str(normalization)
        return CheckRecord.claim(f"{entry.name}/{check}", matches, inputs, defect, details)


def get_all_suites() -> Iterable[Type[CheckSuite]]:
    from poissonforge.suites.actions import ActionSuite, QuantumReductionSuite
    from poissonforge.suites.bialgebra import BialgebraSuite
    from poissonforge.suites.hopf import HopfSuite
    from poissonforge.suites.momentum import MomentumSuite
    from poissonforge.suites.poisson import PoissonGroupSuite, PoissonStructureSuite
    from poissonforge.suites.reduction import ReductionSuite

    return (
        BialgebraSuite,
        PoissonGroupSuite,
        PoissonStructureSuite,
        MomentumSuite,
        HopfSuite,
        ActionSuite,
        ReductionSuite,
        QuantumReductionSuite,
    )


def get_suite_by_name(name: str) -> Type[CheckSuite]:
    for suite in get_all_suites():
        if suite.name() == name:
            return suite
    raise InputException(f"unknown check suite {name!r}", key=name)

import logging
from typing import Any

from rich.console import Console
from rich.logging import RichHandler


class _Printer:
    console = Console(highlight=False)

    def __call__(self, text: str | Any, nl=True):
        self.console.print(text, end="\n" if nl else "")


print = _Printer()

VERDICT_STYLES = {
    "pass": "green",
    "fail": "red",
    "paper-discrepancy": "yellow",
}


def styled_verdict(verdict: str) -> str:
    style = VERDICT_STYLES.get(verdict, "white")
    return f"[{style}]{verdict}[/{style}]"


def setup_logging(verbose: bool = False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )

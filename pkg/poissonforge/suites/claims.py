"""Comparison of stated tables against derived ones."""

from typing import Callable, Mapping, Optional

from poissonforge.exactcoeff.CoordPoly import Chart, CoordPoly
from poissonforge.exactcoeff.scalars import scalar
from poissonforge.specfile.models import TableClaim
from poissonforge.specfile.SpecLoader import split_pair

Reducer = Callable[[CoordPoly], CoordPoly]


def table_claim_defects(
    chart: Chart,
    derive: Callable[[str, str], CoordPoly],
    claim: TableClaim,
    reduce: Optional[Reducer] = None,
) -> tuple[list[tuple[str, str]], dict[str, str]]:
    """derived{a,b} = normalization · stated{a,b} for every listed pair.

    Returns the defects and the derived table over the listed pairs.
    """
    reduce = reduce or (lambda p: p)
    factor = scalar(claim.normalization)
    defects, derived = [], {}
    for key, stated in claim.table.items():
        a, b = split_pair(key)
        value = reduce(derive(a, b))
        label = f"{{{a},{b}}}"
        derived[label] = str(value)
        expected = reduce(chart.poly(stated)) * factor
        if value != expected:
            defects.append((label, f"derived {value}, stated {stated}"))
    return defects, derived


def first(defects: list[tuple[str, str]]) -> Optional[str]:
    return f"{defects[0][0]}: {defects[0][1]}" if defects else None


def stringify(values: Mapping[str, object]) -> dict[str, str]:
    return {k: str(v) for k, v in values.items()}

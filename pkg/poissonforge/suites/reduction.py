from typing import Iterator

from poissonforge.CheckSuite import CheckSuite
from poissonforge.exceptions import InputException
from poissonforge.reduction.poisson_reduction import (
    check_action,
    check_ideal_invariant,
    check_ideal_poisson_closed,
    check_pipelines_agree,
    invariant_functions,
    reduced_bracket,
    sw_reduced_algebra,
)
from poissonforge.report import CheckRecord
from poissonforge.specfile.models import ReductionSpec
from poissonforge.suites.claims import first, table_claim_defects


class ReductionSuite(CheckSuite):
    """Classical Poisson reduction by a Poisson action and an invariant ideal"""

    sections = ("reductions",)
    fixture_files = ("reductions.json",)

    @classmethod
    def name(cls) -> str:
        return "reduce"

    def check(self, entry: ReductionSpec) -> Iterator[CheckRecord]:
        setup = self.loader.reduction_setup(entry.name)
        chart = setup.chart
        degree = self.settings.degree
        seed = self.settings.seed

        if setup.ideal:
            yield self.record(entry, "ideal_poisson_closed", check_ideal_poisson_closed(setup))
            yield self.record(entry, "ideal_invariant", check_ideal_invariant(setup))
        if setup.algebra is not None or setup.hamiltonians:
            yield self.record(entry, "action", check_action(setup))
        (basis, closure), runtime = self.measure(invariant_functions, setup, degree)
        yield self.record(entry, "invariants", closure, runtime, {"count": len(basis)})
        (classes, table, result), runtime = self.measure(sw_reduced_algebra, setup, degree)
        yield self.record(entry, "sw_reduced_algebra", result, runtime, {"count": len(classes)})

        for pair in entry.brackets:
            if len(pair) != 2:
                raise InputException(f"{entry.name}: brackets are [f, g] pairs", key=entry.name)
            f, g = pair
            (value, result), runtime = self.measure(reduced_bracket, setup, chart.poly(f), chart.poly(g), seed)
            yield self.record(entry, f"reduced_bracket[{f},{g}]", result, runtime)
        if entry.claim is not None:

            def derive(a: str, b: str):
                value, _ = reduced_bracket(setup, chart.poly(a), chart.poly(b), seed, trials=1)
                return value

            defects, derived = table_claim_defects(chart, derive, entry.claim, setup.reduce)
            yield self.claim(
                entry,
                "table_claim",
                not defects,
                first(defects),
                {"derived": derived, "source": entry.claim.source},
                entry.claim.normalization,
            )
        if entry.pipelines:
            result, runtime = self.measure(check_pipelines_agree, setup, degree, seed)
            yield self.record(entry, "pipelines", result, runtime)

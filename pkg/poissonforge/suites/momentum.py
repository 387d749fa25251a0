import logging
from typing import Any, Iterator, Optional

from poissonforge.CheckSuite import CheckSuite
from poissonforge.exactcoeff.scalars import scalar
from poissonforge.exceptions import InputException
from poissonforge.liebialg.Cobracket import Cobracket
from poissonforge.liebialg.LieAlgebra import LieAlgebra
from poissonforge.poissongeo.groups import dressing_fields, maurer_cartan_forms
from poissonforge.poissongeo.momentum import (
    check_infinitesimal_mm,
    check_poisson_action,
    classical_mm_check,
    deformation_identities,
    heisenberg_obstruction,
)
from poissonforge.poissongeo.PolyTensors import PolyBivector, PolyOneForm, PolyVectorField
from poissonforge.report import CheckRecord, CheckResult
from poissonforge.specfile.models import MomentumMapSpec
from poissonforge.suites.claims import first, stringify

logger = logging.getLogger(__name__)


class MomentumSuite(CheckSuite):
    """Classical and Poisson-Lie momentum maps, Maurer-Cartan forms and dressing actions"""

    sections = ("momentum_maps",)
    fixture_files = ("momentum_maps.json",)

    @classmethod
    def name(cls) -> str:
        return "check-mm"

    def check(self, entry: MomentumMapSpec) -> Iterator[CheckRecord]:
        handler = getattr(self, f"check_{entry.kind}")
        yield from handler(entry)

    # resolution

    def require(self, entry: MomentumMapSpec, attribute: str) -> Any:
        value = getattr(entry, attribute)
        if not value:
            raise InputException(f"{entry.name}: a {entry.kind} check needs {attribute!r}", key=entry.name)
        return value

    def bivector(self, entry: MomentumMapSpec) -> PolyBivector:
        return self.loader.bivector(self.require(entry, "bivector"))

    def cobracket(self, entry: MomentumMapSpec) -> Optional[Cobracket]:
        return self.loader.cobracket(entry.cobracket) if entry.cobracket else None

    def algebra(self, entry: MomentumMapSpec, d: Optional[Cobracket] = None) -> LieAlgebra:
        if d is not None:
            if entry.algebra and self.loader.lie_algebra(entry.algebra) is not d.algebra:
                raise InputException(f"{entry.name}: cobracket {entry.cobracket} is over another algebra")
            return d.algebra
        return self.loader.lie_algebra(self.require(entry, "algebra"))

    def fields(self, entry: MomentumMapSpec, pi: PolyBivector, algebra: LieAlgebra) -> dict[str, PolyVectorField]:
        missing = set(algebra.basis) - set(entry.fields)
        if missing:
            raise InputException(f"{entry.name}: no field for {sorted(missing)}", key=entry.name)
        return self.loader.vector_fields(pi.chart, entry.fields)

    def forms(self, entry: MomentumMapSpec, pi: PolyBivector, d: Optional[Cobracket]) -> dict[str, PolyOneForm]:
        """Stated one-forms, or the Maurer-Cartan forms of ``group`` pulled back by the identity."""
        if entry.forms:
            return self.loader.one_forms(pi.chart, entry.forms)
        model = self.loader.matrix_group(self.require(entry, "group"))
        if model.chart != pi.chart:
            raise InputException(f"{entry.name}: group {model.name} is not on the chart of {entry.bivector}")
        forms, _ = maurer_cartan_forms(model, d)
        return forms

    # kinds

    def check_classical(self, entry: MomentumMapSpec) -> Iterator[CheckRecord]:
        pi = self.bivector(entry)
        algebra = self.algebra(entry)
        hamiltonians = self.loader.functions(pi.chart, self.require(entry, "hamiltonians"))
        missing = set(algebra.basis) - set(hamiltonians)
        if missing:
            raise InputException(f"{entry.name}: no hamiltonian for {sorted(missing)}", key=entry.name)
        fields = self.fields(entry, pi, algebra)
        result, runtime = self.measure(classical_mm_check, pi, algebra, hamiltonians, fields, entry.hamiltonian_sign)
        yield self.record(
            entry,
            "classical_mm",
            result,
            runtime,
            {"cocycle": result.details["cocycle"], "equivariant": result.details["cocycle_zero"]},
        )

    def check_infinitesimal(self, entry: MomentumMapSpec) -> Iterator[CheckRecord]:
        pi = self.bivector(entry)
        d = self.cobracket(entry)
        if d is None:
            raise InputException(f"{entry.name}: an infinitesimal check needs 'cobracket'", key=entry.name)
        algebra = self.algebra(entry, d)
        alpha = self.forms(entry, pi, d)
        result, runtime = self.measure(check_infinitesimal_mm, pi, algebra, d, alpha)
        yield self.record(
            entry,
            "infinitesimal_mm",
            result,
            runtime,
            {"forms": stringify(alpha), "variantHolds": result.details["variant_holds"]},
        )

    def check_heisenberg(self, entry: MomentumMapSpec) -> Iterator[CheckRecord]:
        pi = self.bivector(entry)
        names = self.require(entry, "heisenberg")
        if len(names) != 3:
            raise InputException(f"{entry.name}: heisenberg names [ξ, η, ζ] with [ξ,η] = ζ", key=entry.name)
        alpha = self.loader.one_forms(pi.chart, self.require(entry, "forms"))
        if set(names) - set(alpha):
            raise InputException(f"{entry.name}: no form for {sorted(set(names) - set(alpha))}", key=entry.name)
        result = heisenberg_obstruction(pi, alpha, *names)
        yield self.record(entry, "heisenberg_obstruction", result, details=dict(result.details))

    def check_maurer_cartan(self, entry: MomentumMapSpec) -> Iterator[CheckRecord]:
        model = self.loader.matrix_group(self.require(entry, "group"))
        d = self.cobracket(entry)
        (forms, result), runtime = self.measure(maurer_cartan_forms, model, d)
        yield self.record(
            entry,
            "maurer_cartan",
            result,
            runtime,
            {"forms": result.details["forms"], "variantHolds": result.details["variant_holds"]},
        )
        for claim in entry.mc_claims:
            for label in (claim.form, claim.left, claim.right):
                if label not in forms:
                    raise InputException(f"{entry.name}: no Maurer-Cartan form {label!r}", key=label)
            derived = forms[claim.form].d()
            stated = forms[claim.left].wedge(forms[claim.right]).scale(scalar(claim.normalization))
            yield self.claim(
                entry,
                f"mc_claim[{claim.form}]",
                derived == stated,
                None if derived == stated else f"dθ_{claim.form} = {derived}",
                {"derived": str(derived), "source": claim.source},
                claim.normalization,
            )

    def dressing(self, entry: MomentumMapSpec) -> tuple[PolyBivector, Cobracket, dict[str, PolyVectorField], CheckResult]:
        pi = self.bivector(entry)
        d = self.cobracket(entry)
        if d is None:
            raise InputException(f"{entry.name}: a {entry.kind} check needs 'cobracket'", key=entry.name)
        algebra = self.algebra(entry, d)
        forms = self.forms(entry, pi, d)
        fields, result = dressing_fields(pi, algebra, forms)
        return pi, d, fields, result

    def check_dressing(self, entry: MomentumMapSpec) -> Iterator[CheckRecord]:
        (pi, d, fields, result), runtime = self.measure(self.dressing, entry)
        yield self.record(entry, "dressing_homomorphism", result, runtime, {"fields": result.details["fields"]})
        action = check_poisson_action(pi, d.algebra, fields, d)
        yield self.record(entry, "poisson_action", action)
        if entry.fields:
            stated = self.loader.vector_fields(pi.chart, entry.fields)
            defects = [
                (name, f"derived {fields[name]}")
                for name, field in stated.items()
                if name not in fields or fields[name] != field
            ]
            yield self.claim(entry, "fields_claim", not defects, first(defects), {"derived": stringify(fields)})

    def check_deformation(self, entry: MomentumMapSpec) -> Iterator[CheckRecord]:
        pi, d, fields, _ = self.dressing(entry)
        if entry.hamiltonians:
            x = self.loader.functions(pi.chart, entry.hamiltonians)
        else:
            potential = pi.chart.poly(self.require(entry, "potential"))
            x = {name: field.apply(potential) for name, field in fields.items()}
        logger.debug("%s: X = %s", entry.name, stringify(x))
        (deform_first, deform_second), runtime = self.measure(deformation_identities, pi, d.algebra, fields, d, x)
        yield self.record(entry, "deformation_first", deform_first, runtime, {"x": stringify(x)})
        yield self.record(entry, "deformation_second", deform_second)

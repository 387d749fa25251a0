from typing import Iterator

from poissonforge.CheckSuite import CheckSuite
from poissonforge.hopf.axioms import (
    check_antipode,
    check_coassociativity,
    check_counit,
    check_delta_hom,
    check_quantization,
    semiclassical_cobracket,
)
from poissonforge.hopf.HopfStructure import HopfStructure
from poissonforge.hopf.quasitriangular import (
    check_quasi_cocommutative,
    check_quasitriangular,
    counit_of_r,
)
from poissonforge.report import CheckRecord
from poissonforge.specfile.models import HopfSpec
from poissonforge.suites.bialgebra import cobracket_claim_defects
from poissonforge.suites.claims import first


class HopfSuite(CheckSuite):
    """Hopf axioms of ħ-adic quantized enveloping algebras, their classical limit and R-matrices"""

    sections = ("hopf_structures",)
    fixture_files = ("hopf.json",)

    @classmethod
    def name(cls) -> str:
        return "check-hopf"

    def check(self, entry: HopfSpec) -> Iterator[CheckRecord]:
        H = self.loader.hopf(entry.name)
        degree = self.settings.degree
        yield self.record(entry, "maps", H.check_maps())
        for check, axiom in (
            ("coassociativity", check_coassociativity),
            ("counit", check_counit),
            ("antipode", check_antipode),
            ("delta_homomorphism", check_delta_hom),
        ):
            result, runtime = self.measure(axiom, H, degree)
            yield self.record(entry, check, result, runtime)
        confluence, runtime = self.measure(H.algebra.check_confluence, self.settings.overlap_degree)
        yield self.record(entry, "confluence", confluence, runtime)

        if entry.classical is not None or entry.cobracket_claim is not None:
            yield from self.check_classical_limit(entry, H)
        if entry.r_matrix is not None:
            R = self.loader.tensor(H.algebra, entry.r_matrix)
            result, runtime = self.measure(check_quasitriangular, H, R)
            yield self.record(entry, "quasitriangular", result, runtime)
            yield self.record(entry, "counit_of_r", counit_of_r(H, R))
            yield self.record(entry, "quasi_cocommutative", check_quasi_cocommutative(H, R))
        for claim in entry.element_claims:
            lhs = H.algebra.poly(claim.lhs)
            rhs = H.algebra.poly(claim.rhs).scale(claim.normalization)
            yield self.claim(
                entry,
                f"element_claim[{claim.label}]",
                lhs == rhs,
                None if lhs == rhs else f"lhs − rhs = {lhs - rhs}",
                {"lhs": str(lhs), "source": claim.source},
                claim.normalization,
            )

    def check_classical_limit(self, entry: HopfSpec, H: HopfStructure) -> Iterator[CheckRecord]:
        (d, result), runtime = self.measure(semiclassical_cobracket, H)
        yield self.record(entry, "semiclassical_cobracket", result, runtime, {"cobracket": d.table()})
        if entry.classical is not None:
            classical = HopfStructure.primitive(self.loader.presentation(entry.classical))
            result, runtime = self.measure(check_quantization, H, classical, d.algebra)
            yield self.record(entry, "quantization", result, runtime)
        if entry.cobracket_claim is not None:
            defects = cobracket_claim_defects(self.loader, d, entry.cobracket_claim)
            yield self.claim(
                entry,
                "cobracket_claim",
                not defects,
                first(defects),
                {"derived": d.table(), "source": entry.cobracket_claim.source},
                entry.cobracket_claim.normalization,
            )

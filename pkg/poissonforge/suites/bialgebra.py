from typing import Iterator

from poissonforge.CheckSuite import CheckSuite
from poissonforge.exactcoeff.scalars import scalar
from poissonforge.exceptions import InputException
from poissonforge.liebialg.bialgebra import (
    build_double,
    check_cocycle,
    check_duality_involution,
    classify_r_matrix,
    cobracket_from_r,
    dual_bracket,
    schouten_rr,
    semidirect_is_coadjoint,
)
from poissonforge.liebialg.Cobracket import Cobracket
from poissonforge.liebialg.LieAlgebra import LieAlgebra, check_jacobi
from poissonforge.report import CheckRecord, CheckResult
from poissonforge.specfile.models import BialgebraSpec, BracketClaim, CobracketClaim
from poissonforge.specfile.SpecLoader import SpecLoader, split_pair
from poissonforge.suites.claims import first


def cobracket_claim_defects(
    loader: SpecLoader, d: Cobracket, claim: CobracketClaim
) -> list[tuple[str, str]]:
    """Listed images only: δ(x) = normalization · stated δ(x)."""
    algebra = d.algebra
    stated = loader.wedge_cobracket(algebra, claim.wedges).scale(claim.normalization)
    defects = []
    for name in claim.wedges:
        i = algebra.index(name)
        if d.image(i) != stated.image(i):
            defects.append((f"δ({name})", f"derived {d.image(i).format_wedge()}"))
    return defects


def bracket_claim_defects(algebra: LieAlgebra, claim: BracketClaim) -> list[tuple[str, str]]:
    factor = scalar(claim.normalization)
    defects = []
    for key, expansion in claim.brackets.items():
        x, y = split_pair(key)
        derived = algebra.bracket_basis(algebra.index(x), algebra.index(y))
        stated = {algebra.index(k): factor * scalar(c) for k, c in expansion.items()}
        stated = {k: c for k, c in stated.items() if c}
        if dict(derived) != stated:
            defects.append((f"[{x},{y}]", f"derived {algebra.format_vector(derived) or '0'}"))
    return defects


class BialgebraSuite(CheckSuite):
    """Jacobi, cocycle, dual bracket, classical Yang-Baxter and double of Lie bialgebras"""

    sections = ("bialgebras",)
    fixture_files = ("bialgebras.json",)

    @classmethod
    def name(cls) -> str:
        return "check-bialgebra"

    def check(self, entry: BialgebraSpec) -> Iterator[CheckRecord]:
        algebra = self.loader.lie_algebra(entry.algebra)
        jacobi, runtime = self.measure(check_jacobi, algebra)
        yield self.record(entry, "jacobi", jacobi, runtime)
        if not jacobi.passed:
            # Everything below presupposes a Lie algebra.
            return

        r = self.loader.r_matrix(entry.r_matrix) if entry.r_matrix else None
        if r is not None:
            if r.algebra is not algebra:
                raise InputException(f"{entry.name}: r-matrix {entry.r_matrix} is over another algebra")
            (d, invariance), runtime = self.measure(cobracket_from_r, algebra, r)
            yield self.record(entry, "symmetric_part_invariant", invariance, runtime)
            rr = schouten_rr(r)
            cybe = CheckResult.from_defects("cybe", [] if rr.is_zero else [("<r,r>", rr.format())])
            yield self.record(entry, "cybe", cybe, details={"classification": classify_r_matrix(algebra, r)})
        elif entry.cobracket:
            d = self.loader.cobracket(entry.cobracket)
            if d.algebra is not algebra:
                raise InputException(f"{entry.name}: cobracket {entry.cobracket} is over another algebra")
        else:
            raise InputException(f"{entry.name}: give an r_matrix or a cobracket", key=entry.name)

        cocycle, runtime = self.measure(check_cocycle, algebra, d)
        yield self.record(entry, "cocycle", cocycle, runtime, {"cobracket": d.table()})
        (dual, co_jacobi), runtime = self.measure(dual_bracket, d)
        yield self.record(entry, "co_jacobi", co_jacobi, runtime, {"dual": dual.table()})
        yield self.record(entry, "duality_involution", check_duality_involution(algebra, d))
        (double, result), runtime = self.measure(build_double, algebra, d)
        yield self.record(
            entry, "double", result, runtime,
            {"dimension": double.dim, "coadjointSemidirect": semidirect_is_coadjoint(algebra, double)},
        )

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
        if entry.dual_claim is not None:
            defects = bracket_claim_defects(dual, entry.dual_claim)
            yield self.claim(
                entry,
                "dual_claim",
                not defects,
                first(defects),
                {"derived": dual.table(), "source": entry.dual_claim.source},
                entry.dual_claim.normalization,
            )

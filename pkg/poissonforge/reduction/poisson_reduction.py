"""Invariants, momentum ideals and reduced brackets on polynomial charts."""

import logging
import random
from itertools import combinations

from poissonforge.exactcoeff.CoordPoly import CoordPoly
from poissonforge.exactcoeff.linalg import independent_subset, kernel
from poissonforge.poissongeo.brackets import hamiltonian_field, poisson_bracket
from poissonforge.poissongeo.groups import check_lie_homomorphism
from poissonforge.reduction.ReductionSetup import ReductionSetup
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)

PERTURBATIONS = 20


def _coefficient_rows(polys: list[CoordPoly]) -> list[list]:
    """One row per monomial (hbar power included), one column per polynomial."""
    tables = [dict(p.flat_terms()) for p in polys]
    keys = sorted({key for table in tables for key in table})
    return [[table.get(key, 0) for table in tables] for key in keys]


def _vectors(polys: list[CoordPoly]) -> list[list]:
    return [list(column) for column in zip(*_coefficient_rows(polys))]


def _is_invariant(setup: ReductionSetup, f: CoordPoly, modulo_ideal: bool = False) -> bool:
    for X in setup.fields.values():
        image = X.apply(f)
        if modulo_ideal:
            image = setup.reduce(image)
        if not image.is_zero:
            return False
    return True


def invariant_functions(setup: ReductionSetup, degree: int) -> tuple[list[CoordPoly], CheckResult]:
    """Basis of polynomials of degree ≤ d killed by every action field, with bracket closure."""
    monomials = setup.chart.monomials_up_to(degree)
    images = [[X.apply(m) for m in monomials] for X in setup.fields.values()]
    rows = []
    for row in images:
        rows.extend(_coefficient_rows(row))
    if rows:
        vectors = kernel(rows, len(monomials))
        basis = []
        for v in vectors:
            total = setup.chart.zero
            for m, c in zip(monomials, v):
                if c:
                    total = total + m * c
            basis.append(total)
    else:
        basis = list(monomials)
    logger.debug("%s: %d invariants up to degree %d", setup.name, len(basis), degree)
    defects = []
    for (i, f), (j, g) in combinations(enumerate(basis), 2):
        bracket = poisson_bracket(setup.pi, f, g)
        if not _is_invariant(setup, bracket):
            defects.append((f"{{u{i},u{j}}}", bracket))
    closure = CheckResult.from_defects(
        "invariants_bracket_closed", defects, basis=[str(b) for b in basis], degree=degree
    )
    return basis, closure


def check_ideal_poisson_closed(setup: ReductionSetup) -> CheckResult:
    """{g_i, g_j} lies in the ideal for every pair of generators."""
    defects = []
    for f, g in combinations(setup.generators, 2):
        value = setup.reduce(poisson_bracket(setup.pi, f, g))
        if not value.is_zero:
            defects.append((f"{{{f},{g}}}", value))
    return CheckResult.from_defects("ideal_poisson_closed", defects)


def check_ideal_invariant(setup: ReductionSetup) -> CheckResult:
    """X(g) lies in the ideal for every action field X and generator g."""
    defects = []
    for name, X in setup.fields.items():
        for g in setup.generators:
            value = setup.reduce(X.apply(g))
            if not value.is_zero:
                defects.append((f"{name}({g})", value))
    return CheckResult.from_defects("ideal_invariant", defects)


def check_action(setup: ReductionSetup) -> CheckResult:
    """Fields form a Lie algebra homomorphism and, where given, are Hamiltonian for the momentum components."""
    parts = []
    if setup.algebra is not None:
        parts.append(check_lie_homomorphism(setup.algebra, dict(setup.fields)))
    defects = []
    for name, H in setup.hamiltonians.items():
        if name in setup.fields and hamiltonian_field(setup.pi, H) != setup.fields[name]:
            defects.append((name, hamiltonian_field(setup.pi, H) - setup.fields[name]))
    parts.append(CheckResult.from_defects("momentum_components", defects))
    return CheckResult.combine("action", parts)


def _perturbation(setup: ReductionSetup, rng: random.Random) -> CoordPoly:
    chart = setup.chart
    total = chart.zero
    multipliers = chart.monomials_up_to(1)
    for g in setup.generators:
        total = total + g * rng.choice(multipliers) * rng.randint(-3, 3)
    return total


def reduced_bracket(
    setup: ReductionSetup, f: CoordPoly, g: CoordPoly, seed: int, trials: int = PERTURBATIONS
) -> tuple[CoordPoly, CheckResult]:
    """The class of {f, g} modulo the ideal, checked against perturbed representatives."""
    representatives = []
    for label, h in (("f", f), ("g", g)):
        if not _is_invariant(setup, h, modulo_ideal=True):
            representatives.append((label, f"{h} is not invariant modulo the ideal"))
    value = setup.reduce(poisson_bracket(setup.pi, f, g))
    rng = random.Random(seed)
    defects = []
    for trial in range(trials if setup.generators else 0):
        f2 = f + _perturbation(setup, rng)
        g2 = g + _perturbation(setup, rng)
        other = setup.reduce(poisson_bracket(setup.pi, f2, g2))
        if other != value:
            defects.append((f"trial {trial}", other - value))
    result = CheckResult.combine(
        "reduced_bracket",
        [
            CheckResult.from_defects("invariant_representatives", representatives),
            CheckResult.from_defects("representative_independent", defects, trials=trials),
        ],
        value=str(value),
    )
    return value, result


def _jacobi_defects(setup: ReductionSetup, classes: list[CoordPoly]) -> list:
    defects = []

    def pb(x, y):
        return poisson_bracket(setup.pi, x, y)

    for i, j, k in combinations(range(len(classes)), 3):
        u, v, w = classes[i], classes[j], classes[k]
        value = setup.reduce(pb(pb(u, v), w) + pb(pb(v, w), u) + pb(pb(w, u), v))
        if not value.is_zero:
            defects.append((f"u{i},u{j},u{k}", value))
    return defects


def sw_reduced_algebra(
    setup: ReductionSetup, degree: int
) -> tuple[list[CoordPoly], dict[str, str], CheckResult]:
    """Invariants modulo the ideal: independent classes, bracket table and Jacobi."""
    invariants, closure = invariant_functions(setup, degree)
    reduced = [setup.reduce(f) for f in invariants]
    reduced = [f for f in reduced if not f.is_zero]
    classes = [reduced[i] for i in independent_subset(_vectors(reduced))] if reduced else []
    table = {}
    defects = []
    for (i, u), (j, v) in combinations(enumerate(classes), 2):
        value = setup.reduce(poisson_bracket(setup.pi, u, v))
        table[f"{{{u},{v}}}"] = str(value)
        if not _is_invariant(setup, value, modulo_ideal=True):
            defects.append((f"{{u{i},u{j}}}", value))
    result = CheckResult.combine(
        "sw_reduced_algebra",
        [
            closure,
            check_ideal_invariant(setup),
            CheckResult.from_defects("reduced_brackets_invariant", defects),
            CheckResult.from_defects("reduced_jacobi", _jacobi_defects(setup, classes)),
        ],
        classes=[str(c) for c in classes],
        table=table,
    )
    return classes, table, result


def check_pipelines_agree(setup: ReductionSetup, degree: int, seed: int) -> CheckResult:
    """sw_reduced_algebra's table equals reduced_bracket on the same class representatives."""
    classes, table, _ = sw_reduced_algebra(setup, degree)
    defects = []
    for u, v in combinations(classes, 2):
        value, _ = reduced_bracket(setup, u, v, seed, trials=1)
        if str(value) != table[f"{{{u},{v}}}"]:
            defects.append((f"{{{u},{v}}}", f"{value} vs {table[f'{{{u},{v}}}']}"))
    return CheckResult.from_defects("pipelines_agree", defects, classes=len(classes))

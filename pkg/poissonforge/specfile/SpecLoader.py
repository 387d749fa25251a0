import json
import logging
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Mapping, Optional, ParamSpec, Sequence, TypeVar

from pydantic import ValidationError

from poissonforge.config.settings import Settings
from poissonforge.exactcoeff.CoordPoly import Chart, CoordPoly
from poissonforge.exceptions import InputException, StructureException
from poissonforge.hopf.HopfStructure import HopfStructure
from poissonforge.liebialg.bialgebra import cobracket_from_r
from poissonforge.liebialg.Cobracket import Cobracket, RMatrix
from poissonforge.liebialg.LieAlgebra import LieAlgebra
from poissonforge.liebialg.Tensor import Tensor
from poissonforge.ncalg.AlgebraMap import AlgebraMap
from poissonforge.ncalg.NCPoly import NCPoly, to_series
from poissonforge.ncalg.Presentation import Presentation, inverse_letter, parse_terms
from poissonforge.ncalg.semiclassical import enveloping_algebra
from poissonforge.ncalg.TensorAlgebra import TensorAlgebra
from poissonforge.poissongeo.brackets import hamiltonian_field
from poissonforge.poissongeo.MatrixGroupModel import MatrixGroupModel
from poissonforge.poissongeo.PolyTensors import PolyBivector, PolyOneForm, PolyVectorField
from poissonforge.qmomentum.ActionExpr import parse_action
from poissonforge.qmomentum.NCOneForm import NCOneForm
from poissonforge.qmomentum.QuantumAction import QuantumAction, RelationClaim
from poissonforge.reduction.ReductionSetup import ReductionSetup
from poissonforge.specfile.models import SpecFile, SpecModel, TensorSpec

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).parent.parent / "fixtures"

P = ParamSpec("P")
R = TypeVar("R")


def _structural(func: Callable[P, R]) -> Callable[P, R]:
    """Strict constructors reject data with StructureException; for a loader that is an input error."""

    @wraps(func)
    def wrapped(*args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return func(*args, **kwargs)
        except StructureException as e:
            raise InputException(str(e), key=None if e.defect is None else str(e.defect)) from e

    return wrapped


def split_pair(key: str) -> tuple[str, str]:
    """``"X,Y"`` or ``"{a,b}"`` -> ``("X", "Y")``."""
    parts = [p.strip() for p in key.strip().strip("{}[]").split(",")]
    if len(parts) != 2 or not all(parts):
        raise InputException(f"expected a pair like 'x,y', got {key!r}", key=key)
    return parts[0], parts[1]


def read_spec(path: Path) -> SpecFile:
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        raise InputException(f"cannot read {path}: {e.strerror}", key=str(path)) from e
    except json.JSONDecodeError as e:
        raise InputException(f"{path} is not valid JSON: {e.msg} at line {e.lineno}", key=str(path)) from e
    return parse_spec(data, str(path))


def parse_spec(data: Any, source: str = "<input>") -> SpecFile:
    try:
        return SpecFile.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise InputException(f"{source}: {error['msg']} at {location}", key=location) from e


class SpecLoader:
    """Builds kernel objects from a spec file, resolving cross references by name.

    Every object is built once; presentations take their truncation order and
    rewriting guard from the session settings.
    """

    def __init__(self, spec: SpecFile, settings: Settings, source: str = "<input>"):
        self.spec = spec
        self.settings = settings
        self.source = source
        self._cache: dict[tuple[str, str], Any] = {}

    @classmethod
    def from_file(cls, path: Path, settings: Settings) -> "SpecLoader":
        return cls(read_spec(path), settings, str(path))

    @classmethod
    def from_fixture(cls, file_name: str, settings: Settings) -> "SpecLoader":
        return cls.from_file(FIXTURE_DIR / file_name, settings)

    @property
    def order(self) -> int:
        return self.settings.order

    def entry(self, section: str, name: str) -> Any:
        for item in getattr(self.spec, section):
            if item.name == name:
                return item
        raise InputException(f"{self.source}: no entry named {name!r} in {section}", key=name)

    def _resolve(self, section: str, name: str, build: Callable[[Any], R]) -> R:
        key = (section, name)
        if key not in self._cache:
            entry = self.entry(section, name)
            logger.debug("building %s %s", section, name)
            self._cache[key] = _structural(build)(entry)
        return self._cache[key]

    # lie bialgebras

    def lie_algebra(self, name: str) -> LieAlgebra:
        def build(spec) -> LieAlgebra:
            brackets = {split_pair(k): v for k, v in spec.brackets.items()}
            return LieAlgebra.from_table(spec.name, spec.basis, brackets, strict=False)

        return self._resolve("lie_algebras", name, build)

    def r_matrix(self, name: str) -> RMatrix:
        def build(spec) -> RMatrix:
            algebra = self.lie_algebra(spec.algebra)
            tensor = Tensor.from_factors(algebra, [(t[0], t[1:]) for t in spec.terms], rank=2)
            for coeff, x, y in spec.wedges:
                tensor = tensor + Tensor.wedge(algebra, algebra.index(str(x)), algebra.index(str(y)), coeff)
            return RMatrix(tensor)

        return self._resolve("r_matrices", name, build)

    def cobracket(self, name: str) -> Cobracket:
        def build(spec) -> Cobracket:
            algebra = self.lie_algebra(spec.algebra)
            if spec.r_matrix is not None:
                d, _ = cobracket_from_r(algebra, self.r_matrix(spec.r_matrix))
                return d
            return self.wedge_cobracket(algebra, spec.wedges)

        return self._resolve("cobrackets", name, build)

    @_structural
    def wedge_cobracket(self, algebra: LieAlgebra, wedges: Mapping[str, Sequence[Sequence[Any]]]) -> Cobracket:
        return Cobracket.from_wedges(
            algebra, {k: [(c, str(x), str(y)) for c, x, y in terms] for k, terms in wedges.items()}
        )

    # classical geometry

    def chart(self, name: str) -> Chart:
        return self._resolve("charts", name, lambda spec: Chart(spec.variables, spec.invertible, self.settings.order))

    def bivector(self, name: str) -> PolyBivector:
        def build(spec) -> PolyBivector:
            chart = self.chart(spec.chart)
            return PolyBivector.from_wedges(chart, {split_pair(k): v for k, v in spec.wedges.items()})

        return self._resolve("bivectors", name, build)

    def matrix_group(self, name: str) -> MatrixGroupModel:
        def build(spec) -> MatrixGroupModel:
            elimination = None
            if spec.elimination is not None:
                if len(spec.elimination) != 2:
                    raise InputException(f"{spec.name}: elimination is [variable, expression]", key=spec.name)
                elimination = (spec.elimination[0], spec.elimination[1])
            return MatrixGroupModel.build(
                spec.name,
                self.chart(spec.chart),
                spec.entries,
                self.lie_algebra(spec.algebra),
                spec.basis_matrices,
                spec.constraint,
                elimination,
            )

        return self._resolve("matrix_groups", name, build)

    @staticmethod
    def vector_fields(chart: Chart, fields: Mapping[str, Mapping[str, str]]) -> dict[str, PolyVectorField]:
        return {name: PolyVectorField.from_map(chart, values) for name, values in fields.items()}

    @staticmethod
    def one_forms(chart: Chart, forms: Mapping[str, Mapping[str, str]]) -> dict[str, PolyOneForm]:
        return {name: PolyOneForm.from_map(chart, values) for name, values in forms.items()}

    @staticmethod
    def functions(chart: Chart, values: Mapping[str, str]) -> dict[str, CoordPoly]:
        return {name: chart.poly(value) for name, value in values.items()}

    def reduction_setup(self, name: str) -> ReductionSetup:
        def build(spec) -> ReductionSetup:
            pi = self.bivector(spec.bivector)
            chart = pi.chart
            hamiltonians = self.functions(chart, spec.hamiltonians)
            if spec.hamiltonian_fields:
                fields = {k: hamiltonian_field(pi, h) for k, h in hamiltonians.items()}
            else:
                fields = self.vector_fields(chart, spec.fields)
            ideal, leading = [], []
            for entry in spec.ideal:
                if isinstance(entry, str):
                    ideal.append(chart.poly(entry))
                    continue
                if len(entry) != 2:
                    raise InputException(
                        f"{spec.name}: ideal entries are generators or [leading variable, generator]"
                    )
                leading.append(entry[0])
                ideal.append(chart.poly(entry[1]))
            algebra = self.lie_algebra(spec.algebra) if spec.algebra else None
            return ReductionSetup(spec.name, pi, fields, algebra, hamiltonians, ideal, leading)

        return self._resolve("reductions", name, build)

    # noncommutative algebra

    def presentation(self, name: str) -> Presentation:
        def build(spec) -> Presentation:
            if spec.enveloping is not None:
                return enveloping_algebra(self.lie_algebra(spec.enveloping), self.order, spec.name)
            letters = []
            for g in spec.generators:
                letters.append(g)
                if g in spec.invertible:
                    letters.append(inverse_letter(g))
            rules = {lhs: parse_terms(rhs, letters, self.order) for lhs, rhs in spec.rules.items()}
            return Presentation(
                spec.name,
                tuple(spec.generators),
                rules,
                frozenset(spec.invertible),
                spec.commute_by_default,
                self.order,
                self.settings.max_rewrite_depth,
            )

        return self._resolve("presentations", name, build)

    def rule_table(self, algebra: Presentation, rules: Mapping[str, Any]) -> dict:
        return {lhs: parse_terms(rhs, algebra.letters, algebra.order) for lhs, rhs in rules.items()}

    def tensor(self, algebra: Presentation, terms: TensorSpec, arity: int = 2) -> NCPoly:
        power = TensorAlgebra(algebra, arity)
        total = power.zero
        for factors in terms:
            if len(factors) != arity:
                raise InputException(f"tensor term {factors!r} needs {arity} factors")
            total = total + power.tensor(*(algebra.poly(f) for f in factors))
        return total

    def hopf(self, name: str) -> HopfStructure:
        def build(spec) -> HopfStructure:
            algebra = self.presentation(spec.algebra)
            if spec.primitive:
                return HopfStructure.primitive(algebra, spec.name)
            coproduct = {g: self.tensor(algebra, t) for g, t in spec.coproduct.items()}
            counit = {g: spec.counit.get(g, 0) for g in algebra.letters}
            antipode = {g: algebra.poly(p) for g, p in spec.antipode.items()}
            return HopfStructure.from_images(spec.name, algebra, coproduct, counit, antipode)

        return self._resolve("hopf_structures", name, build)

    def quantum_action(self, name: str) -> QuantumAction:
        def build(spec) -> QuantumAction:
            group = self.presentation(spec.group)
            target = self.presentation(spec.target)
            generators = {g: parse_action(expr, target) for g, expr in spec.generators.items()}
            coproduct = None
            if spec.coproduct:
                coproduct = AlgebraMap(
                    f"{spec.name}.coproduct",
                    group,
                    TensorAlgebra(group, 2),
                    {g: self.tensor(group, t) for g, t in spec.coproduct.items()},
                )
            return QuantumAction(
                spec.name,
                group,
                target,
                generators,
                coproduct=coproduct,
                counit={g: to_series(v, group.order) for g, v in spec.counit.items()},
                relations=tuple(
                    RelationClaim(r.label, group.poly(r.lhs), group.poly(r.rhs), r.hbar_divisor, r.claimed)
                    for r in spec.relations
                ),
                momentum={g: NCOneForm.from_pairs(target, pairs) for g, pairs in spec.momentum.items()},
            )

        return self._resolve("actions", name, build)

    def entries(self, section: str, name: Optional[str] = None) -> list[SpecModel]:
        items = list(getattr(self.spec, section))
        if name is not None:
            items = [item for item in items if item.name == name]
        return items

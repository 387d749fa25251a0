from dataclasses import dataclass
from typing import Any, Mapping, Optional

from poissonforge.exceptions import InputException, StructureException
from poissonforge.ncalg.AlgebraMap import AlgebraMap, check_map
from poissonforge.ncalg.NCPoly import NCPoly
from poissonforge.ncalg.Presentation import Presentation
from poissonforge.ncalg.TensorAlgebra import TensorAlgebra
from poissonforge.report import CheckResult


@dataclass(frozen=True, eq=False)
class HopfStructure:
    """Coproduct, counit and antipode on a presented algebra.

    The antipode is stored as an anti-multiplicative map into the algebra
    itself; the counit takes values in the zeroth tensor power.
    """

    name: str
    algebra: Presentation
    coproduct: AlgebraMap
    counit: AlgebraMap
    antipode: AlgebraMap

    def __post_init__(self):
        if self.coproduct.target != TensorAlgebra(self.algebra, 2):
            raise InputException(f"{self.name}: coproduct must land in the tensor square")
        if self.counit.target != TensorAlgebra(self.algebra, 0):
            raise InputException(f"{self.name}: counit must take scalar values")
        if self.antipode.target is not self.algebra or not self.antipode.anti:
            raise InputException(f"{self.name}: antipode must be an anti-map of the algebra")

    @classmethod
    def from_images(
        cls,
        name: str,
        algebra: Presentation,
        coproduct: Mapping[str, NCPoly],
        counit: Mapping[str, Any],
        antipode: Mapping[str, NCPoly],
    ) -> "HopfStructure":
        square, scalars = TensorAlgebra(algebra, 2), TensorAlgebra(algebra, 0)
        return cls(
            name,
            algebra,
            AlgebraMap(f"{name}.coproduct", algebra, square, coproduct),
            AlgebraMap(
                f"{name}.counit",
                algebra,
                scalars,
                {g: v if isinstance(v, NCPoly) else scalars.scalar(v) for g, v in counit.items()},
            ),
            AlgebraMap(f"{name}.antipode", algebra, algebra, antipode, anti=True),
        )

    @classmethod
    def primitive(cls, algebra: Presentation, name: Optional[str] = None) -> "HopfStructure":
        """Δx = x⊗1 + 1⊗x, ε(x) = 0, S(x) = −x: the enveloping-algebra structure."""
        if algebra.invertible:
            raise StructureException(f"{algebra.name} has invertible generators; they cannot be primitive")
        square = TensorAlgebra(algebra, 2)
        one = algebra.one
        coproduct, counit, antipode = {}, {}, {}
        for g in algebra.generators:
            x = algebra.gen(g)
            coproduct[g] = square.tensor(x, one) + square.tensor(one, x)
            counit[g] = 0
            antipode[g] = -x
        return cls.from_images(name or f"{algebra.name}.primitive", algebra, coproduct, counit, antipode)

    def epsilon(self, p: NCPoly) -> NCPoly:
        """ε(p) as an element of the algebra (a constant)."""
        value = self.counit.apply(p)
        return self.algebra.const(value.coefficient(()))

    def check_maps(self) -> CheckResult:
        return CheckResult.combine(
            "hopf_maps_respect_relations",
            [check_map(self.coproduct), check_map(self.counit), check_map(self.antipode)],
        )

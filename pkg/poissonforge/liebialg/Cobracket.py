from dataclasses import dataclass
from functools import cached_property
from typing import Any, Mapping, Sequence

from sympy.polys.domains import QQ_I

from poissonforge.exactcoeff.scalars import Scalar, scalar
from poissonforge.exceptions import StructureException
from poissonforge.liebialg.LieAlgebra import LieAlgebra
from poissonforge.liebialg.Tensor import Tensor
from poissonforge.report import CheckResult


@dataclass(frozen=True, eq=False)
class Cobracket:
    """δ(e_i) = Σ d[i][j][k] e_j⊗e_k, stored as one rank-2 tensor per basis element."""

    algebra: LieAlgebra
    images: Mapping[int, Tensor]
    strict: bool = True

    def __post_init__(self):
        images = {}
        for i in range(self.algebra.dim):
            t = self.images.get(i) or Tensor.zero(self.algebra, 2)
            if t.rank != 2:
                raise StructureException("cobracket images must have rank 2")
            images[i] = t
        object.__setattr__(self, "images", images)
        if self.strict:
            result = self.check_coantisymmetry()
            if not result:
                raise StructureException(
                    "cobracket is not co-antisymmetric", defect=result.first_defect
                )

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "Cobracket":
        return cls(algebra, {})

    @classmethod
    def from_wedges(
        cls, algebra: LieAlgebra, wedges: Mapping[str, Sequence[tuple[Any, str, str]]]
    ) -> "Cobracket":
        """``{"Y": [("-1", "X", "Y")]}`` means δ(Y) = −X∧Y."""
        images = {}
        for name, terms in wedges.items():
            t = Tensor.zero(algebra, 2)
            for coeff, x, y in terms:
                t = t + Tensor.wedge(algebra, algebra.index(x), algebra.index(y), coeff)
            images[algebra.index(name)] = t
        return cls(algebra, images)

    def image(self, i: int) -> Tensor:
        return self.images[i]

    def component(self, i: int, j: int, k: int) -> Scalar:
        return self.images[i].components.get((j, k), QQ_I.zero)

    def apply(self, vec: Mapping[int, Scalar]) -> Tensor:
        total = Tensor.zero(self.algebra, 2)
        for i, c in vec.items():
            total = total + self.images[i].scale(c)
        return total

    @cached_property
    def is_zero(self) -> bool:
        return all(t.is_zero for t in self.images.values())

    def check_coantisymmetry(self) -> CheckResult:
        defects = [
            (f"δ({self.algebra.basis[i]})", t.format())
            for i, t in self.images.items()
            if not t.is_antisymmetric()
        ]
        return CheckResult.from_defects("co-antisymmetry", defects)

    def scale(self, factor: Any) -> "Cobracket":
        f = scalar(factor)
        return Cobracket(self.algebra, {i: t.scale(f) for i, t in self.images.items()}, self.strict)

    def table(self) -> dict[str, str]:
        return {
            f"δ({self.algebra.basis[i]})": t.format_wedge() for i, t in sorted(self.images.items())
        }

    def same_as(self, other: "Cobracket") -> bool:
        return all(
            self.images[i].components == other.images[i].components
            for i in range(self.algebra.dim)
        )


@dataclass(frozen=True, eq=False)
class RMatrix:
    """An element r of g⊗g with its symmetric and antisymmetric parts."""

    tensor: Tensor

    def __post_init__(self):
        if self.tensor.rank != 2:
            raise StructureException("an r-matrix is a rank-2 tensor")

    @property
    def algebra(self) -> LieAlgebra:
        return self.tensor.algebra

    @cached_property
    def symmetric(self) -> Tensor:
        return self.tensor.symmetric_part

    @cached_property
    def antisymmetric(self) -> Tensor:
        return self.tensor.antisymmetric_part

    @classmethod
    def from_factors(cls, algebra: LieAlgebra, terms) -> "RMatrix":
        return cls(Tensor.from_factors(algebra, terms, rank=2))

    def scale(self, factor: Any) -> "RMatrix":
        return RMatrix(self.tensor.scale(factor))

    def __str__(self) -> str:
        return self.tensor.format()

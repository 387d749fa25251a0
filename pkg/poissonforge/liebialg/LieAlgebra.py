import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Mapping, Sequence

from sympy.polys.domains import QQ_I

from poissonforge.exactcoeff.scalars import Scalar, format_terms, scalar
from poissonforge.exceptions import InputException, StructureException
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)

Vector = dict[int, Scalar]
Constants = dict[tuple[int, int], Vector]


def add_into(target: Vector, source: Mapping[int, Scalar], factor: Scalar = QQ_I.one):
    for k, c in source.items():
        value = target.get(k, QQ_I.zero) + factor * c
        if value:
            target[k] = value
        else:
            target.pop(k, None)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """A finite-dimensional Lie algebra given by sparse structure constants.

    ``constants[(i, j)]`` is the expansion of [e_i, e_j]. With ``strict`` set,
    antisymmetry and the Jacobi identity are enforced at construction.
    """

    name: str
    basis: tuple[str, ...]
    constants: Constants
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(set(self.basis)) != len(self.basis):
            raise StructureException(f"duplicate basis names in {self.name}: {self.basis}")
        cleaned: Constants = {}
        for (i, j), vec in self.constants.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise StructureException(f"bracket index out of range in {self.name}")
            row = {k: scalar(c) for k, c in vec.items() if scalar(c)}
            if row:
                cleaned[(i, j)] = row
        object.__setattr__(self, "constants", cleaned)
        if self.strict:
            result = self.check_antisymmetry()
            if not result:
                raise StructureException(
                    f"{self.name} is not antisymmetric", defect=result.first_defect
                )
            result = self.check_jacobi()
            if not result:
                raise StructureException(
                    f"{self.name} violates the Jacobi identity", defect=result.first_defect
                )

    @classmethod
    def from_table(
        cls,
        name: str,
        basis: Sequence[str],
        brackets: Mapping[tuple[str, str], Mapping[str, Any]],
        strict: bool = True,
        complete: bool = True,
    ) -> "LieAlgebra":
        """Build from named brackets; with ``complete`` the reversed brackets are filled in."""
        index = {b: n for n, b in enumerate(basis)}
        constants: Constants = {}
        for (x, y), expansion in brackets.items():
            for label in (x, y, *expansion):
                if label not in index:
                    raise InputException(f"unknown basis element {label!r} in {name}", key=label)
            vec = {index[k]: scalar(c) for k, c in expansion.items()}
            constants[(index[x], index[y])] = vec
            if complete and (index[y], index[x]) not in constants:
                constants[(index[y], index[x])] = {k: -c for k, c in vec.items()}
        return cls(name, tuple(basis), constants, strict)

    @classmethod
    def abelian(cls, name: str, basis: Sequence[str]) -> "LieAlgebra":
        return cls(name, tuple(basis), {})

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_abelian(self) -> bool:
        return not self.constants

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise InputException(f"{name!r} is not a basis element of {self.name}", key=name)

    def bracket_basis(self, i: int, j: int) -> Vector:
        return dict(self.constants.get((i, j), {}))

    def structure(self, i: int, j: int, k: int) -> Scalar:
        return self.constants.get((i, j), {}).get(k, QQ_I.zero)

    def bracket(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Vector:
        result: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                add_into(result, self.constants.get((i, j), {}), a * b)
        return result

    @cached_property
    def ad_matrices(self) -> list[list[list[Scalar]]]:
        """``ad_matrices[i][k][j]`` is the e_k component of [e_i, e_j]."""
        return [
            [[self.structure(i, j, k) for j in range(self.dim)] for k in range(self.dim)]
            for i in range(self.dim)
        ]

    def format_vector(self, vec: Mapping[int, Scalar]) -> str:
        return format_terms((vec[k], self.basis[k]) for k in sorted(vec))

    def check_antisymmetry(self) -> CheckResult:
        defects = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                total = dict(self.bracket_basis(i, j))
                add_into(total, self.bracket_basis(j, i))
                if total:
                    defects.append(
                        (f"[{self.basis[i]},{self.basis[j]}]+[{self.basis[j]},{self.basis[i]}]",
                         self.format_vector(total))
                    )
        return CheckResult.from_defects("antisymmetry", defects)

    def jacobiator(self, i: int, j: int, k: int) -> Vector:
        e = lambda n: {n: QQ_I.one}  # noqa: E731
        total: Vector = {}
        add_into(total, self.bracket(e(i), self.bracket_basis(j, k)))
        add_into(total, self.bracket(e(j), self.bracket_basis(k, i)))
        add_into(total, self.bracket(e(k), self.bracket_basis(i, j)))
        return total

    def check_jacobi(self) -> CheckResult:
        defects = []
        for i, j, k in combinations(range(self.dim), 3):
            total = self.jacobiator(i, j, k)
            if total:
                label = f"({self.basis[i]},{self.basis[j]},{self.basis[k]})"
                defects.append((label, self.format_vector(total)))
        if defects:
            logger.debug("%s: %d Jacobi defects", self.name, len(defects))
        return CheckResult.from_defects("jacobi", defects)

    def same_constants(self, other: "LieAlgebra") -> bool:
        return self.dim == other.dim and self.constants == other.constants

    def table(self) -> dict[str, str]:
        return {
            f"[{self.basis[i]},{self.basis[j]}]": self.format_vector(self.constants[(i, j)])
            for i, j in sorted(self.constants)
            if i < j
        }


def check_jacobi(algebra: LieAlgebra) -> CheckResult:
    return CheckResult.combine(
        "check_jacobi", [algebra.check_antisymmetry(), algebra.check_jacobi()]
    )

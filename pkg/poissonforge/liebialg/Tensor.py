from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping, Optional, Sequence

from sympy.polys.domains import QQ_I

from poissonforge.exactcoeff.scalars import HALF, Scalar, format_terms, scalar
from poissonforge.exceptions import InputException, StructureException
from poissonforge.liebialg.LieAlgebra import LieAlgebra

Index = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Tensor:
    """An element of g^{⊗rank} as a sparse map from multi-indices to scalars."""

    algebra: LieAlgebra
    rank: int
    components: Mapping[Index, Scalar]

    def __post_init__(self):
        cleaned: dict[Index, Scalar] = {}
        for idx, c in self.components.items():
            idx = tuple(idx)
            if len(idx) != self.rank or any(not 0 <= i < self.algebra.dim for i in idx):
                raise StructureException(f"bad tensor index {idx} for rank {self.rank}")
            c = scalar(c)
            if c:
                cleaned[idx] = cleaned.get(idx, QQ_I.zero) + c
        object.__setattr__(self, "components", {k: v for k, v in cleaned.items() if v})

    @classmethod
    def zero(cls, algebra: LieAlgebra, rank: int) -> "Tensor":
        return cls(algebra, rank, {})

    @classmethod
    def from_factors(
        cls,
        algebra: LieAlgebra,
        terms: Iterable[tuple[Any, Sequence[str]]],
        rank: Optional[int] = None,
    ) -> "Tensor":
        """Build from (coefficient, [basis name, ...]) pairs."""
        components: dict[Index, Scalar] = {}
        for coeff, names in terms:
            idx = tuple(algebra.index(n) for n in names)
            if rank is None:
                rank = len(idx)
            elif rank != len(idx):
                raise InputException("tensor terms of different rank")
            components[idx] = components.get(idx, QQ_I.zero) + scalar(coeff)
        return cls(algebra, rank or 0, components)

    @classmethod
    def wedge(cls, algebra: LieAlgebra, i: int, j: int, coeff: Any = 1) -> "Tensor":
        c = scalar(coeff)
        return cls(algebra, 2, {(i, j): c}) - cls(algebra, 2, {(j, i): c})

    def _check(self, other: "Tensor"):
        if other.algebra is not self.algebra or other.rank != self.rank:
            raise InputException("tensors over different algebras or of different rank")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        merged = dict(self.components)
        for k, c in other.components.items():
            merged[k] = merged.get(k, QQ_I.zero) + c
        return Tensor(self.algebra, self.rank, merged)

    def __neg__(self) -> "Tensor":
        return Tensor(self.algebra, self.rank, {k: -c for k, c in self.components.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, factor: Any) -> "Tensor":
        f = scalar(factor)
        return Tensor(self.algebra, self.rank, {k: f * c for k, c in self.components.items()})

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            other.algebra is self.algebra
            and other.rank == self.rank
            and dict(self.components) == dict(other.components)
        )

    __hash__ = None  # type: ignore

    @property
    def is_zero(self) -> bool:
        return not self.components

    def tensor(self, other: "Tensor") -> "Tensor":
        components = {
            a + b: x * y for a, x in self.components.items() for b, y in other.components.items()
        }
        return Tensor(self.algebra, self.rank + other.rank, components)

    def permute(self, order: Sequence[int]) -> "Tensor":
        """Move slot ``order[p]`` of each index to position p."""
        return Tensor(
            self.algebra,
            self.rank,
            {tuple(idx[p] for p in order): c for idx, c in self.components.items()},
        )

    def flip(self) -> "Tensor":
        return self.permute((1, 0))

    @cached_property
    def symmetric_part(self) -> "Tensor":
        return (self + self.flip()).scale(HALF)

    @cached_property
    def antisymmetric_part(self) -> "Tensor":
        return (self - self.flip()).scale(HALF)

    def is_antisymmetric(self) -> bool:
        return self.flip() == -self

    def wedge_components(self) -> dict[tuple[int, int], Scalar]:
        """For an antisymmetric rank-2 tensor, the coefficients of e_i∧e_j with i < j."""
        return {(i, j): c for (i, j), c in self.components.items() if i < j}

    def format(self) -> str:
        names = self.algebra.basis
        return format_terms(
            (self.components[idx], "⊗".join(names[i] for i in idx))
            for idx in sorted(self.components)
        )

    def format_wedge(self) -> str:
        names = self.algebra.basis
        if not self.is_antisymmetric():
            return self.format()
        wedges = self.wedge_components()
        return format_terms(
            (wedges[(i, j)], f"{names[i]}∧{names[j]}") for i, j in sorted(wedges)
        )

    def __str__(self) -> str:
        return self.format()


def ad_tensor(algebra: LieAlgebra, x: int, t: Tensor) -> Tensor:
    """ad_x extended to tensors as a derivation: ad_x(a⊗b) = [x,a]⊗b + a⊗[x,b]."""
    components: dict[Index, Scalar] = {}
    for idx, c in t.components.items():
        for p, i in enumerate(idx):
            for k, s in algebra.bracket_basis(x, i).items():
                target = idx[:p] + (k,) + idx[p + 1 :]
                components[target] = components.get(target, QQ_I.zero) + c * s
    return Tensor(algebra, t.rank, components)

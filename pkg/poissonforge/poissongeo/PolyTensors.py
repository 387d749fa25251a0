"""Polynomial vector fields, forms and bivectors on a chart.

Two-forms and bivectors are stored on ordered variable pairs u < v; the
other half of the antisymmetric matrix is implied. Wedges carry no 1/2:
(α∧β)_{uv} = α_u β_v − α_v β_u.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Mapping, Sequence, Union

from poissonforge.exactcoeff.CoordPoly import Chart, CoordPoly
from poissonforge.exceptions import InputException, StructureException

Pair = tuple[int, int]
Factor = Union[CoordPoly, int, Any]


def _same_chart(*charts: Chart):
    if len(set(charts)) != 1:
        raise InputException("tensors live on different charts")


def _components(chart: Chart, components: Sequence[CoordPoly]) -> tuple[CoordPoly, ...]:
    if len(components) != chart.dim:
        raise StructureException(f"expected {chart.dim} components, got {len(components)}")
    return tuple(chart.poly(c) for c in components)


def _pairs(chart: Chart, components: Mapping[Pair, CoordPoly]) -> dict[Pair, CoordPoly]:
    cleaned: dict[Pair, CoordPoly] = {}
    for (u, v), c in components.items():
        c = chart.poly(c)
        if u == v:
            if not c.is_zero:
                raise StructureException("diagonal component of an antisymmetric tensor")
            continue
        if u > v:
            u, v, c = v, u, -c
        cleaned[(u, v)] = cleaned.get((u, v), chart.zero) + c
    return {k: c for k, c in cleaned.items() if not c.is_zero}


def _format(chart: Chart, items: list[tuple[CoordPoly, str]]) -> str:
    parts = [f"({c})*{label}" for c, label in items if not c.is_zero]
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class PolyVectorField:
    chart: Chart
    components: tuple[CoordPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", _components(self.chart, self.components))

    @classmethod
    def zero(cls, chart: Chart) -> "PolyVectorField":
        return cls(chart, tuple(chart.zero for _ in chart.variables))

    @classmethod
    def from_map(cls, chart: Chart, values: Mapping[str, Any]) -> "PolyVectorField":
        comps = [chart.zero] * chart.dim
        for name, value in values.items():
            comps[chart.index(name)] = chart.poly(value)
        return cls(chart, tuple(comps))

    def __getitem__(self, name: str) -> CoordPoly:
        return self.components[self.chart.index(name)]

    def apply(self, f: CoordPoly) -> CoordPoly:
        """X(f) = Σ X^v ∂_v f."""
        _same_chart(self.chart, f.chart)
        total = self.chart.zero
        for name, c in zip(self.chart.variables, self.components):
            if not c.is_zero:
                total = total + c * f.diff(name)
        return total

    def bracket(self, other: "PolyVectorField") -> "PolyVectorField":
        _same_chart(self.chart, other.chart)
        return PolyVectorField(
            self.chart,
            tuple(self.apply(b) - other.apply(a) for a, b in zip(self.components, other.components)),
        )

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        _same_chart(self.chart, other.chart)
        return PolyVectorField(
            self.chart, tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField(self.chart, tuple(-a for a in self.components))

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return self + (-other)

    def scale(self, factor: Factor) -> "PolyVectorField":
        return PolyVectorField(self.chart, tuple(a * factor for a in self.components))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return other.chart == self.chart and (self - other).is_zero

    __hash__ = None  # type: ignore

    def __str__(self) -> str:
        return _format(
            self.chart, [(c, f"∂_{v}") for v, c in zip(self.chart.variables, self.components)]
        )


@dataclass(frozen=True, eq=False)
class PolyOneForm:
    chart: Chart
    components: tuple[CoordPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", _components(self.chart, self.components))

    @classmethod
    def zero(cls, chart: Chart) -> "PolyOneForm":
        return cls(chart, tuple(chart.zero for _ in chart.variables))

    @classmethod
    def exact(cls, f: CoordPoly) -> "PolyOneForm":
        """df."""
        return cls(f.chart, tuple(f.diff(v) for v in f.chart.variables))

    @classmethod
    def from_map(cls, chart: Chart, values: Mapping[str, Any]) -> "PolyOneForm":
        comps = [chart.zero] * chart.dim
        for name, value in values.items():
            comps[chart.index(name)] = chart.poly(value)
        return cls(chart, tuple(comps))

    def __getitem__(self, name: str) -> CoordPoly:
        return self.components[self.chart.index(name)]

    def d(self) -> "PolyTwoForm":
        names = self.chart.variables
        comps = {
            (u, v): self.components[v].diff(names[u]) - self.components[u].diff(names[v])
            for u, v in combinations(range(self.chart.dim), 2)
        }
        return PolyTwoForm(self.chart, comps)

    def wedge(self, other: "PolyOneForm") -> "PolyTwoForm":
        _same_chart(self.chart, other.chart)
        a, b = self.components, other.components
        return PolyTwoForm(
            self.chart,
            {(u, v): a[u] * b[v] - a[v] * b[u] for u, v in combinations(range(self.chart.dim), 2)},
        )

    def contract(self, field: PolyVectorField) -> CoordPoly:
        """i_X α = Σ α_v X^v."""
        _same_chart(self.chart, field.chart)
        total = self.chart.zero
        for a, x in zip(self.components, field.components):
            total = total + a * x
        return total

    def lie_derivative(self, field: PolyVectorField) -> "PolyOneForm":
        """L_X α = i_X dα + d(i_X α)."""
        return self.d().interior(field) + PolyOneForm.exact(self.contract(field))

    def __add__(self, other: "PolyOneForm") -> "PolyOneForm":
        _same_chart(self.chart, other.chart)
        return PolyOneForm(self.chart, tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "PolyOneForm":
        return PolyOneForm(self.chart, tuple(-a for a in self.components))

    def __sub__(self, other: "PolyOneForm") -> "PolyOneForm":
        return self + (-other)

    def scale(self, factor: Factor) -> "PolyOneForm":
        return PolyOneForm(self.chart, tuple(a * factor for a in self.components))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, PolyOneForm):
            return NotImplemented
        return other.chart == self.chart and (self - other).is_zero

    __hash__ = None  # type: ignore

    def __str__(self) -> str:
        return _format(
            self.chart, [(c, f"d{v}") for v, c in zip(self.chart.variables, self.components)]
        )


@dataclass(frozen=True, eq=False)
class PolyTwoForm:
    chart: Chart
    components: Mapping[Pair, CoordPoly]

    def __post_init__(self):
        object.__setattr__(self, "components", _pairs(self.chart, self.components))

    def entry(self, u: int, v: int) -> CoordPoly:
        if u == v:
            return self.chart.zero
        if u < v:
            return self.components.get((u, v), self.chart.zero)
        return -self.components.get((v, u), self.chart.zero)

    def interior(self, field: PolyVectorField) -> PolyOneForm:
        """(i_X ω)_v = Σ_u X^u ω_{uv}."""
        n = self.chart.dim
        comps = []
        for v in range(n):
            total = self.chart.zero
            for u in range(n):
                if not field.components[u].is_zero:
                    total = total + field.components[u] * self.entry(u, v)
            comps.append(total)
        return PolyOneForm(self.chart, tuple(comps))

    def d(self) -> dict[tuple[int, int, int], CoordPoly]:
        """(dω)_{uvw} = ∂_u ω_{vw} − ∂_v ω_{uw} + ∂_w ω_{uv} on u < v < w; zero entries dropped."""
        names = self.chart.variables
        result = {}
        for u, v, w in combinations(range(self.chart.dim), 3):
            value = (
                self.entry(v, w).diff(names[u])
                - self.entry(u, w).diff(names[v])
                + self.entry(u, v).diff(names[w])
            )
            if not value.is_zero:
                result[(u, v, w)] = value
        return result

    def __add__(self, other: "PolyTwoForm") -> "PolyTwoForm":
        _same_chart(self.chart, other.chart)
        merged = dict(self.components)
        for k, c in other.components.items():
            merged[k] = merged.get(k, self.chart.zero) + c
        return PolyTwoForm(self.chart, merged)

    def __neg__(self) -> "PolyTwoForm":
        return PolyTwoForm(self.chart, {k: -c for k, c in self.components.items()})

    def __sub__(self, other: "PolyTwoForm") -> "PolyTwoForm":
        return self + (-other)

    def scale(self, factor: Factor) -> "PolyTwoForm":
        return PolyTwoForm(self.chart, {k: c * factor for k, c in self.components.items()})

    @property
    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, PolyTwoForm):
            return NotImplemented
        return other.chart == self.chart and (self - other).is_zero

    __hash__ = None  # type: ignore

    def __str__(self) -> str:
        names = self.chart.variables
        return _format(
            self.chart,
            [(c, f"d{names[u]}∧d{names[v]}") for (u, v), c in sorted(self.components.items())],
        )


@dataclass(frozen=True, eq=False)
class PolyBivector:
    """π = Σ_{u<v} π^{uv} ∂_u∧∂_v."""

    chart: Chart
    components: Mapping[Pair, CoordPoly]

    def __post_init__(self):
        object.__setattr__(self, "components", _pairs(self.chart, self.components))

    @classmethod
    def zero(cls, chart: Chart) -> "PolyBivector":
        return cls(chart, {})

    @classmethod
    def from_wedges(cls, chart: Chart, wedges: Mapping[tuple[str, str], Any]) -> "PolyBivector":
        comps: dict[Pair, CoordPoly] = {}
        for (x, y), value in wedges.items():
            u, v = chart.index(x), chart.index(y)
            p = chart.poly(value)
            if u > v:
                u, v, p = v, u, -p
            comps[(u, v)] = comps.get((u, v), chart.zero) + p
        return cls(chart, comps)

    @classmethod
    def wedge_fields(cls, x: PolyVectorField, y: PolyVectorField) -> "PolyBivector":
        """(X∧Y)^{uv} = X^u Y^v − X^v Y^u."""
        _same_chart(x.chart, y.chart)
        a, b = x.components, y.components
        return cls(
            x.chart,
            {(u, v): a[u] * b[v] - a[v] * b[u] for u, v in combinations(range(x.chart.dim), 2)},
        )

    def entry(self, u: int, v: int) -> CoordPoly:
        if u == v:
            return self.chart.zero
        if u < v:
            return self.components.get((u, v), self.chart.zero)
        return -self.components.get((v, u), self.chart.zero)

    def contract(self, alpha: PolyOneForm, beta: PolyOneForm) -> CoordPoly:
        """π(α, β) = Σ π^{uv} α_u β_v."""
        total = self.chart.zero
        a, b = alpha.components, beta.components
        for (u, v), c in self.components.items():
            total = total + c * (a[u] * b[v] - a[v] * b[u])
        return total

    def sharp(self, alpha: PolyOneForm) -> PolyVectorField:
        """π♯(α) = π(α, ·): (π♯α)^v = Σ_u α_u π^{uv}."""
        _same_chart(self.chart, alpha.chart)
        n = self.chart.dim
        comps = []
        for v in range(n):
            total = self.chart.zero
            for u in range(n):
                if not alpha.components[u].is_zero:
                    total = total + alpha.components[u] * self.entry(u, v)
            comps.append(total)
        return PolyVectorField(self.chart, tuple(comps))

    def lie_derivative(self, field: PolyVectorField) -> "PolyBivector":
        """(L_X π)^{ij} = X(π^{ij}) − Σ_k π^{kj} ∂_k X^i − Σ_k π^{ik} ∂_k X^j."""
        _same_chart(self.chart, field.chart)
        names = self.chart.variables
        n = self.chart.dim
        comps = {}
        for i, j in combinations(range(n), 2):
            value = field.apply(self.entry(i, j))
            for k in range(n):
                value = value - self.entry(k, j) * field.components[i].diff(names[k])
                value = value - self.entry(i, k) * field.components[j].diff(names[k])
            comps[(i, j)] = value
        return PolyBivector(self.chart, comps)

    def substitute(self, mapping: Mapping[str, CoordPoly], chart: Chart) -> "PolyBivector":
        """Substitute in the coefficients only (the frame ∂_u is kept)."""
        return PolyBivector(chart, {k: c.subs(mapping, chart) for k, c in self.components.items()})

    def __add__(self, other: "PolyBivector") -> "PolyBivector":
        _same_chart(self.chart, other.chart)
        merged = dict(self.components)
        for k, c in other.components.items():
            merged[k] = merged.get(k, self.chart.zero) + c
        return PolyBivector(self.chart, merged)

    def __neg__(self) -> "PolyBivector":
        return PolyBivector(self.chart, {k: -c for k, c in self.components.items()})

    def __sub__(self, other: "PolyBivector") -> "PolyBivector":
        return self + (-other)

    def scale(self, factor: Factor) -> "PolyBivector":
        return PolyBivector(self.chart, {k: c * factor for k, c in self.components.items()})

    @property
    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, PolyBivector):
            return NotImplemented
        return other.chart == self.chart and (self - other).is_zero

    __hash__ = None  # type: ignore

    def table(self) -> dict[str, str]:
        """Bracket table {x_u, x_v} = π^{uv}."""
        names = self.chart.variables
        return {
            f"{{{names[u]},{names[v]}}}": str(c) for (u, v), c in sorted(self.components.items())
        }

    def __str__(self) -> str:
        names = self.chart.variables
        return _format(
            self.chart,
            [(c, f"∂_{names[u]}∧∂_{names[v]}") for (u, v), c in sorted(self.components.items())],
        )

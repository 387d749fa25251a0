"""JSON input schema. Keys may be given in snake_case or camelCase."""

from typing import Any, Literal, Optional, Union

from inflection import camelize
from pydantic import BaseModel, ConfigDict

Scalar = Union[str, int]
Expectation = Literal["pass", "fail"]
# A string in generator symbols or a structured {series_in|sum|product|scale} object
PolySpec = Any
# One list of factors per term
TensorSpec = list[list[PolySpec]]


def _alias(name: str) -> str:
    return camelize(name, False)


class SpecModel(BaseModel):
    model_config = ConfigDict(alias_generator=_alias, populate_by_name=True, extra="forbid")


class Named(SpecModel):
    name: str
    description: Optional[str] = None


class Checked(Named):
    """An entry that produces records.

    ``expect`` maps check names to the expected verdict (default pass). With
    ``paper`` set, failures of the stated structure are discrepancies.
    """

    expect: dict[str, Expectation] = {}
    paper: bool = False


# claims


class TableClaim(SpecModel):
    """Stated brackets ``{"{a,b}": "a*b/4"}``; derived must equal normalization × stated."""

    table: dict[str, str]
    normalization: Scalar = "1"
    source: Optional[str] = None


class CobracketClaim(SpecModel):
    wedges: dict[str, list[list[Scalar]]]
    normalization: Scalar = "1"
    source: Optional[str] = None


class BracketClaim(SpecModel):
    """Stated brackets on named basis elements, e.g. ``{"X*,Y*": {"Y*": "-1"}}``."""

    brackets: dict[str, dict[str, Scalar]]
    normalization: Scalar = "1"
    source: Optional[str] = None


class ElementClaim(SpecModel):
    label: str
    lhs: PolySpec
    rhs: PolySpec
    normalization: Scalar = "1"
    source: Optional[str] = None


class MaurerCartanClaim(SpecModel):
    """dθ_form = normalization · θ_left ∧ θ_right."""

    form: str
    left: str
    right: str
    normalization: Scalar = "1"
    source: Optional[str] = None


# building blocks


class LieAlgebraSpec(Named):
    basis: list[str]
    brackets: dict[str, dict[str, Scalar]] = {}


class RMatrixSpec(Named):
    algebra: str
    terms: list[list[Scalar]] = []
    wedges: list[list[Scalar]] = []


class CobracketSpec(Named):
    algebra: str
    wedges: dict[str, list[list[Scalar]]] = {}
    r_matrix: Optional[str] = None


class ChartSpec(Named):
    variables: list[str]
    invertible: list[str] = []


class BivectorSpec(Named):
    chart: str
    wedges: dict[str, Scalar] = {}


class MatrixGroupSpec(Named):
    chart: str
    algebra: str
    entries: list[list[Scalar]]
    basis_matrices: list[list[list[Scalar]]]
    constraint: Optional[str] = None
    elimination: Optional[list[str]] = None


class PresentationSpec(Named):
    generators: list[str] = []
    invertible: list[str] = []
    commute_by_default: bool = True
    rules: dict[str, PolySpec] = {}
    enveloping: Optional[str] = None


# checked entries


class BialgebraSpec(Checked):
    algebra: str
    r_matrix: Optional[str] = None
    cobracket: Optional[str] = None
    cobracket_claim: Optional[CobracketClaim] = None
    dual_claim: Optional[BracketClaim] = None


class PoissonGroupSpec(Checked):
    group: str
    r_matrix: str
    casimirs: list[str] = []
    claim: Optional[TableClaim] = None


class PoissonStructureSpec(Checked):
    bivector: str
    casimirs: list[str] = []
    forms: list[dict[str, str]] = []


class PoissonActionSpec(Checked):
    bivector: str
    algebra: str
    cobracket: str
    fields: dict[str, dict[str, str]]


class MomentumMapSpec(Checked):
    kind: Literal["classical", "infinitesimal", "heisenberg", "maurer_cartan", "dressing", "deformation"]
    bivector: Optional[str] = None
    algebra: Optional[str] = None
    cobracket: Optional[str] = None
    group: Optional[str] = None
    hamiltonians: dict[str, str] = {}
    hamiltonian_sign: int = 1
    fields: dict[str, dict[str, str]] = {}
    forms: dict[str, dict[str, str]] = {}
    heisenberg: Optional[list[str]] = None
    # deformation: X(ξ) = ξ_M(potential) unless given as hamiltonians
    potential: Optional[str] = None
    mc_claims: list[MaurerCartanClaim] = []


class HopfSpec(Checked):
    algebra: str
    primitive: bool = False
    coproduct: dict[str, TensorSpec] = {}
    counit: dict[str, Scalar] = {}
    antipode: dict[str, PolySpec] = {}
    r_matrix: Optional[TensorSpec] = None
    classical: Optional[str] = None
    element_claims: list[ElementClaim] = []
    cobracket_claim: Optional[CobracketClaim] = None


class RelationSpec(SpecModel):
    label: str
    lhs: PolySpec
    rhs: PolySpec
    hbar_divisor: int = 0
    claimed: bool = False


class IdentitySpec(SpecModel):
    label: str
    lhs: PolySpec
    rhs: PolySpec


class MultiActionClaim(SpecModel):
    letters: list[str]
    arguments: list[PolySpec]
    value: PolySpec


class ActionSpec(Checked):
    group: str
    target: str
    generators: dict[str, Any]
    coproduct: dict[str, TensorSpec] = {}
    counit: dict[str, Scalar] = {}
    momentum: dict[str, list[list[PolySpec]]] = {}
    relations: list[RelationSpec] = []
    identities: list[IdentitySpec] = []
    multi_action: list[MultiActionClaim] = []
    coboundary_length: int = 0


class QuantumReductionSpec(Checked):
    action: str
    ideal: dict[str, PolySpec]
    identities: list[IdentitySpec] = []
    claimed_identities: list[IdentitySpec] = []


class ReductionSpec(Checked):
    bivector: str
    algebra: Optional[str] = None
    fields: dict[str, dict[str, str]] = {}
    hamiltonians: dict[str, str] = {}
    hamiltonian_fields: bool = False
    ideal: list[Union[str, list[str]]] = []
    brackets: list[list[str]] = []
    claim: Optional[TableClaim] = None
    pipelines: bool = False


class SpecFile(SpecModel):
    lie_algebras: list[LieAlgebraSpec] = []
    r_matrices: list[RMatrixSpec] = []
    cobrackets: list[CobracketSpec] = []
    charts: list[ChartSpec] = []
    bivectors: list[BivectorSpec] = []
    matrix_groups: list[MatrixGroupSpec] = []
    presentations: list[PresentationSpec] = []
    hopf_structures: list[HopfSpec] = []
    actions: list[ActionSpec] = []
    reductions: list[ReductionSpec] = []
    bialgebras: list[BialgebraSpec] = []
    poisson_groups: list[PoissonGroupSpec] = []
    poisson_structures: list[PoissonStructureSpec] = []
    poisson_actions: list[PoissonActionSpec] = []
    momentum_maps: list[MomentumMapSpec] = []
    quantum_reductions: list[QuantumReductionSpec] = []

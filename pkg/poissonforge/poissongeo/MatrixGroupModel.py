import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Optional, Sequence

from sympy.polys.domains import QQ_I

from poissonforge.exactcoeff.CoordPoly import Chart, CoordPoly
from poissonforge.exactcoeff.linalg import independent_subset, to_matrix
from poissonforge.exactcoeff.scalars import Scalar, scalar
from poissonforge.exceptions import StructureException
from poissonforge.liebialg.LieAlgebra import LieAlgebra
from poissonforge.poissongeo.PolyTensors import PolyVectorField

logger = logging.getLogger(__name__)

PolyMatrix = list[list[CoordPoly]]
ScalarMatrix = list[list[Scalar]]


def matmul(a: PolyMatrix, b: PolyMatrix, chart: Chart) -> PolyMatrix:
    n, m, k = len(a), len(b[0]), len(b)
    result = []
    for i in range(n):
        row = []
        for j in range(m):
            total = chart.zero
            for t in range(k):
                total = total + a[i][t] * b[t][j]
            row.append(total)
        result.append(row)
    return result


def determinant(m: PolyMatrix, chart: Chart) -> CoordPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = chart.zero
    for j in range(n):
        if m[0][j].is_zero:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * determinant(minor, chart)
        total = total + term if j % 2 == 0 else total - term
    return total


@dataclass(frozen=True, eq=False)
class MatrixGroupModel:
    """A matrix group whose free entries are the chart variables.

    ``basis_matrices[i]`` realizes basis element i of ``algebra``; fixed entries
    (constants) must be preserved by products and have zero tangent directions.
    """

    name: str
    chart: Chart
    entries: tuple[tuple[CoordPoly, ...], ...]
    algebra: LieAlgebra
    basis_matrices: tuple[tuple[tuple[Scalar, ...], ...], ...]
    constraint: Optional[CoordPoly] = None
    elimination: Optional[tuple[str, CoordPoly]] = None
    positions: dict[str, tuple[int, int]] = field(init=False)

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise StructureException(f"{self.name}: group matrix is not square")
        positions = {}
        for p, q in product(range(n), repeat=2):
            e = self.entries[p][q]
            for v in self.chart.variables:
                if e == self.chart.var(v):
                    positions[v] = (p, q)
        missing = set(self.chart.variables) - set(positions)
        if missing:
            raise StructureException(f"{self.name}: variables {sorted(missing)} are not matrix entries")
        object.__setattr__(self, "positions", positions)
        if len(self.basis_matrices) != self.algebra.dim:
            raise StructureException(f"{self.name}: one basis matrix per algebra element required")
        result = self.check_closure()
        if result:
            raise StructureException(f"{self.name}: basis matrices do not close", defect=result)

    @classmethod
    def build(
        cls,
        name: str,
        chart: Chart,
        entries: Sequence[Sequence[Any]],
        algebra: LieAlgebra,
        basis_matrices: Sequence[Sequence[Sequence[Any]]],
        constraint: Optional[Any] = None,
        elimination: Optional[tuple[str, Any]] = None,
    ) -> "MatrixGroupModel":
        return cls(
            name,
            chart,
            tuple(tuple(chart.poly(e) for e in row) for row in entries),
            algebra,
            tuple(tuple(tuple(scalar(x) for x in row) for row in m) for m in basis_matrices),
            None if constraint is None else chart.poly(constraint),
            None if elimination is None else (elimination[0], chart.poly(elimination[1])),
        )

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def matrix(self) -> PolyMatrix:
        return [list(row) for row in self.entries]

    def basis_poly_matrix(self, i: int) -> PolyMatrix:
        return [[self.chart.const(x) for x in row] for row in self.basis_matrices[i]]

    def check_closure(self) -> Optional[str]:
        """None when [B_i, B_j] = Σ c_ij^k B_k for all pairs."""
        n = self.size
        B = self.basis_matrices
        for i, j in product(range(self.algebra.dim), repeat=2):
            for p, q in product(range(n), repeat=2):
                commutator = sum(
                    (B[i][p][t] * B[j][t][q] - B[j][p][t] * B[i][t][q] for t in range(n)),
                    QQ_I.zero,
                )
                expected = sum(
                    (c * B[k][p][q] for k, c in self.algebra.bracket_basis(i, j).items()),
                    QQ_I.zero,
                )
                if commutator != expected:
                    return f"[{self.algebra.basis[i]},{self.algebra.basis[j]}] at entry ({p},{q})"
        return None

    def variable_at(self, p: int, q: int) -> Optional[int]:
        for v, pos in self.positions.items():
            if pos == (p, q):
                return self.chart.index(v)
        return None

    def field_from_matrix(self, m: PolyMatrix) -> PolyVectorField:
        comps = [self.chart.zero] * self.chart.dim
        for v, (p, q) in self.positions.items():
            comps[self.chart.index(v)] = m[p][q]
        return PolyVectorField(self.chart, tuple(comps))

    def left_field(self, i: int) -> PolyVectorField:
        """X^L_i(g) = g·B_i."""
        return self.field_from_matrix(matmul(self.matrix, self.basis_poly_matrix(i), self.chart))

    def right_field(self, i: int) -> PolyVectorField:
        """X^R_i(g) = B_i·g."""
        return self.field_from_matrix(matmul(self.basis_poly_matrix(i), self.matrix, self.chart))

    def reduce(self, p: CoordPoly) -> CoordPoly:
        """Eliminate the constrained variable, if any."""
        if self.elimination is None:
            return p
        var, value = self.elimination
        return p.subs({var: value}, self.chart)

    def identity_point(self) -> dict[str, int]:
        return {v: 1 if p == q else 0 for v, (p, q) in self.positions.items()}

    @cached_property
    def inverse(self) -> PolyMatrix:
        """g⁻¹ by adjugate; the determinant must be a unit on the chart."""
        n = self.size
        det = determinant(self.matrix, self.chart)
        try:
            det_inv = det.inverse_monomial()
        except StructureException:
            raise StructureException(f"{self.name}: determinant {det} is not invertible on the chart")
        adj = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [
                    [self.entries[r][c] for c in range(n) if c != i] for r in range(n) if r != j
                ]
                cof = determinant(minor, self.chart) if minor else self.chart.one
                row.append(cof * det_inv if (i + j) % 2 == 0 else -(cof * det_inv))
            adj.append(row)
        return adj

    @cached_property
    def decomposition(self) -> tuple[list[tuple[int, int]], ScalarMatrix]:
        """Entry positions P and S⁻¹ with S[k][m] = (B_m)_{P_k} invertible."""
        n = self.size
        cells = list(product(range(n), repeat=2))
        rows = [[self.basis_matrices[m][p][q] for m in range(self.algebra.dim)] for p, q in cells]
        picked = independent_subset(rows)
        if len(picked) < self.algebra.dim:
            raise StructureException(f"{self.name}: basis matrices are linearly dependent")
        chosen = [cells[k] for k in picked]
        square = to_matrix([rows[k] for k in picked], self.algebra.dim)
        return chosen, square.inv().to_list()

    def decompose(self, m: PolyMatrix) -> list[CoordPoly]:
        """Coefficients of m on the basis matrices; raises when m leaves the algebra."""
        cells, inverse = self.decomposition
        coeffs = []
        for row in inverse:
            total = self.chart.zero
            for (p, q), s in zip(cells, row):
                if s:
                    total = total + m[p][q] * s
            coeffs.append(total)
        n = self.size
        for p, q in product(range(n), repeat=2):
            rebuilt = self.chart.zero
            for c, B in zip(coeffs, self.basis_matrices):
                if B[p][q]:
                    rebuilt = rebuilt + c * B[p][q]
            if rebuilt != m[p][q]:
                raise StructureException(f"{self.name}: matrix leaves the Lie algebra at ({p},{q})")
        return coeffs

    def doubled(self) -> tuple[Chart, dict[str, CoordPoly], dict[str, CoordPoly]]:
        """Chart with two copies of the variables, for identities on G×G."""
        g_names = [f"{v}_g" for v in self.chart.variables]
        h_names = [f"{v}_h" for v in self.chart.variables]
        invertible = {f"{v}_g" for v in self.chart.invertible} | {
            f"{v}_h" for v in self.chart.invertible
        }
        chart = Chart(tuple(g_names + h_names), frozenset(invertible), self.chart.order)
        g = {v: chart.var(f"{v}_g") for v in self.chart.variables}
        h = {v: chart.var(f"{v}_h") for v in self.chart.variables}
        return chart, g, h

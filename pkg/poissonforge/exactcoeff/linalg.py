"""Exact linear algebra over Q(i) and over truncated series in hbar.

Series systems A(hbar) x(hbar) = b(hbar) mod hbar**N are unrolled into one
block lower-triangular system over Q(i) on the stacked coefficients of x.
"""

import logging
from typing import Optional, Sequence

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from poissonforge.exactcoeff.HSeries import HSeries
from poissonforge.exactcoeff.scalars import Scalar, scalar

logger = logging.getLogger(__name__)

Rows = Sequence[Sequence[Scalar]]


def to_matrix(rows: Rows, ncols: int) -> DomainMatrix:
    data = [[scalar(e) for e in row] for row in rows]
    for row in data:
        if len(row) != ncols:
            raise ValueError(f"row of length {len(row)} in a matrix with {ncols} columns")
    return DomainMatrix(data, (len(data), ncols), QQ_I)


def rank(rows: Rows, ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return to_matrix(rows, ncols).rank()


def kernel(rows: Rows, ncols: int) -> list[list[Scalar]]:
    """A basis of {x : A x = 0}."""
    if ncols == 0:
        return []
    nonzero = [row for row in rows if any(row)]
    if not nonzero:
        return [[QQ_I.one if i == j else QQ_I.zero for j in range(ncols)] for i in range(ncols)]
    basis = to_matrix(nonzero, ncols).nullspace()
    return basis.to_list()


def solve(rows: Rows, rhs: Sequence[Scalar], ncols: int) -> Optional[list[Scalar]]:
    """One solution of A x = b with free unknowns set to zero, or None."""
    if len(rows) != len(rhs):
        raise ValueError("right-hand side does not match the number of rows")
    if not rows:
        return [QQ_I.zero] * ncols
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = to_matrix(augmented, ncols + 1).rref()
    if ncols in pivots:
        return None
    table = reduced.to_list()
    solution = [QQ_I.zero] * ncols
    for r, col in enumerate(pivots):
        solution[col] = table[r][ncols]
    return solution


def independent_subset(vectors: Sequence[Sequence[Scalar]]) -> list[int]:
    """Indices of a greedily chosen linearly independent subfamily."""
    chosen: list[int] = []
    kept: list[Sequence[Scalar]] = []
    for i, v in enumerate(vectors):
        if not any(v):
            continue
        candidate = kept + [v]
        if rank(candidate, len(v)) == len(candidate):
            chosen.append(i)
            kept = candidate
    return chosen


def _unroll(matrix: Sequence[Sequence[HSeries]], ncols: int, order: int) -> list[list[Scalar]]:
    nrows = len(matrix)
    big = [[QQ_I.zero] * (ncols * order) for _ in range(nrows * order)]
    for t in range(order):
        for j in range(t + 1):
            for r in range(nrows):
                for c in range(ncols):
                    value = matrix[r][c].coeff(t - j)
                    if value:
                        big[t * nrows + r][j * ncols + c] = value
    return big


def _fold(stacked: Sequence[Scalar], ncols: int, order: int) -> list[HSeries]:
    return [
        HSeries.from_coefficients([stacked[j * ncols + c] for j in range(order)], order)
        for c in range(ncols)
    ]


def series_kernel(matrix: Sequence[Sequence[HSeries]], ncols: int, order: int) -> list[list[HSeries]]:
    """Kernel vectors mod hbar**order whose hbar**0 parts are independent."""
    if ncols == 0:
        return []
    big = _unroll(matrix, ncols, order)
    basis = kernel(big, ncols * order)
    leading = [v[:ncols] for v in basis]
    picked = independent_subset(leading)
    logger.debug("series kernel: %d stacked solutions, %d kept", len(basis), len(picked))
    return [_fold(basis[i], ncols, order) for i in picked]


def series_solve(
    matrix: Sequence[Sequence[HSeries]], rhs: Sequence[HSeries], ncols: int, order: int
) -> Optional[list[HSeries]]:
    big = _unroll(matrix, ncols, order)
    stacked = [rhs[r].coeff(t) for t in range(order) for r in range(len(rhs))]
    solution = solve(big, stacked, ncols * order)
    if solution is None:
        return None
    return _fold(solution, ncols, order)

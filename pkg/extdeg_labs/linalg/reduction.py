import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from extdeg_labs.linalg.field import Scalar
from extdeg_labs.linalg.matrix import (
    DimensionMismatchError,
    Mat,
    Vector,
    hstack
)


LOGGER = logging.getLogger(__name__)


class NotAComplexError(ArithmeticError):
    def __init__(self, d_in_shape: Tuple[int, int], d_out_shape: Tuple[int, int]):
        super().__init__(
            f'not a complex: composite of {d_out_shape} after {d_in_shape} is nonzero'
        )
        self.d_in_shape = d_in_shape
        self.d_out_shape = d_out_shape


class RrefResult(NamedTuple):
    reduced: Mat
    rank: int
    pivots: Tuple[int, ...]


def rref(m: Mat) -> RrefResult:
    if m.rows == 0 or m.cols == 0:
        return RrefResult(reduced=m, rank=0, pivots=())
    reduced_dm, pivots = m.to_domain_matrix().rref()
    reduced = Mat.from_domain_matrix(m.field, reduced_dm)
    pivots = tuple(pivots)
    if any(reduced.entries[row][column] != 1 for row, column in enumerate(pivots)):
        reduced = _get_normalized_pivot_rows(reduced, pivots)
    return RrefResult(reduced=reduced, rank=len(pivots), pivots=pivots)


def _get_normalized_pivot_rows(reduced: Mat, pivots: Sequence[int]) -> Mat:
    field = reduced.field
    entries = list(reduced.entries)
    for row, column in enumerate(pivots):
        factor = field.inv(entries[row][column])
        entries[row] = tuple(field.mul(factor, value) for value in entries[row])
    return Mat(field, reduced.rows, reduced.cols, tuple(entries))


def rank(m: Mat) -> int:
    return rref(m).rank


def nullspace_basis(m: Mat) -> List[Vector]:
    field = m.field
    result = rref(m)
    pivot_set = set(result.pivots)
    basis: List[Vector] = []
    for free_column in range(m.cols):
        if free_column in pivot_set:
            continue
        vector = [field.zero] * m.cols
        vector[free_column] = field.one
        for row, pivot_column in enumerate(result.pivots):
            vector[pivot_column] = field.neg(result.reduced.entries[row][free_column])
        basis.append(tuple(vector))
    return basis


def nullspace_matrix(m: Mat) -> Mat:
    return Mat.from_columns(m.field, nullspace_basis(m), rows=m.cols)


def column_basis(m: Mat) -> Mat:
    return m.select_columns(rref(m).pivots)


def column_space_complement(span: Mat) -> List[int]:
    size = span.rows
    augmented = hstack(span.field, size, [span, Mat.identity(span.field, size)])
    return [
        pivot - span.cols
        for pivot in rref(augmented).pivots
        if pivot >= span.cols
    ]


def solve_many(m: Mat, b: Mat) -> Optional[Mat]:
    if b.rows != m.rows:
        raise DimensionMismatchError('solve', m.shape, b.shape)
    field = m.field
    if m.rows == 0:
        return Mat.zeros(field, m.cols, b.cols)
    result = rref(hstack(field, m.rows, [m, b]))
    if any(pivot >= m.cols for pivot in result.pivots):
        return None
    solution = [[field.zero] * b.cols for _ in range(m.cols)]
    for row, pivot_column in enumerate(result.pivots):
        solution[pivot_column] = list(result.reduced.entries[row][m.cols:])
    return Mat(field, m.cols, b.cols, tuple(tuple(row) for row in solution))


def solve(m: Mat, b: Sequence[Scalar]) -> Optional[Vector]:
    if len(b) != m.rows:
        raise DimensionMismatchError('solve', m.shape, (len(b), 1))
    solution = solve_many(m, Mat.from_columns(m.field, [b], rows=m.rows))
    if solution is None:
        return None
    return solution.column(0)


def is_invertible(m: Mat) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def cohomology_dim(d_in: Mat, d_out: Mat) -> int:
    if d_in.rows != d_out.cols:
        raise DimensionMismatchError('cohomology_dim', d_in.shape, d_out.shape)
    if not (d_out @ d_in).is_zero():
        raise NotAComplexError(d_in.shape, d_out.shape)
    return (d_out.cols - rank(d_out)) - rank(d_in)

import dataclasses
import logging
from typing import Any, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from extdeg_labs.linalg.field import FieldSpec, Scalar


LOGGER = logging.getLogger(__name__)


Vector = Tuple[Scalar, ...]


class DimensionMismatchError(ValueError):
    def __init__(self, operation: str, left_shape: Tuple[int, int], right_shape: Tuple[int, int]):
        super().__init__(
            f'dimension mismatch in {operation}: {left_shape} vs {right_shape}'
        )
        self.operation = operation
        self.left_shape = left_shape
        self.right_shape = right_shape


class FieldMismatchError(ValueError):
    def __init__(self, left: FieldSpec, right: FieldSpec):
        super().__init__(f'field mismatch: {left.description} vs {right.description}')
        self.left = left
        self.right = right


@dataclasses.dataclass(frozen=True)
class Mat:
    field: FieldSpec
    rows: int
    cols: int
    entries: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise DimensionMismatchError(
                'matrix construction',
                (self.rows, self.cols),
                (len(self.entries), len(self.entries[0]) if self.entries else 0)
            )

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> 'Mat':
        zero_row = (field.zero,) * cols
        return Mat(field, rows, cols, (zero_row,) * rows)

    @staticmethod
    def identity(field: FieldSpec, size: int) -> 'Mat':
        return Mat(field, size, size, tuple(
            tuple(field.one if i == j else field.zero for j in range(size))
            for i in range(size)
        ))

    @staticmethod
    def from_rows(
        field: FieldSpec,
        rows: Sequence[Sequence[Scalar]],
        cols: int = 0
    ) -> 'Mat':
        entries = tuple(tuple(field.convert(value) for value in row) for row in rows)
        if entries:
            cols = len(entries[0])
        return Mat(field, len(entries), cols, entries)

    @staticmethod
    def from_columns(
        field: FieldSpec,
        columns: Sequence[Sequence[Scalar]],
        rows: int = 0
    ) -> 'Mat':
        if columns:
            rows = len(columns[0])
        return Mat(field, rows, len(columns), tuple(
            tuple(field.convert(column[i]) for column in columns)
            for i in range(rows)
        ))

    @staticmethod
    def unit_vectors(field: FieldSpec, size: int, indices: Sequence[int]) -> 'Mat':
        return Mat(field, size, len(indices), tuple(
            tuple(field.one if i == index else field.zero for index in indices)
            for i in range(size)
        ))

    @staticmethod
    def from_domain_matrix(field: FieldSpec, dm: DomainMatrix) -> 'Mat':
        rows, cols = dm.shape
        return Mat(field, rows, cols, tuple(
            tuple(field.from_domain_element(value) for value in row)
            for row in dm.to_dense().to_list()
        ))

    def to_domain_matrix(self) -> DomainMatrix:
        to_element = self.field.to_domain_element
        rows: Any = [[to_element(value) for value in row] for row in self.entries]
        return DomainMatrix(rows, self.shape, self.field.domain)

    def column(self, index: int) -> Vector:
        return tuple(row[index] for row in self.entries)

    def columns(self) -> Sequence[Vector]:
        return [self.column(index) for index in range(self.cols)]

    def select_columns(self, indices: Sequence[int]) -> 'Mat':
        return Mat(self.field, self.rows, len(indices), tuple(
            tuple(row[index] for index in indices)
            for row in self.entries
        ))

    def select_rows(self, indices: Sequence[int]) -> 'Mat':
        return Mat(self.field, len(indices), self.cols, tuple(
            self.entries[index] for index in indices
        ))

    def is_zero(self) -> bool:
        return all(value == 0 for row in self.entries for value in row)

    def transpose(self) -> 'Mat':
        return Mat(self.field, self.cols, self.rows, tuple(
            tuple(self.entries[i][j] for i in range(self.rows))
            for j in range(self.cols)
        ))

    def _check_compatible(self, other: 'Mat', operation: str):
        if self.field != other.field:
            raise FieldMismatchError(self.field, other.field)
        if operation in ('add', 'sub') and self.shape != other.shape:
            raise DimensionMismatchError(operation, self.shape, other.shape)

    def __add__(self, other: 'Mat') -> 'Mat':
        self._check_compatible(other, 'add')
        add = self.field.add
        return Mat(self.field, self.rows, self.cols, tuple(
            tuple(add(a, b) for a, b in zip(row, other_row))
            for row, other_row in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: 'Mat') -> 'Mat':
        self._check_compatible(other, 'sub')
        sub = self.field.sub
        return Mat(self.field, self.rows, self.cols, tuple(
            tuple(sub(a, b) for a, b in zip(row, other_row))
            for row, other_row in zip(self.entries, other.entries)
        ))

    def scaled(self, factor: Scalar) -> 'Mat':
        if factor == 1:
            return self
        mul = self.field.mul
        return Mat(self.field, self.rows, self.cols, tuple(
            tuple(mul(factor, value) for value in row)
            for row in self.entries
        ))

    def __matmul__(self, other: 'Mat') -> 'Mat':
        self._check_compatible(other, 'matmul')
        if self.cols != other.rows:
            raise DimensionMismatchError('matmul', self.shape, other.shape)
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        product = self.to_domain_matrix().matmul(other.to_domain_matrix())
        return Mat.from_domain_matrix(self.field, product)

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatchError('apply', self.shape, (len(vector), 1))
        return (self @ Mat.from_columns(self.field, [vector], rows=self.cols)).column(0)

    def kron(self, other: 'Mat') -> 'Mat':
        self._check_compatible(other, 'kron')
        mul = self.field.mul
        return Mat(self.field, self.rows * other.rows, self.cols * other.cols, tuple(
            tuple(
                mul(self.entries[i][j], other.entries[k][l])
                for j in range(self.cols)
                for l in range(other.cols)
            )
            for i in range(self.rows)
            for k in range(other.rows)
        ))


def mat_sum(field: FieldSpec, rows: int, cols: int, terms: Sequence[Mat]) -> Mat:
    result = Mat.zeros(field, rows, cols)
    for term in terms:
        result = result + term
    return result


def linear_combination(
    field: FieldSpec,
    rows: int,
    cols: int,
    coefficients: Sequence[Scalar],
    matrices: Sequence[Mat]
) -> Mat:
    return mat_sum(field, rows, cols, [
        matrix.scaled(coefficient)
        for coefficient, matrix in zip(coefficients, matrices)
        if coefficient != 0
    ])


def hstack(field: FieldSpec, rows: int, blocks: Sequence[Mat]) -> Mat:
    for block in blocks:
        if block.rows != rows:
            raise DimensionMismatchError('hstack', (rows, 0), block.shape)
    return Mat(field, rows, sum(block.cols for block in blocks), tuple(
        tuple(value for block in blocks for value in block.entries[i])
        for i in range(rows)
    ))


def vstack(field: FieldSpec, cols: int, blocks: Sequence[Mat]) -> Mat:
    for block in blocks:
        if block.cols != cols:
            raise DimensionMismatchError('vstack', (0, cols), block.shape)
    return Mat(field, sum(block.rows for block in blocks), cols, tuple(
        row for block in blocks for row in block.entries
    ))


def block_diagonal(field: FieldSpec, blocks: Sequence[Mat]) -> Mat:
    rows = sum(block.rows for block in blocks)
    cols = sum(block.cols for block in blocks)
    entries = []
    col_offset = 0
    for block in blocks:
        for row in block.entries:
            entries.append(
                (field.zero,) * col_offset
                + row
                + (field.zero,) * (cols - col_offset - block.cols)
            )
        col_offset += block.cols
    return Mat(field, rows, cols, tuple(entries))


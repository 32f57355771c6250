import dataclasses
import functools
import itertools
import logging
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from extdeg_labs.linalg.field import FieldSpec, Scalar
from extdeg_labs.linalg.matrix import Mat, Vector, hstack, linear_combination
from extdeg_labs.linalg.reduction import column_basis, rank


LOGGER = logging.getLogger(__name__)


OPPOSITE_NAME_SUFFIX = '^op'


StructureConstants = Tuple[Tuple[int, int, Tuple[Tuple[int, Scalar], ...]], ...]


class MalformedAlgebraError(ValueError):
    def __init__(self, algebra_name: str, reason: str):
        super().__init__(f'malformed algebra {algebra_name!r}: {reason}')
        self.algebra_name = algebra_name
        self.reason = reason


class InvalidAlgebraParameterError(ValueError):
    def __init__(self, parameter_name: str, value: object, reason: str):
        super().__init__(f'invalid {parameter_name}={value!r}: {reason}')
        self.parameter_name = parameter_name
        self.value = value
        self.reason = reason


class InvalidAlgebraError(ValueError):
    def __init__(self, algebra_name: str, violations: Sequence['AxiomViolation']):
        super().__init__(
            f'algebra {algebra_name!r} violates: '
            + ', '.join(f'{v.axiom} at {v.witness!r}' for v in violations)
        )
        self.algebra_name = algebra_name
        self.violations = tuple(violations)


class NonLocalAlgebraError(ValueError):
    def __init__(self, algebra_name: str, message: str):
        super().__init__(f'{message}: {algebra_name!r}')
        self.algebra_name = algebra_name


class AlgebraAxiom:
    UNIT = 'unit'
    ASSOCIATIVITY = 'associativity'
    RADICAL_EXCLUDES_UNIT = 'radical_excludes_unit'
    RADICAL_LEFT_IDEAL = 'radical_left_ideal'
    RADICAL_RIGHT_IDEAL = 'radical_right_ideal'
    RADICAL_NILPOTENT = 'radical_nilpotent'
    MODULE_UNIT = 'module_unit'
    MODULE_STRUCTURE_CONSTANTS = 'module_structure_constants'


class AxiomViolation(NamedTuple):
    axiom: str
    witness: Tuple[int, ...]


class LocalityWitness(NamedTuple):
    is_local: bool
    nilpotency_index: Optional[int] = None


class ValidationReport(NamedTuple):
    violations: Tuple[AxiomViolation, ...] = ()
    locality: Optional[LocalityWitness] = None

    @property
    def ok(self) -> bool:
        return not self.violations


def _get_normalized_structure_constants(
    field: FieldSpec,
    table: Mapping[Tuple[int, int], Sequence[Tuple[int, Scalar]]]
) -> StructureConstants:
    result = []
    for (i, j), terms in sorted(table.items()):
        coefficient_by_index: Dict[int, Scalar] = {}
        for k, coefficient in terms:
            coefficient_by_index[k] = field.add(
                coefficient_by_index.get(k, field.zero),
                field.convert(coefficient)
            )
        normalized_terms = tuple(
            (k, coefficient)
            for k, coefficient in sorted(coefficient_by_index.items())
            if coefficient != 0
        )
        if normalized_terms:
            result.append((i, j, normalized_terms))
    return tuple(result)


@dataclasses.dataclass(frozen=True)
class AlgebraPresentation:
    name: str
    field: FieldSpec
    dim: int
    basis_names: Tuple[str, ...]
    unit_index: int
    structure_constants: StructureConstants
    radical_indices: Tuple[int, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise MalformedAlgebraError(self.name, f'dimension must be at least 1, got {self.dim}')
        if len(self.basis_names) != self.dim:
            raise MalformedAlgebraError(
                self.name,
                f'expected {self.dim} basis names, got {len(self.basis_names)}'
            )
        if not 0 <= self.unit_index < self.dim:
            raise MalformedAlgebraError(self.name, f'unit index out of range: {self.unit_index}')
        for i, j, terms in self.structure_constants:
            for index in (i, j) + tuple(k for k, _ in terms):
                if not 0 <= index < self.dim:
                    raise MalformedAlgebraError(
                        self.name, f'structure constant index out of range: {index}'
                    )
        if len(set(self.radical_indices)) != len(self.radical_indices):
            raise MalformedAlgebraError(self.name, 'duplicate radical index')
        for index in self.radical_indices:
            if not 0 <= index < self.dim:
                raise MalformedAlgebraError(self.name, f'radical index out of range: {index}')

    @staticmethod
    def from_table(  # pylint: disable=too-many-arguments
        name: str,
        field: FieldSpec,
        basis_names: Sequence[str],
        unit_index: int,
        table: Mapping[Tuple[int, int], Sequence[Tuple[int, Scalar]]],
        radical_indices: Sequence[int]
    ) -> 'AlgebraPresentation':
        return AlgebraPresentation(
            name=name,
            field=field,
            dim=len(basis_names),
            basis_names=tuple(basis_names),
            unit_index=unit_index,
            structure_constants=_get_normalized_structure_constants(field, table),
            radical_indices=tuple(radical_indices)
        )

    @functools.cached_property
    def _terms_by_pair(self) -> Dict[Tuple[int, int], Tuple[Tuple[int, Scalar], ...]]:
        return {(i, j): terms for i, j, terms in self.structure_constants}

    def product_terms(self, i: int, j: int) -> Tuple[Tuple[int, Scalar], ...]:
        return self._terms_by_pair.get((i, j), ())

    @functools.cached_property
    def regular_matrices(self) -> Tuple[Mat, ...]:
        # column j of L_i holds the coordinates of e_i * e_j
        result = []
        for i in range(self.dim):
            entries = [[self.field.zero] * self.dim for _ in range(self.dim)]
            for j in range(self.dim):
                for k, coefficient in self.product_terms(i, j):
                    entries[k][j] = coefficient
            result.append(Mat.from_rows(self.field, entries))
        return tuple(result)

    def basis_vector(self, index: int) -> Vector:
        return tuple(
            self.field.one if i == index else self.field.zero
            for i in range(self.dim)
        )

    @property
    def is_commutative(self) -> bool:
        return all(
            self.product_terms(i, j) == self.product_terms(j, i)
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )


def left_multiplication(a: AlgebraPresentation, element: Sequence[Scalar]) -> Mat:
    return linear_combination(
        a.field, a.dim, a.dim, list(element), list(a.regular_matrices)
    )


def multiply(
    a: AlgebraPresentation,
    u: Sequence[Scalar],
    v: Sequence[Scalar]
) -> Vector:
    return left_multiplication(a, u).apply(v)


def format_element(a: AlgebraPresentation, element: Sequence[Scalar]) -> str:
    text = ''
    for index, coefficient in enumerate(element):
        if coefficient == 0:
            continue
        basis_name = a.basis_names[index]
        coefficient_text = a.field.format_scalar(coefficient)
        sign = '+'
        if coefficient_text.startswith('-'):
            sign = '-'
            coefficient_text = coefficient_text[1:]
        if coefficient_text == '1' and index != a.unit_index:
            coefficient_text = ''
        elif index == a.unit_index:
            basis_name = ''
        term = coefficient_text + basis_name
        if not text:
            text = term if sign == '+' else '-' + term
        else:
            text += sign + term
    return text or '0'


def _get_radical_span(a: AlgebraPresentation) -> Mat:
    return Mat.unit_vectors(a.field, a.dim, list(a.radical_indices))


def _get_radical_product_span(a: AlgebraPresentation, span: Mat) -> Mat:
    blocks = [
        a.regular_matrices[r] @ span
        for r in a.radical_indices
    ]
    if not blocks or span.cols == 0:
        return Mat.zeros(a.field, a.dim, 0)
    return column_basis(hstack(a.field, a.dim, blocks))


def get_radical_power_spans(a: AlgebraPresentation) -> List[Mat]:
    # element t is a basis of rad^(t+1); stops at the first zero power or after dim steps
    spans = [_get_radical_span(a)]
    while spans[-1].cols > 0 and len(spans) <= a.dim:
        spans.append(_get_radical_product_span(a, spans[-1]))
    return spans


def get_nilpotency_index(a: AlgebraPresentation) -> Optional[int]:
    spans = get_radical_power_spans(a)
    if spans[-1].cols > 0:
        return None
    return len(spans)


@functools.lru_cache(maxsize=None)
def get_locality(a: AlgebraPresentation) -> LocalityWitness:
    if a.dim != 1 + len(a.radical_indices) or a.unit_index in a.radical_indices:
        return LocalityWitness(is_local=False)
    nilpotency_index = get_nilpotency_index(a)
    if nilpotency_index is None:
        return LocalityWitness(is_local=False)
    return LocalityWitness(is_local=True, nilpotency_index=nilpotency_index)


def is_local_algebra(a: AlgebraPresentation) -> bool:
    return get_locality(a).is_local


def _iter_unit_violations(a: AlgebraPresentation):
    for i in range(a.dim):
        expected = ((i, a.field.one),)
        if a.product_terms(a.unit_index, i) != expected:
            yield AxiomViolation(AlgebraAxiom.UNIT, (a.unit_index, i))
        elif a.product_terms(i, a.unit_index) != expected:
            yield AxiomViolation(AlgebraAxiom.UNIT, (i, a.unit_index))


def _iter_associativity_violations(a: AlgebraPresentation):
    regular = a.regular_matrices
    for i, j in itertools.product(range(a.dim), repeat=2):
        left = regular[i] @ regular[j]
        right = linear_combination(
            a.field, a.dim, a.dim,
            [coefficient for _, coefficient in a.product_terms(i, j)],
            [regular[k] for k, _ in a.product_terms(i, j)]
        )
        if left == right:
            continue
        k = next(
            column for column in range(a.dim)
            if left.column(column) != right.column(column)
        )
        yield AxiomViolation(AlgebraAxiom.ASSOCIATIVITY, (i, j, k))


def _iter_radical_violations(a: AlgebraPresentation):
    radical = set(a.radical_indices)
    if a.unit_index in radical:
        yield AxiomViolation(AlgebraAxiom.RADICAL_EXCLUDES_UNIT, (a.unit_index,))
    for r in a.radical_indices:
        for i in range(a.dim):
            for k, _ in a.product_terms(i, r):
                if k not in radical:
                    yield AxiomViolation(AlgebraAxiom.RADICAL_LEFT_IDEAL, (i, r, k))
                    break
            for k, _ in a.product_terms(r, i):
                if k not in radical:
                    yield AxiomViolation(AlgebraAxiom.RADICAL_RIGHT_IDEAL, (r, i, k))
                    break
    if get_nilpotency_index(a) is None:
        yield AxiomViolation(AlgebraAxiom.RADICAL_NILPOTENT, tuple(a.radical_indices))


def validate_algebra(a: AlgebraPresentation) -> ValidationReport:
    violations = (
        list(_iter_unit_violations(a))
        + list(_iter_associativity_violations(a))
        + list(_iter_radical_violations(a))
    )
    locality = get_locality(a) if not violations else LocalityWitness(is_local=False)
    LOGGER.debug(
        'validated algebra %r: violations=%d, locality=%r',
        a.name, len(violations), locality
    )
    return ValidationReport(violations=tuple(violations), locality=locality)


@functools.lru_cache(maxsize=None)
def get_generator_indices(a: AlgebraPresentation) -> Tuple[int, ...]:
    non_unit_indices = [index for index in range(a.dim) if index != a.unit_index]
    if not is_local_algebra(a):
        return tuple(non_unit_indices)
    spans = get_radical_power_spans(a)
    current = spans[1] if len(spans) > 1 else Mat.zeros(a.field, a.dim, 0)
    current_rank = rank(current)
    generators = []
    for index in a.radical_indices:
        candidate = hstack(a.field, a.dim, [
            current, Mat.unit_vectors(a.field, a.dim, [index])
        ])
        candidate_rank = rank(candidate)
        if candidate_rank > current_rank:
            generators.append(index)
            current, current_rank = candidate, candidate_rank
    return tuple(generators)


def opposite(a: AlgebraPresentation) -> AlgebraPresentation:
    if a.is_commutative:
        return a
    transposed = {
        (j, i): terms
        for i, j, terms in a.structure_constants
    }
    if a.name.endswith(OPPOSITE_NAME_SUFFIX):
        name = a.name[:-len(OPPOSITE_NAME_SUFFIX)]
    else:
        name = a.name + OPPOSITE_NAME_SUFFIX
    return dataclasses.replace(
        a,
        name=name,
        structure_constants=_get_normalized_structure_constants(a.field, transposed)
    )


def build_quantum_ci(
    field: FieldSpec,
    q: Scalar,
    name: Optional[str] = None
) -> AlgebraPresentation:
    q = field.convert(q)
    if q == 0:
        raise InvalidAlgebraParameterError('q', 0, 'q must be nonzero')
    if not field.is_rational or q in (1, -1):
        LOGGER.info(
            'q=%s has finite multiplicative order over %s: syzygies of A/(x+qy) repeat',
            field.format_scalar(q), field.description
        )
    one, x, y, xy = range(4)
    q_inverse = field.inv(q)
    table: Dict[Tuple[int, int], List[Tuple[int, Scalar]]] = {}
    for index in range(4):
        table[(one, index)] = [(index, field.one)]
        table[(index, one)] = [(index, field.one)]
    table[(x, y)] = [(xy, field.one)]
    table[(y, x)] = [(xy, q_inverse)]
    return AlgebraPresentation.from_table(
        name=name or f'quantum_ci(q={field.format_scalar(q)})',
        field=field,
        basis_names=['1', 'x', 'y', 'xy'],
        unit_index=one,
        table=table,
        radical_indices=[x, y, xy]
    )


def _get_variable_names(count: int) -> List[str]:
    if count <= 3:
        return ['x', 'y', 'z'][:count]
    return [f'x{index + 1}' for index in range(count)]


def _get_monomial_name(variable_names: Sequence[str], exponents: Sequence[int]) -> str:
    name = ''.join(
        variable_name if exponent == 1 else f'{variable_name}^{exponent}'
        for variable_name, exponent in zip(variable_names, exponents)
        if exponent > 0
    )
    return name or '1'


def build_truncated_polynomial(
    field: FieldSpec,
    exponents: Sequence[int],
    name: Optional[str] = None
) -> AlgebraPresentation:
    if not exponents:
        raise InvalidAlgebraParameterError('exponents', list(exponents), 'must be nonempty')
    for exponent in exponents:
        if exponent < 2:
            raise InvalidAlgebraParameterError(
                'exponents', list(exponents), 'every exponent must be at least 2'
            )
    variable_names = _get_variable_names(len(exponents))
    monomials = sorted(
        itertools.product(*[range(exponent) for exponent in exponents]),
        key=lambda monomial: (sum(monomial), tuple(-power for power in monomial))
    )
    index_by_monomial = {monomial: index for index, monomial in enumerate(monomials)}
    table: Dict[Tuple[int, int], List[Tuple[int, Scalar]]] = {}
    for left, right in itertools.product(monomials, repeat=2):
        product = tuple(a + b for a, b in zip(left, right))
        if product in index_by_monomial:
            table[(index_by_monomial[left], index_by_monomial[right])] = [
                (index_by_monomial[product], field.one)
            ]
    default_name = 'k[{}]/({})'.format(
        ','.join(variable_names),
        ','.join(
            f'{variable_name}^{exponent}'
            for variable_name, exponent in zip(variable_names, exponents)
        )
    )
    return AlgebraPresentation.from_table(
        name=name or default_name,
        field=field,
        basis_names=[_get_monomial_name(variable_names, monomial) for monomial in monomials],
        unit_index=0,
        table=table,
        radical_indices=list(range(1, len(monomials)))
    )


def build_base_field(field: FieldSpec, name: str = 'k') -> AlgebraPresentation:
    return AlgebraPresentation.from_table(
        name=name,
        field=field,
        basis_names=['1'],
        unit_index=0,
        table={(0, 0): [(0, field.one)]},
        radical_indices=[]
    )

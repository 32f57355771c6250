import dataclasses
import itertools
import logging
import random
from typing import List, NamedTuple, Optional, Sequence, Tuple

from extdeg_labs.linalg.field import Scalar
from extdeg_labs.linalg.matrix import (
    Mat,
    block_diagonal,
    hstack,
    linear_combination,
    vstack
)
from extdeg_labs.linalg.reduction import (
    column_basis,
    column_space_complement,
    is_invertible,
    nullspace_basis,
    solve_many
)
from extdeg_labs.models.algebra import (
    AlgebraAxiom,
    AlgebraPresentation,
    AxiomViolation,
    ValidationReport,
    format_element,
    get_generator_indices,
    opposite
)


LOGGER = logging.getLogger(__name__)


DUAL_NAME_PREFIX = 'D('


class MalformedModuleError(ValueError):
    def __init__(self, module_name: str, reason: str):
        super().__init__(f'malformed module {module_name!r}: {reason}')
        self.module_name = module_name
        self.reason = reason


class InvalidModuleError(ValueError):
    def __init__(self, module_name: str, violations: Sequence[AxiomViolation]):
        super().__init__(
            f'module {module_name!r} violates: '
            + ', '.join(f'{v.axiom} at {v.witness!r}' for v in violations)
        )
        self.module_name = module_name
        self.violations = tuple(violations)


class AlgebraMismatchError(ValueError):
    def __init__(self, left_algebra_name: str, right_algebra_name: str):
        super().__init__(
            f'modules are over different algebras: {left_algebra_name!r} vs {right_algebra_name!r}'
        )
        self.left_algebra_name = left_algebra_name
        self.right_algebra_name = right_algebra_name


@dataclasses.dataclass(frozen=True)
class ModuleRep:
    algebra: AlgebraPresentation
    dim: int
    action: Tuple[Mat, ...]
    name: str = dataclasses.field(default='', compare=False)

    def __post_init__(self):
        if len(self.action) != self.algebra.dim:
            raise MalformedModuleError(
                self.name,
                f'expected {self.algebra.dim} action matrices, got {len(self.action)}'
            )
        for index, matrix in enumerate(self.action):
            if matrix.shape != (self.dim, self.dim):
                raise MalformedModuleError(
                    self.name,
                    f'action of {self.algebra.basis_names[index]!r} has shape {matrix.shape},'
                    f' expected {(self.dim, self.dim)}'
                )
            if matrix.field != self.algebra.field:
                raise MalformedModuleError(self.name, 'action matrix over a different field')

    @property
    def field(self):
        return self.algebra.field

    @property
    def is_zero(self) -> bool:
        return self.dim == 0


class HomBasis(NamedTuple):
    source: ModuleRep
    target: ModuleRep
    basis: Tuple[Mat, ...]

    @property
    def size(self) -> int:
        return len(self.basis)


class IsoCertificate(NamedTuple):
    map: Mat
    seed_used: int


def check_same_algebra(m: ModuleRep, n: ModuleRep):
    if m.algebra != n.algebra:
        raise AlgebraMismatchError(m.algebra.name, n.algebra.name)


def act(m: ModuleRep, element: Sequence[Scalar]) -> Mat:
    return linear_combination(m.field, m.dim, m.dim, list(element), list(m.action))


def validate_module(m: ModuleRep) -> ValidationReport:
    a = m.algebra
    violations: List[AxiomViolation] = []
    if m.action[a.unit_index] != Mat.identity(m.field, m.dim):
        violations.append(AxiomViolation(AlgebraAxiom.MODULE_UNIT, (a.unit_index,)))
    for i, j in itertools.product(range(a.dim), repeat=2):
        terms = a.product_terms(i, j)
        expected = linear_combination(
            m.field, m.dim, m.dim,
            [coefficient for _, coefficient in terms],
            [m.action[k] for k, _ in terms]
        )
        if m.action[i] @ m.action[j] != expected:
            violations.append(AxiomViolation(AlgebraAxiom.MODULE_STRUCTURE_CONSTANTS, (i, j)))
    LOGGER.debug('validated module %r: violations=%d', m.name, len(violations))
    return ValidationReport(violations=tuple(violations))


def free_module(a: AlgebraPresentation, rank: int, name: Optional[str] = None) -> ModuleRep:
    if name is None:
        name = 'A' if rank == 1 else f'A^{rank}'
    return ModuleRep(
        algebra=a,
        dim=rank * a.dim,
        action=tuple(
            block_diagonal(a.field, [regular_matrix] * rank)
            for regular_matrix in a.regular_matrices
        ),
        name=name
    )


def zero_module(a: AlgebraPresentation) -> ModuleRep:
    return free_module(a, 0, name='0')


def direct_sum(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    check_same_algebra(m, n)
    return ModuleRep(
        algebra=m.algebra,
        dim=m.dim + n.dim,
        action=tuple(
            block_diagonal(m.field, [m_action, n_action])
            for m_action, n_action in zip(m.action, n.action)
        ),
        name=f'{m.name}⊕{n.name}'
    )


def submodule(m: ModuleRep, basis: Mat, name: str = '') -> ModuleRep:
    actions = []
    for index, matrix in enumerate(m.action):
        restricted = solve_many(basis, matrix @ basis)
        if restricted is None:
            raise MalformedModuleError(
                name or m.name,
                f'subspace is not stable under {m.algebra.basis_names[index]!r}'
            )
        actions.append(restricted)
    return ModuleRep(algebra=m.algebra, dim=basis.cols, action=tuple(actions), name=name)


def quotient_module(m: ModuleRep, span: Mat, name: str = '') -> ModuleRep:
    span = column_basis(span)
    complement = column_space_complement(span)
    complement_vectors = Mat.unit_vectors(m.field, m.dim, complement)
    change_of_basis = hstack(m.field, m.dim, [span, complement_vectors])
    actions = []
    for matrix in m.action:
        coordinates = solve_many(change_of_basis, matrix @ complement_vectors)
        assert coordinates is not None
        actions.append(coordinates.select_rows(range(span.cols, m.dim)))
    return ModuleRep(algebra=m.algebra, dim=len(complement), action=tuple(actions), name=name)


def get_left_ideal_span(
    a: AlgebraPresentation,
    generators: Sequence[Sequence[Scalar]]
) -> Mat:
    if not generators:
        return Mat.zeros(a.field, a.dim, 0)
    generator_matrix = Mat.from_columns(a.field, [list(g) for g in generators], rows=a.dim)
    return column_basis(hstack(a.field, a.dim, [
        regular_matrix @ generator_matrix
        for regular_matrix in a.regular_matrices
    ]))


def get_cyclic_quotient_name(
    a: AlgebraPresentation,
    generators: Sequence[Sequence[Scalar]]
) -> str:
    return 'A/({})'.format(','.join(
        format_element(a, [a.field.convert(value) for value in generator])
        for generator in generators
    ) or '0')


def cyclic_quotient(
    a: AlgebraPresentation,
    generators: Sequence[Sequence[Scalar]],
    name: Optional[str] = None
) -> ModuleRep:
    ideal = get_left_ideal_span(a, generators)
    LOGGER.debug('left ideal for %r has dimension %d', generators, ideal.cols)
    return quotient_module(
        free_module(a, 1),
        ideal,
        name=name if name is not None else get_cyclic_quotient_name(a, generators)
    )


def _get_intertwining_system(m: ModuleRep, n: ModuleRep) -> Mat:
    # phi (n.dim x m.dim) vectorised row-major: phi A_g - B_g phi = 0
    field = m.field
    unknowns = n.dim * m.dim
    identity_n = Mat.identity(field, n.dim)
    identity_m = Mat.identity(field, m.dim)
    blocks = [
        identity_n.kron(m.action[g].transpose()) - n.action[g].kron(identity_m)
        for g in get_generator_indices(m.algebra)
    ]
    return vstack(field, unknowns, blocks)


def hom_basis(m: ModuleRep, n: ModuleRep) -> HomBasis:
    check_same_algebra(m, n)
    if m.dim == 0 or n.dim == 0:
        return HomBasis(source=m, target=n, basis=())
    basis = tuple(
        Mat(m.field, n.dim, m.dim, tuple(
            tuple(vector[row * m.dim:(row + 1) * m.dim])
            for row in range(n.dim)
        ))
        for vector in nullspace_basis(_get_intertwining_system(m, n))
    )
    return HomBasis(source=m, target=n, basis=basis)


def hom_dim(m: ModuleRep, n: ModuleRep) -> int:
    return len(hom_basis(m, n).basis)


def _toggle_dual_name(name: str) -> str:
    if name.startswith(DUAL_NAME_PREFIX) and name.endswith(')'):
        return name[len(DUAL_NAME_PREFIX):-1]
    return f'{DUAL_NAME_PREFIX}{name})'


def dual(m: ModuleRep) -> ModuleRep:
    return ModuleRep(
        algebra=opposite(m.algebra),
        dim=m.dim,
        action=tuple(matrix.transpose() for matrix in m.action),
        name=_toggle_dual_name(m.name)
    )


def verify_iso_certificate(certificate: IsoCertificate, m: ModuleRep, n: ModuleRep) -> bool:
    iso_map = certificate.map
    if iso_map.shape != (n.dim, m.dim) or not is_invertible(iso_map):
        return False
    return all(
        iso_map @ m_action == n_action @ iso_map
        for m_action, n_action in zip(m.action, n.action)
    )


def is_isomorphic(
    m: ModuleRep,
    n: ModuleRep,
    seed: int = 0,
    trials: int = 20
) -> Optional[IsoCertificate]:
    check_same_algebra(m, n)
    if m == n:
        return IsoCertificate(map=Mat.identity(m.field, m.dim), seed_used=seed)
    if m.dim != n.dim:
        return None
    basis = hom_basis(m, n).basis
    if not basis:
        return None
    if len(basis) != hom_dim(m, m) or len(basis) != hom_dim(n, n):
        LOGGER.debug('hom dimensions rule out isomorphism: %r vs %r', m.name, n.name)
        return None
    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        coefficients = [m.field.convert(rng.randint(0, trial)) for _ in basis]
        candidate = linear_combination(m.field, n.dim, m.dim, coefficients, basis)
        if is_invertible(candidate):
            LOGGER.debug('found isomorphism %r -> %r on trial %d', m.name, n.name, trial)
            return IsoCertificate(map=candidate, seed_used=seed)
    LOGGER.debug('no isomorphism found after %d trials: %r vs %r', trials, m.name, n.name)
    return None

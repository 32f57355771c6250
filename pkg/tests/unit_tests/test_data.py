import dataclasses
import random
from fractions import Fraction
from typing import Sequence, Tuple

from extdeg_labs.linalg.field import FieldSpec
from extdeg_labs.linalg.matrix import Mat
from extdeg_labs.linalg.reduction import is_invertible, solve_many
from extdeg_labs.models.algebra import (
    AlgebraPresentation,
    build_base_field,
    build_quantum_ci,
    build_truncated_polynomial
)
from extdeg_labs.models.module import ModuleRep, cyclic_quotient


QQ_FIELD = FieldSpec.rational()
GF3_FIELD = FieldSpec.prime(3)

K = build_base_field(QQ_FIELD, name='k')
KX2 = build_truncated_polynomial(QQ_FIELD, [2], name='kx2')
KX3 = build_truncated_polynomial(QQ_FIELD, [3], name='kx3')
QUANTUM_CI_Q1 = build_quantum_ci(QQ_FIELD, 1, name='quantum_ci_q1')
QUANTUM_CI_Q2 = build_quantum_ci(QQ_FIELD, 2, name='quantum_ci_q2')

# basis coordinates in k<x,y>/(x², y², xy - q yx) with basis 1, x, y, xy
X = (0, 1, 0, 0)
Y = (0, 0, 1, 0)
XY = (0, 0, 0, 1)
X_PLUS_Y = (0, 1, 1, 0)

# basis coordinates in k[x]/(x^n) with basis 1, x, x^2, ...
KX2_X = (0, 1)
KX3_X = (0, 1, 0)
KX3_X2 = (0, 0, 1)


def get_residue_field_module(a: AlgebraPresentation) -> ModuleRep:
    return cyclic_quotient(
        a, [a.basis_vector(index) for index in a.radical_indices], name='k'
    )


def get_schulz_module(
    a: AlgebraPresentation = QUANTUM_CI_Q2,
    name: str = 'schulz_M'
) -> ModuleRep:
    return cyclic_quotient(a, [X_PLUS_Y], name=name)


def get_schulz_action_matrices(y_action_rows: Sequence[Sequence[int]]) -> Tuple[Mat, ...]:
    return (
        Mat.identity(QQ_FIELD, 2),
        Mat.from_rows(QQ_FIELD, [[0, 0], [1, 0]]),
        Mat.from_rows(QQ_FIELD, y_action_rows),
        Mat.zeros(QQ_FIELD, 2, 2)
    )


def get_idempotent_algebra() -> AlgebraPresentation:
    # k × k presented with basis 1, e where e² = e; semisimple, hence not local
    return AlgebraPresentation.from_table(
        name='k_times_k',
        field=QQ_FIELD,
        basis_names=['1', 'e'],
        unit_index=0,
        table={
            (0, 0): [(0, 1)],
            (0, 1): [(1, 1)],
            (1, 0): [(1, 1)],
            (1, 1): [(1, 1)]
        },
        radical_indices=[]
    )


def get_corrupted_quantum_ci() -> AlgebraPresentation:
    # x·x = 1 instead of 0
    return dataclasses.replace(
        QUANTUM_CI_Q1,
        name='corrupted_quantum_ci',
        structure_constants=QUANTUM_CI_Q1.structure_constants + (
            (1, 1, ((0, Fraction(1)),)),
        )
    )


def get_module_in_random_basis(m: ModuleRep, seed: int) -> ModuleRep:
    # actions P^-1 X P for a seeded random invertible P
    rng = random.Random(seed)
    while True:
        change_of_basis = Mat.from_rows(m.field, [
            [rng.randint(-2, 2) for _ in range(m.dim)] for _ in range(m.dim)
        ])
        if is_invertible(change_of_basis):
            break
    inverse = solve_many(change_of_basis, Mat.identity(m.field, m.dim))
    assert inverse is not None
    return ModuleRep(
        algebra=m.algebra,
        dim=m.dim,
        action=tuple(inverse @ matrix @ change_of_basis for matrix in m.action),
        name=f'{m.name} (rebased)'
    )

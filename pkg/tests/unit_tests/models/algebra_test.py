from fractions import Fraction

import pytest

from extdeg_labs.models.algebra import (
    AlgebraAxiom,
    AlgebraPresentation,
    InvalidAlgebraParameterError,
    MalformedAlgebraError,
    build_quantum_ci,
    build_truncated_polynomial,
    format_element,
    get_generator_indices,
    get_locality,
    multiply,
    opposite,
    validate_algebra
)

from tests.unit_tests.test_data import (
    K,
    KX2,
    KX3,
    QQ_FIELD,
    QUANTUM_CI_Q1,
    QUANTUM_CI_Q2,
    X,
    Y,
    get_corrupted_quantum_ci,
    get_idempotent_algebra
)


class TestBuilders:
    @pytest.mark.parametrize('a', [K, KX2, KX3, QUANTUM_CI_Q1, QUANTUM_CI_Q2])
    def test_should_build_valid_local_algebras(self, a: AlgebraPresentation):
        report = validate_algebra(a)
        assert report.ok
        assert report.locality is not None
        assert report.locality.is_local

    def test_should_name_truncated_polynomial_basis(self):
        assert KX3.basis_names == ('1', 'x', 'x^2')
        assert build_truncated_polynomial(QQ_FIELD, [2, 2]).basis_names == (
            '1', 'x', 'y', 'xy'
        )

    def test_should_use_inverse_q_for_reversed_product(self):
        assert multiply(QUANTUM_CI_Q2, Y, X) == (0, 0, 0, Fraction(1, 2))
        assert multiply(QUANTUM_CI_Q2, X, Y) == (0, 0, 0, 1)

    def test_should_reject_zero_q(self):
        with pytest.raises(InvalidAlgebraParameterError):
            build_quantum_ci(QQ_FIELD, 0)

    def test_should_reject_exponent_below_two(self):
        with pytest.raises(InvalidAlgebraParameterError):
            build_truncated_polynomial(QQ_FIELD, [1])

    def test_should_reject_unit_index_out_of_range(self):
        with pytest.raises(MalformedAlgebraError):
            AlgebraPresentation.from_table(
                name='bad', field=QQ_FIELD, basis_names=['1'], unit_index=2,
                table={}, radical_indices=[]
            )


class TestLocality:
    def test_should_compute_nilpotency_index(self):
        assert get_locality(K).nilpotency_index == 1
        assert get_locality(KX2).nilpotency_index == 2
        assert get_locality(KX3).nilpotency_index == 3
        assert get_locality(QUANTUM_CI_Q2).nilpotency_index == 3

    def test_should_report_semisimple_algebra_as_valid_but_not_local(self):
        report = validate_algebra(get_idempotent_algebra())
        assert report.ok
        assert report.locality is not None
        assert not report.locality.is_local


class TestValidateAlgebra:
    def test_should_report_associativity_witness_for_corrupted_table(self):
        report = validate_algebra(get_corrupted_quantum_ci())
        assert not report.ok
        associativity_witnesses = [
            violation.witness for violation in report.violations
            if violation.axiom == AlgebraAxiom.ASSOCIATIVITY
        ]
        assert associativity_witnesses[0] == (1, 1, 2)

    def test_should_report_radical_not_closed_for_corrupted_table(self):
        report = validate_algebra(get_corrupted_quantum_ci())
        assert AlgebraAxiom.RADICAL_LEFT_IDEAL in {
            violation.axiom for violation in report.violations
        }


class TestOpposite:
    def test_should_return_same_algebra_when_commutative(self):
        assert opposite(KX3) is KX3

    def test_should_transpose_structure_constants(self):
        a_op = opposite(QUANTUM_CI_Q2)
        assert a_op.name == 'quantum_ci_q2^op'
        assert a_op.product_terms(1, 2) == ((3, Fraction(1, 2)),)
        assert a_op.product_terms(2, 1) == ((3, 1),)

    def test_should_be_an_involution(self):
        assert opposite(opposite(QUANTUM_CI_Q2)) == QUANTUM_CI_Q2


class TestGeneratorIndices:
    def test_should_return_radical_generators(self):
        assert get_generator_indices(QUANTUM_CI_Q1) == (1, 2)
        assert get_generator_indices(KX3) == (1,)

    def test_should_return_all_non_unit_indices_for_non_local_algebra(self):
        assert get_generator_indices(get_idempotent_algebra()) == (1,)


class TestFormatElement:
    def test_should_format_sums_and_differences(self):
        assert format_element(QUANTUM_CI_Q2, (0, 1, 1, 0)) == 'x+y'
        assert format_element(QUANTUM_CI_Q2, (0, 1, -1, 0)) == 'x-y'
        assert format_element(QUANTUM_CI_Q2, (0, -1, -1, 0)) == '-x-y'

    def test_should_format_scaled_and_unit_terms(self):
        assert format_element(QUANTUM_CI_Q2, (0, 0, 0, 2)) == '2xy'
        assert format_element(QUANTUM_CI_Q2, (1, 0, 0, 0)) == '1'

    def test_should_format_zero(self):
        assert format_element(QUANTUM_CI_Q2, (0, 0, 0, 0)) == '0'

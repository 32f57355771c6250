import pytest

from extdeg_labs.aggregators.family import (
    EmptyFamilyError,
    EnumerationLimitExceededError,
    FamilyCondition,
    audit_family,
    enumerate_cyclic_family,
    get_radical_elements
)
from extdeg_labs.models.algebra import NonLocalAlgebraError
from extdeg_labs.models.module import AlgebraMismatchError, free_module

from tests.unit_tests.test_data import (
    KX2,
    KX3,
    QUANTUM_CI_Q2,
    get_idempotent_algebra,
    get_residue_field_module
)


class TestGetRadicalElements:
    def test_should_order_zero_then_positive_then_negative(self):
        assert get_radical_elements(KX2, [1, 0, -1]) == [(0, 1), (0, -1)]

    def test_should_put_sparsest_elements_first(self):
        elements = get_radical_elements(KX3, [0, 1])
        assert elements == [(0, 0, 1), (0, 1, 0), (0, 1, 1)]


class TestEnumerateCyclicFamily:
    def test_should_enumerate_distinct_quotients_of_kx3(self):
        family = enumerate_cyclic_family(KX3, [0, 1], 1)
        assert [m.name for m in family] == ['A', 'A/(x^2)', 'A/(x)']
        assert [m.dim for m in family] == [3, 2, 1]

    def test_should_raise_when_candidates_exceed_limit(self):
        with pytest.raises(EnumerationLimitExceededError) as exc_info:
            enumerate_cyclic_family(QUANTUM_CI_Q2, [0, 1], 3, limit=10)
        assert exc_info.value.candidate_count == 64
        assert exc_info.value.limit == 10


class TestAuditFamily:
    def test_should_audit_kx2_family(self):
        family = [free_module(KX2, 1), get_residue_field_module(KX2)]
        report = audit_family(KX2, family, 10)
        assert report.family == ('A', 'k')
        assert report.fed_lower_bound == 0
        assert report.fpd_estimate == 0
        assert report.injdim_report.left.value == 0
        assert [finding.condition for finding in report.condition_findings] == [
            FamilyCondition.FINITE_EXT_DEGREE_IFF_FINITE_PD,
            FamilyCondition.CM_FINITE_EXT_DEGREE_IS_FREE,
            FamilyCondition.CM_EXT_DEGREE_SUP_IS_ZERO,
            FamilyCondition.FED_AT_MOST_ID
        ]
        assert all(finding.holds is True for finding in report.condition_findings)
        assert report.uncertified == ()
        assert report.fed_dichotomy is None
        assert not report.has_violation

    def test_should_keep_family_order_with_multiple_workers(self):
        family = enumerate_cyclic_family(KX3, [0, 1], 1)
        report = audit_family(KX3, family, 8, max_workers=2)
        assert report.family == ('A', 'A/(x^2)', 'A/(x)')
        assert not report.has_violation

    def test_should_reject_empty_family(self):
        with pytest.raises(EmptyFamilyError):
            audit_family(KX2, [], 5)

    def test_should_reject_member_over_other_algebra(self):
        with pytest.raises(AlgebraMismatchError):
            audit_family(KX2, [free_module(KX3, 1)], 5)

    def test_should_reject_non_local_algebra(self):
        a = get_idempotent_algebra()
        with pytest.raises(NonLocalAlgebraError):
            audit_family(a, [free_module(a, 1)], 5)

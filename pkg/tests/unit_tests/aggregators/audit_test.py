import pytest

from extdeg_labs.aggregators.audit import (
    BoundMember,
    ConditionVerdict,
    InjectiveSide,
    PdMethod,
    PdStatus,
    arc_check,
    audit_module,
    auslander_bound_probe,
    duality_symmetry_check,
    first_argument_shift_failures,
    garc_check,
    get_dual_of_regular_module,
    gorenstein_symmetry_check,
    injective_dimension,
    injective_dimension_report,
    projective_dimension,
    resolution_independence_failures,
    syzygy_sum_check,
    two_sided_shift_failures
)
from extdeg_labs.models.algebra import NonLocalAlgebraError
from extdeg_labs.models.module import free_module

from tests.unit_tests.test_data import (
    KX2,
    KX3,
    QUANTUM_CI_Q2,
    get_idempotent_algebra,
    get_residue_field_module,
    get_schulz_module
)


class TestProjectiveDimension:
    def test_should_certify_free_module_by_termination(self):
        report = projective_dimension(free_module(KX2, 1), 10)
        assert report.status == PdStatus.FINITE
        assert report.value == 0
        assert report.method == PdMethod.TERMINATION
        assert not report.consistency_failure

    def test_should_certify_infinite_pd_by_periodicity(self):
        report = projective_dimension(get_residue_field_module(KX2), 10)
        assert report.is_infinite
        assert report.method == PdMethod.PERIODICITY

    def test_should_leave_schulz_module_unknown(self):
        report = projective_dimension(get_schulz_module(), 20)
        assert report.status == PdStatus.UNKNOWN
        assert report.method == PdMethod.CUTOFF_ONLY


class TestGarcCheck:
    def test_should_be_consistent_for_free_module(self):
        verdict = garc_check(free_module(KX3, 1), 10)
        assert verdict.verdict == ConditionVerdict.CONSISTENT
        assert verdict.theorem_equality is True
        assert not verdict.failure_candidate

    def test_should_be_consistent_for_infinite_ext_degree(self):
        verdict = garc_check(get_residue_field_module(KX2), 10)
        assert verdict.verdict == ConditionVerdict.CONSISTENT
        assert verdict.n_star.is_infinite

    def test_should_flag_schulz_module_as_failure_candidate(self):
        verdict = garc_check(get_schulz_module(), 20, seed=7)
        assert verdict.verdict == ConditionVerdict.INCONCLUSIVE
        assert verdict.failure_candidate
        assert verdict.n_star.value == 1

    def test_should_reject_non_local_algebra(self):
        with pytest.raises(NonLocalAlgebraError):
            garc_check(free_module(get_idempotent_algebra(), 1), 5)


class TestArcCheck:
    def test_should_be_consistent_when_higher_ext_is_nonzero(self):
        verdict = arc_check(get_residue_field_module(KX2), 10)
        assert verdict.verdict == ConditionVerdict.CONSISTENT

    def test_should_be_consistent_for_free_module(self):
        verdict = arc_check(free_module(KX2, 1), 10)
        assert verdict.verdict == ConditionVerdict.CONSISTENT
        assert not verdict.failure_candidate

    def test_should_be_consistent_for_schulz_module(self):
        assert arc_check(get_schulz_module(), 10).verdict == ConditionVerdict.CONSISTENT


class TestInjectiveDimension:
    @pytest.mark.parametrize('side', [InjectiveSide.LEFT, InjectiveSide.RIGHT])
    def test_should_be_zero_for_self_injective_algebra(self, side):
        report = injective_dimension(QUANTUM_CI_Q2, 10, side=side)
        assert report.is_finite
        assert report.value == 0

    def test_should_certify_self_injective_report(self):
        report = injective_dimension_report(KX2, 10)
        assert report.is_self_injective
        assert report.self_injective_certificate is not None

    def test_should_reject_invalid_side(self):
        with pytest.raises(ValueError):
            get_dual_of_regular_module(KX2, 'middle')

    def test_should_find_no_gorenstein_symmetry_violation(self):
        report = gorenstein_symmetry_check(KX3, 10)
        assert not report.has_violation
        assert report.equality_holds is True
        assert report.inequality_holds is True


class TestDualitySymmetryCheck:
    def test_should_agree_for_schulz_module(self):
        report = duality_symmetry_check(get_schulz_module(), 6)
        assert report.agrees
        assert report.dims == report.dual_dims


class TestAuslanderBoundProbe:
    def test_should_list_uncertified_members_for_schulz_module(self):
        m = get_schulz_module()
        probe = auslander_bound_probe(m, [m, free_module(QUANTUM_CI_Q2, 1)], 20)
        assert probe.uncertified_members == (BoundMember('schulz_M', 1), BoundMember('A', 0))
        assert probe.eventually_vanishing_members == ()
        assert probe.b_m_relative == 0


class TestSyzygySumCheck:
    def test_should_hold_bound_without_expecting_equality_for_free_module(self):
        check = syzygy_sum_check(free_module(KX2, 1), 2, 10)
        assert check.d == 0
        assert check.bound_holds is True
        assert check.equality_expected is False
        assert check.equality_holds is None

    def test_should_leave_verdicts_undecided_for_uncertified_module(self):
        check = syzygy_sum_check(get_schulz_module(), 1, 8)
        assert check.d is None
        assert check.bound_holds is None
        assert check.equality_holds is None


class TestShiftFailures:
    def test_should_find_no_first_argument_failures(self):
        k = get_residue_field_module(KX2)
        assert first_argument_shift_failures(k, k, 6) == []

    def test_should_find_no_two_sided_failures_over_self_injective_algebra(self):
        k = get_residue_field_module(KX3)
        assert two_sided_shift_failures(k, k, 0, 4, 2, 2) == []

    def test_should_find_no_resolution_independence_failures(self):
        k = get_residue_field_module(KX2)
        assert resolution_independence_failures(k, k, 6, pad_step=1) == []


class TestAuditModule:
    def test_should_audit_residue_field_without_findings(self):
        report = audit_module(get_residue_field_module(KX2), 8)
        assert not report.has_violation
        assert report.consistency_failures == []
        assert report.ext_report.is_infinite
        assert report.pd_report.is_infinite
        assert report.ext_degree_chain_holds is None

    def test_should_confirm_chain_for_free_module(self):
        report = audit_module(free_module(KX3, 1), 8)
        assert report.ext_degree_chain_holds is True

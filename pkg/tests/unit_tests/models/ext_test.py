from unittest.mock import patch

import pytest

import extdeg_labs.models.ext as ext_module
from extdeg_labs.models.ext import (
    ZERO_MODULE_NOTE,
    ExtDegreeStatus,
    ExtProfile,
    TailVerdict,
    cm_status,
    ext_dims,
    ext_with_ring_degree,
    get_ext_degree_report,
    get_last_nonzero,
    get_tail_verdict,
    self_ext_degree
)
from extdeg_labs.models.module import (
    AlgebraMismatchError,
    ModuleRep,
    cyclic_quotient,
    direct_sum,
    free_module,
    zero_module
)
from extdeg_labs.models.resolution import (
    CutoffOnly,
    FinitePd,
    PeriodicityCertificate,
    Resolution
)

from tests.unit_tests.test_data import (
    KX2,
    KX3,
    KX3_X2,
    QUANTUM_CI_Q1,
    QUANTUM_CI_Q2,
    get_residue_field_module,
    get_schulz_module
)


class TestGetLastNonzero:
    @pytest.mark.parametrize('dims,expected', [
        ((1, 0, 0), 0),
        ((2, 1, 0, 3, 0), 3),
        ((0, 0), None),
        ((), None)
    ])
    def test_should_return_last_nonzero_index(self, dims, expected):
        assert get_last_nonzero(dims) == expected


class TestGetTailVerdict:
    def test_should_be_exact_for_finite_pd_within_cutoff(self):
        assert get_tail_verdict((1, 0, 0), FinitePd(0)) == TailVerdict(
            0, ExtDegreeStatus.EXACT, 0
        )

    def test_should_be_lower_bound_for_finite_pd_beyond_cutoff(self):
        verdict = get_tail_verdict((1, 1, 0), FinitePd(5))
        assert verdict.status == ExtDegreeStatus.LOWER_BOUND
        assert verdict.value == 1

    def test_should_be_infinite_for_nonzero_periodic_tail(self):
        verdict = get_tail_verdict((1, 1, 1), PeriodicityCertificate(start=0, period=1))
        assert verdict.is_infinite
        assert verdict.last_nonzero == 2

    def test_should_be_exact_for_vanishing_periodic_tail(self):
        verdict = get_tail_verdict((1, 0, 0, 0), PeriodicityCertificate(start=1, period=2))
        assert verdict.is_certified_finite
        assert verdict.value == 0

    def test_should_be_lower_bound_when_period_not_observed(self):
        verdict = get_tail_verdict((1, 0), PeriodicityCertificate(start=1, period=2))
        assert verdict.status == ExtDegreeStatus.LOWER_BOUND

    def test_should_be_lower_bound_without_certificate(self):
        assert get_tail_verdict((2, 1, 0, 0), CutoffOnly()) == TailVerdict(
            1, ExtDegreeStatus.LOWER_BOUND, 1
        )


class TestExtDims:
    def test_should_compute_ext_of_residue_field_over_kx2(self):
        k = get_residue_field_module(KX2)
        assert ext_dims(k, k, 5).dims == (1,) * 6

    def test_should_compute_ext_from_free_module(self):
        assert ext_dims(free_module(KX2, 1), get_residue_field_module(KX2), 3).dims == (
            1, 0, 0, 0
        )

    def test_should_vanish_into_self_injective_algebra(self):
        profile = ext_dims(get_residue_field_module(KX3), free_module(KX3, 1), 4)
        assert profile.dims == (1, 0, 0, 0, 0)
        assert profile.cutoff == 4

    def test_should_follow_betti_numbers_for_residue_field_over_quantum_ci(self):
        k = get_residue_field_module(QUANTUM_CI_Q1)
        assert ext_dims(k, k, 3).dims == (1, 2, 3, 4)

    def test_should_compute_schulz_profile(self):
        m = get_schulz_module()
        dims = ext_dims(m, m, 8).dims
        assert dims[0] == 2
        assert dims[1] >= 1
        assert not any(dims[2:])

    def test_should_reject_modules_over_different_algebras(self):
        with pytest.raises(AlgebraMismatchError):
            ext_dims(get_residue_field_module(KX2), get_residue_field_module(KX3), 2)


class TestSelfExtDegree:
    def test_should_report_lower_bound_for_schulz_module(self):
        report = self_ext_degree(get_schulz_module(), 20, seed=7)
        assert report.status == ExtDegreeStatus.LOWER_BOUND
        assert report.value == 1
        assert report.certificate == CutoffOnly()

    def test_should_certify_infinite_for_residue_field_over_kx2(self):
        report = self_ext_degree(get_residue_field_module(KX2), 10)
        assert report.is_infinite
        assert report.certificate == PeriodicityCertificate(start=0, period=1)

    def test_should_certify_zero_for_free_module(self):
        report = self_ext_degree(free_module(KX3, 1), 5)
        assert report.is_certified_finite
        assert report.value == 0
        assert report.certificate == FinitePd(0)

    def test_should_mark_zero_module(self):
        z = zero_module(KX2)
        report = get_ext_degree_report(z, ExtProfile(z, z, (0, 0, 0)), CutoffOnly())
        assert report.note == ZERO_MODULE_NOTE
        assert report.value == 0
        assert report.is_certified


class TestExtWithRingDegree:
    def test_should_certify_infinite_for_residue_field_over_kx2(self):
        report = ext_with_ring_degree(get_residue_field_module(KX2), 10)
        assert report.is_infinite
        assert report.certificate == PeriodicityCertificate(start=1, period=1)


class TestCMStatus:
    @pytest.mark.parametrize('m', [
        free_module(KX2, 1),
        get_residue_field_module(KX2)
    ])
    def test_should_certify_cm_modules_over_kx2(self, m):
        report = cm_status(m, 10)
        assert report.in_cm is True
        assert report.certified
        assert report.vanishing_bound == 0

    def test_should_leave_cm_status_open_without_certificate(self):
        report = cm_status(get_residue_field_module(QUANTUM_CI_Q1), 4)
        assert report.in_cm is None
        assert not report.certified
        assert report.certificate == CutoffOnly()


EXT_ADDITIVITY_CUTOFF = 5

EXT_ADDITIVITY_CASES = [
    (
        cyclic_quotient(KX3, [KX3_X2]), get_residue_field_module(KX3),
        get_residue_field_module(KX3), cyclic_quotient(KX3, [KX3_X2])
    ),
    (
        get_schulz_module(), get_residue_field_module(QUANTUM_CI_Q2),
        get_residue_field_module(QUANTUM_CI_Q2), get_schulz_module()
    )
]


def _get_dims(m: ModuleRep, n: ModuleRep) -> tuple:
    return ext_dims(m, n, EXT_ADDITIVITY_CUTOFF).dims


class TestExtAdditivity:
    @pytest.mark.parametrize(
        'first_source,second_source,first_target,second_target',
        EXT_ADDITIVITY_CASES,
        ids=['kx3', 'quantum_ci_q2']
    )
    def test_should_add_all_four_pairwise_profiles(
        self,
        first_source: ModuleRep,
        second_source: ModuleRep,
        first_target: ModuleRep,
        second_target: ModuleRep
    ):
        pairwise_dims = [
            _get_dims(source, target)
            for source in (first_source, second_source)
            for target in (first_target, second_target)
        ]
        expected = tuple(sum(values) for values in zip(*pairwise_dims))
        assert _get_dims(
            direct_sum(first_source, second_source),
            direct_sum(first_target, second_target)
        ) == expected


class TestExtDimsCache:
    def test_should_serve_shorter_profile_from_longer_cached_profile(self):
        k = get_residue_field_module(KX2)
        r = Resolution(k)
        with patch.object(
            ext_module, '_compute_ext_dims',
            wraps=ext_module._compute_ext_dims  # pylint: disable=protected-access
        ) as compute_mock:
            assert ext_dims(k, k, 6, resolution=r).dims == (1,) * 7
            assert ext_dims(k, k, 3, resolution=r).dims == (1,) * 4
            assert compute_mock.call_count == 1
            assert ext_dims(k, k, 8, resolution=r).dims == (1,) * 9
            assert compute_mock.call_count == 2

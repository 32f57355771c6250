import dataclasses

import pytest

from extdeg_labs.models.algebra import NonLocalAlgebraError
from extdeg_labs.models.module import cyclic_quotient, free_module
from extdeg_labs.models.resolution import (
    CutoffOnly,
    FinitePd,
    PeriodicityCertificate,
    Resolution,
    certify_resolution,
    detect_periodicity,
    extend_resolution,
    get_resolution,
    is_exact_at,
    is_minimal_differential,
    syzygy
)

from tests.unit_tests.test_data import (
    KX2,
    KX3,
    KX3_X2,
    QUANTUM_CI_Q1,
    get_idempotent_algebra,
    get_residue_field_module,
    get_schulz_module
)


class TestResolution:
    def test_should_compute_constant_betti_numbers_of_residue_field(self):
        r = get_resolution(get_residue_field_module(KX2)).extend(5)
        assert r.betti[:6] == [1] * 6
        assert not r.is_terminated

    def test_should_compute_growing_betti_numbers_over_quantum_ci(self):
        r = Resolution(get_residue_field_module(QUANTUM_CI_Q1)).extend(3)
        assert r.betti[:4] == [1, 2, 3, 4]

    def test_should_terminate_for_free_module(self):
        r = get_resolution(free_module(KX3, 2)).extend(4)
        assert r.is_terminated
        assert r.betti == [2]

    def test_should_not_change_terminated_resolution_when_extended_further(self):
        r = extend_resolution(Resolution(free_module(KX2, 1)), 2)
        assert extend_resolution(r, 6).betti == [1]
        assert len(r.steps) == 1

    def test_should_return_zero_syzygy_after_termination(self):
        assert syzygy(free_module(KX3, 1), 3).is_zero

    def test_should_return_same_resolution_from_cache(self):
        m = get_schulz_module()
        assert get_resolution(m) is get_resolution(m)

    def test_should_name_syzygies_after_module_with_equal_actions(self):
        k = get_residue_field_module(KX2)
        renamed = dataclasses.replace(k, name='k_renamed')
        assert get_resolution(renamed) is not get_resolution(k)
        assert get_resolution(renamed).extend(1).syzygies[0].name == 'Ω^1(k_renamed)'

    def test_should_keep_syzygy_dimensions_of_schulz_module(self):
        r = get_resolution(get_schulz_module()).extend(4)
        assert [m.dim for m in r.syzygies[:5]] == [2] * 5

    def test_should_be_exact_and_minimal(self):
        r = get_resolution(get_residue_field_module(QUANTUM_CI_Q1)).extend(4)
        for i in range(3):
            assert is_exact_at(r, i)
        for i in range(1, 4):
            assert is_minimal_differential(r, i)

    def test_should_add_redundant_summand_at_padded_step(self):
        r = Resolution(get_residue_field_module(KX2), pad_step=0).extend(3)
        assert not r.minimal
        assert r.betti[0] == 2
        assert not is_minimal_differential(r, 1)
        assert is_exact_at(r, 0)
        assert is_exact_at(r, 1)

    def test_should_reject_syzygy_over_non_local_algebra(self):
        with pytest.raises(NonLocalAlgebraError):
            syzygy(free_module(get_idempotent_algebra(), 1), 1)


class TestCertifyResolution:
    def test_should_certify_finite_pd(self):
        assert certify_resolution(get_resolution(free_module(KX2, 1)), 10) == FinitePd(0)

    def test_should_certify_period_one_for_residue_field(self):
        certificate = certify_resolution(get_resolution(get_residue_field_module(KX2)), 10)
        assert certificate == PeriodicityCertificate(start=0, period=1)

    def test_should_certify_period_two_for_kx3_quotient(self):
        m = cyclic_quotient(KX3, [KX3_X2])
        certificate = certify_resolution(get_resolution(m), 10)
        assert certificate == PeriodicityCertificate(start=0, period=2)
        assert isinstance(certificate, PeriodicityCertificate)
        assert certificate.iso is not None

    def test_should_reuse_certificate_for_same_arguments(self):
        r = get_resolution(get_residue_field_module(KX2))
        assert certify_resolution(r, 10) is certify_resolution(r, 10)

    def test_should_fall_back_to_cutoff_only_for_schulz_module(self):
        assert certify_resolution(get_resolution(get_schulz_module()), 20) == CutoffOnly()

    def test_should_not_certify_padded_resolution(self):
        r = Resolution(free_module(KX2, 1), pad_step=0)
        assert certify_resolution(r, 5) == CutoffOnly()

    def test_should_not_find_periodicity_for_unbounded_betti_numbers(self):
        r = get_resolution(get_residue_field_module(QUANTUM_CI_Q1))
        assert detect_periodicity(r, window=4) is None

import itertools
import logging
import random
import time
from typing import Callable, List, NamedTuple, Sequence, Tuple

from extdeg_labs.aggregators.audit import (
    PdStatus,
    duality_symmetry_check,
    first_argument_shift_failures,
    gorenstein_symmetry_check,
    injective_dimension_report,
    projective_dimension,
    resolution_independence_failures,
    two_sided_shift_failures
)
from extdeg_labs.aggregators.family import audit_family, enumerate_cyclic_family
from extdeg_labs.config.workspace_config import WorkspaceConfig
from extdeg_labs.models.algebra import AlgebraPresentation, is_local_algebra
from extdeg_labs.models.ext import ext_dims, get_last_nonzero, self_ext_degree
from extdeg_labs.models.module import ModuleRep, direct_sum
from extdeg_labs.models.resolution import (
    PeriodicityCertificate,
    certify_resolution,
    get_resolution,
    syzygy
)
from extdeg_labs.providers.documents import Workspace


LOGGER = logging.getLogger(__name__)


class FixtureNames:
    BASE_FIELD = 'k'
    KX2 = 'kx2'
    KX3 = 'kx3'
    QUANTUM_CI_Q1 = 'quantum_ci_q1'
    QUANTUM_CI_Q2 = 'quantum_ci_q2'
    SCHULZ_MODULE = 'schulz_M'
    SCHULZ_MODULE_Q1 = 'schulz_M_q1'
    K_OVER_KX2 = 'k_kx2'
    N_OVER_KX3 = 'N_kx3'
    SCHULZ_FAMILY_MEMBER = 'A/(x+y)'


SELF_INJECTIVE_ALGEBRA_NAMES = (
    FixtureNames.BASE_FIELD,
    FixtureNames.KX2,
    FixtureNames.KX3,
    FixtureNames.QUANTUM_CI_Q1,
    FixtureNames.QUANTUM_CI_Q2
)

COMPLETE_INTERSECTION_ALGEBRA_NAMES = (
    FixtureNames.KX2,
    FixtureNames.KX3,
    FixtureNames.QUANTUM_CI_Q1
)

SHIFT_CUTOFF = 12
TWO_SIDED_MAX_SHIFT = 3
TWO_SIDED_CUTOFF = 6
DUALITY_CUTOFF = 10
RESOLUTION_INDEPENDENCE_CUTOFF = 10
RESOLUTION_INDEPENDENCE_PAIR_COUNT = 10
FAMILY_COEFFICIENTS = (0, 1)
SCHULZ_FAMILY_COEFFICIENTS = (-1, 0, 1, 2)


class FixtureCheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str
    elapsed_seconds: float


class FixtureSuiteReport(NamedTuple):
    results: Tuple[FixtureCheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failed_checks(self) -> List[str]:
        return [result.name for result in self.results if not result.passed]


CheckOutcome = Tuple[bool, str]


def _get_local_module_pairs(workspace: Workspace) -> List[Tuple[ModuleRep, ModuleRep]]:
    return [
        (m, n)
        for a in workspace.algebras.values()
        if is_local_algebra(a)
        for m, n in itertools.product(workspace.get_modules_over(a), repeat=2)
    ]


def check_schulz_ext_degree(workspace: Workspace, config: WorkspaceConfig) -> CheckOutcome:
    m = workspace.get_module(FixtureNames.SCHULZ_MODULE)
    dims = ext_dims(m, m, config.cutoff).dims
    passed = dims[1] >= 1 and not any(dims[2:])
    return passed, f'Ext dims of {m.name}: {list(dims)}'


def check_schulz_q1_contrast(workspace: Workspace, config: WorkspaceConfig) -> CheckOutcome:
    m = workspace.get_module(FixtureNames.SCHULZ_MODULE_Q1)
    dims = ext_dims(m, m, config.cutoff).dims
    return all(dims), f'Ext dims of {m.name}: {list(dims)}'


def check_syzygy_sum_equality(workspace: Workspace, config: WorkspaceConfig) -> CheckOutcome:
    m = workspace.get_module(FixtureNames.SCHULZ_MODULE)
    observed = []
    for n in (1, 2, 3):
        summed = direct_sum(m, syzygy(m, n))
        observed.append(get_last_nonzero(ext_dims(summed, summed, config.cutoff).dims))
    return observed == [2, 3, 4], f'last nonzero degrees for n = 1, 2, 3: {observed}'


def check_periodicity_certificates(
    workspace: Workspace,
    config: WorkspaceConfig
) -> CheckOutcome:
    options = config.certification_options
    k = workspace.get_module(FixtureNames.K_OVER_KX2)
    k_certificate = certify_resolution(get_resolution(k), config.cutoff, seed=0, options=options)
    k_report = self_ext_degree(k, config.cutoff, seed=0, options=options)
    n = workspace.get_module(FixtureNames.N_OVER_KX3)
    n_certificate = certify_resolution(get_resolution(n), config.cutoff, seed=0, options=options)
    passed = (
        k_certificate == PeriodicityCertificate(start=0, period=1)
        and k_report.is_infinite
        and n_certificate == PeriodicityCertificate(start=0, period=2)
    )
    return passed, f'{k.name}: {k_certificate!r}; {n.name}: {n_certificate!r}'


def check_pd_ring_ext_crosscheck(workspace: Workspace, config: WorkspaceConfig) -> CheckOutcome:
    certified = []
    failures = []
    for m in workspace.modules.values():
        if not is_local_algebra(m.algebra):
            continue
        report = projective_dimension(
            m, config.cutoff, seed=config.seed, options=config.certification_options
        )
        if report.status != PdStatus.FINITE:
            continue
        certified.append(m.name)
        if report.consistency_failure:
            failures.append(m.name)
    return not failures, f'certified finite pd: {certified}; failures: {failures}'


def _get_d_by_algebra_name(workspace: Workspace, config: WorkspaceConfig) -> dict:
    d_by_algebra_name = {}
    for a in workspace.algebras.values():
        if not is_local_algebra(a):
            continue
        report = injective_dimension_report(
            a, config.cutoff, seed=config.seed, options=config.certification_options
        )
        if report.is_self_injective:
            d_by_algebra_name[a.name] = 0
    return d_by_algebra_name


def check_dimension_shifting(workspace: Workspace, config: WorkspaceConfig) -> CheckOutcome:
    pairs = _get_local_module_pairs(workspace)
    first_argument_failures = []
    two_sided_failures = []
    d_by_algebra_name = _get_d_by_algebra_name(workspace, config)
    for m, n in pairs:
        if first_argument_shift_failures(m, n, SHIFT_CUTOFF):
            first_argument_failures.append((m.name, n.name))
        d = d_by_algebra_name.get(m.algebra.name)
        if d is not None and two_sided_shift_failures(
            m, n, d, TWO_SIDED_CUTOFF, TWO_SIDED_MAX_SHIFT, TWO_SIDED_MAX_SHIFT
        ):
            two_sided_failures.append((m.name, n.name))
    passed = not first_argument_failures and not two_sided_failures
    return passed, (
        f'{len(pairs)} pairs; first-argument failures: {first_argument_failures};'
        f' two-sided failures: {two_sided_failures}'
    )


def check_duality_symmetry(workspace: Workspace, _config: WorkspaceConfig) -> CheckOutcome:
    failures = [
        m.name for m in workspace.modules.values()
        if not duality_symmetry_check(m, DUALITY_CUTOFF).agrees
    ]
    return not failures, f'{len(workspace.modules)} modules; failures: {failures}'


def _is_certified_zero_chain(a: AlgebraPresentation, config: WorkspaceConfig) -> CheckOutcome:
    report = gorenstein_symmetry_check(
        a, config.cutoff, seed=config.seed, options=config.certification_options
    )
    passed = (
        report.ext_report.is_certified_finite and report.ext_report.value == 0
        and report.id_left.is_finite and report.id_left.value == 0
        and report.id_right.is_finite and report.id_right.value == 0
        and report.equality_holds is True and report.inequality_holds is True
    )
    return passed, (
        f'{a.name}: ext.deg(D(A) ⊕ A)={report.ext_report.value},'
        f' id_left={report.id_left.value}, id_right={report.id_right.value}'
    )


def check_gorenstein_chain(workspace: Workspace, config: WorkspaceConfig) -> CheckOutcome:
    outcomes = [
        _is_certified_zero_chain(workspace.get_algebra(name), config)
        for name in SELF_INJECTIVE_ALGEBRA_NAMES
    ]
    return all(passed for passed, _ in outcomes), '; '.join(detail for _, detail in outcomes)


def check_complete_intersection_family(
    a: AlgebraPresentation,
    config: WorkspaceConfig
) -> CheckOutcome:
    family = enumerate_cyclic_family(
        a, FAMILY_COEFFICIENTS, 1, limit=config.enumeration_limit,
        seed=config.seed, trials=config.iso_trials
    )
    report = audit_family(
        a, family, config.cutoff, seed=config.seed,
        options=config.certification_options, max_workers=config.max_workers
    )
    id_report = report.injdim_report.left
    bounds_agree = (
        report.fed_lower_bound == 0 == report.fpd_estimate
        and id_report.is_finite and id_report.value == 0
    )
    # members whose Betti numbers grow cannot be certified, but stay nonzero through the cutoff
    accepted_at_cutoff = [
        member.module.name for member in report.members
        if not member.ext_report.is_certified and member.ext_report.value == config.cutoff
    ]
    non_free_ok = all(
        (member.pd_report.is_finite and member.pd_report.value == 0)
        or (
            member.ext_report.is_infinite
            and isinstance(member.ext_report.certificate, PeriodicityCertificate)
        )
        or member.module.name in accepted_at_cutoff
        for member in report.members
    )
    passed = bounds_agree and non_free_ok and not report.has_violation
    return passed, (
        f'{a.name}: members={list(report.family)}, fed>={report.fed_lower_bound},'
        f' fpd>={report.fpd_estimate}, id={id_report.value},'
        f' uncertified={[member.name for member in report.uncertified]},'
        f' accepted at cutoff={accepted_at_cutoff}'
    )


def _check_schulz_family(a: AlgebraPresentation, config: WorkspaceConfig) -> CheckOutcome:
    family = enumerate_cyclic_family(
        a, SCHULZ_FAMILY_COEFFICIENTS, 1, limit=config.enumeration_limit,
        seed=config.seed, trials=config.iso_trials
    )
    report = audit_family(
        a, family, config.cutoff, seed=config.seed,
        options=config.certification_options, max_workers=config.max_workers
    )
    schulz_bounds = [
        member.observed_bound for member in report.uncertified
        if member.name == FixtureNames.SCHULZ_FAMILY_MEMBER
    ]
    passed = schulz_bounds == [1] and not report.has_violation
    return passed, (
        f'{a.name}: {len(report.family)} members, fed>={report.fed_lower_bound},'
        f' {FixtureNames.SCHULZ_FAMILY_MEMBER} uncertified bounds={schulz_bounds},'
        f' violations={list(report.garc_violations)}'
    )


def check_family_audits(workspace: Workspace, config: WorkspaceConfig) -> CheckOutcome:
    outcomes = [
        check_complete_intersection_family(workspace.get_algebra(name), config)
        for name in COMPLETE_INTERSECTION_ALGEBRA_NAMES
    ]
    outcomes.append(
        _check_schulz_family(workspace.get_algebra(FixtureNames.QUANTUM_CI_Q2), config)
    )
    return all(passed for passed, _ in outcomes), '; '.join(detail for _, detail in outcomes)


def check_resolution_independence(
    workspace: Workspace,
    config: WorkspaceConfig
) -> CheckOutcome:
    pairs = _get_local_module_pairs(workspace)
    rng = random.Random(config.seed)
    failures = []
    checked = []
    for _ in range(RESOLUTION_INDEPENDENCE_PAIR_COUNT):
        m, n = rng.choice(pairs)
        pad_step = rng.randint(0, 3)
        checked.append((m.name, n.name, pad_step))
        if resolution_independence_failures(m, n, RESOLUTION_INDEPENDENCE_CUTOFF, pad_step):
            failures.append((m.name, n.name, pad_step))
    return not failures, f'checked: {checked}; failures: {failures}'


FIXTURE_CHECKS: Sequence[Tuple[str, Callable[[Workspace, WorkspaceConfig], CheckOutcome]]] = (
    ('schulz_ext_degree', check_schulz_ext_degree),
    ('schulz_q1_contrast', check_schulz_q1_contrast),
    ('syzygy_sum_equality', check_syzygy_sum_equality),
    ('periodicity_certificates', check_periodicity_certificates),
    ('ring_ext_crosscheck', check_pd_ring_ext_crosscheck),
    ('dimension_shifting', check_dimension_shifting),
    ('duality_symmetry', check_duality_symmetry),
    ('gorenstein_chain', check_gorenstein_chain),
    ('family_audits', check_family_audits),
    ('resolution_independence', check_resolution_independence)
)


def run_fixture_check(
    name: str,
    check_fn: Callable[[Workspace, WorkspaceConfig], CheckOutcome],
    workspace: Workspace,
    config: WorkspaceConfig
) -> FixtureCheckResult:
    LOGGER.info('running fixture check: %r', name)
    start_time = time.monotonic()
    try:
        passed, detail = check_fn(workspace, config)
    except (KeyError, ValueError, ArithmeticError) as exc:
        LOGGER.warning('fixture check %r failed with %r', name, exc)
        passed, detail = False, f'error: {exc}'
    elapsed_seconds = time.monotonic() - start_time
    LOGGER.info('fixture check %r: passed=%r (%.3fs)', name, passed, elapsed_seconds)
    return FixtureCheckResult(
        name=name, passed=passed, detail=detail, elapsed_seconds=elapsed_seconds
    )


def run_fixture_suite(workspace: Workspace, config: WorkspaceConfig) -> FixtureSuiteReport:
    return FixtureSuiteReport(results=tuple(
        run_fixture_check(name, check_fn, workspace, config)
        for name, check_fn in FIXTURE_CHECKS
    ))

import concurrent.futures
import dataclasses
import itertools
import logging
import math
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from extdeg_labs.aggregators.audit import (
    ConditionVerdict,
    GarcVerdict,
    InjectiveDimensionReport,
    PdReport,
    garc_check,
    injective_dimension_report
)
from extdeg_labs.linalg.field import Scalar
from extdeg_labs.linalg.reduction import rref
from extdeg_labs.models.algebra import (
    AlgebraPresentation,
    NonLocalAlgebraError,
    is_local_algebra
)
from extdeg_labs.models.ext import (
    CMReport,
    ExtDegreeReport,
    cm_status,
    self_ext_degree
)
from extdeg_labs.models.module import (
    AlgebraMismatchError,
    ModuleRep,
    cyclic_quotient,
    get_left_ideal_span,
    is_isomorphic
)
from extdeg_labs.models.resolution import (
    DEFAULT_CERTIFICATION_OPTIONS,
    CertificationOptions
)


LOGGER = logging.getLogger(__name__)


DEFAULT_ENUMERATION_LIMIT = 5000


class EmptyFamilyError(ValueError):
    def __init__(self, algebra_name: str):
        super().__init__(f'empty module family over {algebra_name!r}')
        self.algebra_name = algebra_name


class EnumerationLimitExceededError(RuntimeError):
    def __init__(self, candidate_count: int, limit: int):
        super().__init__(
            f'cyclic family enumeration needs {candidate_count} candidates, limit is {limit}'
        )
        self.candidate_count = candidate_count
        self.limit = limit


class MemberAudit(NamedTuple):
    module: ModuleRep
    ext_report: ExtDegreeReport
    pd_report: PdReport
    cm_report: CMReport
    garc: GarcVerdict


class UncertifiedMember(NamedTuple):
    name: str
    observed_bound: int
    cutoff: int


class FamilyCondition:
    FINITE_EXT_DEGREE_IFF_FINITE_PD = 'finite_ext_degree_iff_finite_pd'
    CM_FINITE_EXT_DEGREE_IS_FREE = 'cm_finite_ext_degree_is_free'
    CM_EXT_DEGREE_SUP_IS_ZERO = 'cm_ext_degree_sup_is_zero'
    FED_AT_MOST_ID = 'fed_at_most_id'


class FamilyConditionFinding(NamedTuple):
    condition: str
    # None when undecided within certification
    holds: Optional[bool]
    detail: str
    counterexamples: Tuple[str, ...] = ()


class FedDichotomyFinding(NamedTuple):
    id_value: int
    certified_members: Tuple[str, ...]
    flagged_members: Tuple[str, ...]

    @property
    def fed_infinite_certified(self) -> bool:
        return bool(self.certified_members)


@dataclasses.dataclass(frozen=True)
class FamilyAuditReport:  # pylint: disable=too-many-instance-attributes
    algebra: AlgebraPresentation
    family: Tuple[str, ...]
    cutoff: int
    members: Tuple[MemberAudit, ...]
    fed_lower_bound: int
    fpd_estimate: int
    uncertified: Tuple[UncertifiedMember, ...]
    condition_findings: Tuple[FamilyConditionFinding, ...]
    injdim_report: InjectiveDimensionReport
    garc_violations: Tuple[str, ...]
    garc_failure_candidates: Tuple[str, ...]
    fed_dichotomy: Optional[FedDichotomyFinding]
    consistency_failures: Tuple[str, ...]

    @property
    def has_violation(self) -> bool:
        return bool(self.garc_violations) or bool(self.consistency_failures)


def get_radical_elements(
    a: AlgebraPresentation,
    coefficient_set: Sequence[Scalar]
) -> List[Tuple[Scalar, ...]]:
    # zero first, then positive values, then negative ones, so that x+y precedes -x-y
    ordered_values = sorted(
        (Fraction(value) for value in coefficient_set),
        key=lambda value: (value != 0, value < 0, abs(value))
    )
    coefficients = list(dict.fromkeys(a.field.convert(value) for value in ordered_values))
    elements = []
    for values in itertools.product(coefficients, repeat=len(a.radical_indices)):
        if not any(values):
            continue
        element = [a.field.zero] * a.dim
        for index, value in zip(a.radical_indices, values):
            element[index] = value
        elements.append(tuple(element))
    # sparsest elements first; sorted() is stable
    return sorted(elements, key=lambda element: sum(1 for value in element if value != 0))


def _get_candidate_count(element_count: int, max_generators: int) -> int:
    return sum(
        math.comb(element_count, size)
        for size in range(0, min(max_generators, element_count) + 1)
    )


def _get_ideal_key(a: AlgebraPresentation, generators: Sequence[Sequence[Scalar]]) -> tuple:
    ideal = get_left_ideal_span(a, generators)
    if ideal.cols == 0:
        return ()
    return rref(ideal.transpose()).reduced.entries


def enumerate_cyclic_family(  # pylint: disable=too-many-arguments
    a: AlgebraPresentation,
    coefficient_set: Sequence[Scalar],
    max_generators: int,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    seed: int = 0,
    trials: int = DEFAULT_CERTIFICATION_OPTIONS.trials
) -> List[ModuleRep]:
    elements = get_radical_elements(a, coefficient_set)
    candidate_count = _get_candidate_count(len(elements), max_generators)
    if candidate_count > limit:
        raise EnumerationLimitExceededError(candidate_count, limit)
    seen_ideals = set()
    family: List[ModuleRep] = []
    for size in range(0, max_generators + 1):
        for generators in itertools.combinations(elements, size):
            ideal_key = _get_ideal_key(a, generators)
            if ideal_key in seen_ideals:
                continue
            seen_ideals.add(ideal_key)
            module = cyclic_quotient(a, generators, name=None if generators else 'A')
            if any(
                kept.dim == module.dim
                and is_isomorphic(kept, module, seed=seed, trials=trials) is not None
                for kept in family
            ):
                LOGGER.debug('skipping %r: isomorphic to an earlier member', module.name)
                continue
            family.append(module)
    LOGGER.info(
        'enumerated cyclic family over %r: %d candidates, %d members: %r',
        a.name, candidate_count, len(family), [m.name for m in family]
    )
    return family


def audit_member(
    m: ModuleRep,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> MemberAudit:
    garc = garc_check(m, cutoff, seed=seed, options=options)
    return MemberAudit(
        module=m,
        ext_report=self_ext_degree(m, cutoff, seed=seed, options=options),
        pd_report=garc.pd_report,
        cm_report=cm_status(m, cutoff, seed=seed, options=options),
        garc=garc
    )


def _iter_member_audits(
    family: Sequence[ModuleRep],
    cutoff: int,
    seed: int,
    options: CertificationOptions,
    max_workers: int
) -> List[MemberAudit]:
    if max_workers <= 1:
        return [audit_member(m, cutoff, seed=seed, options=options) for m in family]
    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
        index_by_future_map = {
            executor.submit(audit_member, m, cutoff, seed, options): index
            for index, m in enumerate(family)
        }
        audit_by_index_map: Dict[int, MemberAudit] = {}
        for future in concurrent.futures.as_completed(index_by_future_map):
            audit_by_index_map[index_by_future_map[future]] = future.result()
    return [audit_by_index_map[index] for index in range(len(family))]


def _get_finite_pd_finding(members: Sequence[MemberAudit]) -> FamilyConditionFinding:
    counterexamples = []
    undecided = []
    for member in members:
        if member.ext_report.is_certified_finite:
            if member.pd_report.is_infinite:
                counterexamples.append(member.module.name)
            elif not member.pd_report.is_finite:
                undecided.append(member.module.name)
        elif member.pd_report.is_finite and member.ext_report.is_infinite:
            counterexamples.append(member.module.name)
    if counterexamples:
        return FamilyConditionFinding(
            FamilyCondition.FINITE_EXT_DEGREE_IFF_FINITE_PD, False,
            'finite ext.deg with infinite pd', tuple(counterexamples)
        )
    if undecided:
        return FamilyConditionFinding(
            FamilyCondition.FINITE_EXT_DEGREE_IFF_FINITE_PD, None,
            'finite ext.deg with uncertified pd: ' + ', '.join(undecided)
        )
    return FamilyConditionFinding(
        FamilyCondition.FINITE_EXT_DEGREE_IFF_FINITE_PD, True,
        'certified finite ext.deg and finite pd agree on every member'
    )


def _is_free_member(member: MemberAudit) -> bool:
    return member.pd_report.is_finite and member.pd_report.value == 0


def _get_cm_findings(members: Sequence[MemberAudit]) -> Tuple[FamilyConditionFinding, FamilyConditionFinding]:
    cm_finite_members = [
        member for member in members
        if member.cm_report.in_cm and member.ext_report.is_certified_finite
    ]
    not_free = [
        member.module.name for member in cm_finite_members
        if (member.pd_report.is_finite or member.pd_report.is_infinite)
        and not _is_free_member(member)
    ]
    undecided = [
        member.module.name for member in cm_finite_members
        if not (member.pd_report.is_finite or member.pd_report.is_infinite)
    ]
    if not_free:
        free_finding = FamilyConditionFinding(
            FamilyCondition.CM_FINITE_EXT_DEGREE_IS_FREE, False,
            'CM members with finite ext.deg that are not free', tuple(not_free)
        )
    elif undecided:
        free_finding = FamilyConditionFinding(
            FamilyCondition.CM_FINITE_EXT_DEGREE_IS_FREE, None,
            'CM members with finite ext.deg and uncertified pd: ' + ', '.join(undecided)
        )
    else:
        free_finding = FamilyConditionFinding(
            FamilyCondition.CM_FINITE_EXT_DEGREE_IS_FREE, True,
            f'{len(cm_finite_members)} CM members with finite ext.deg, all free'
        )
    positive = [
        member.module.name for member in cm_finite_members
        if member.ext_report.value
    ]
    sup_zero_finding = FamilyConditionFinding(
        FamilyCondition.CM_EXT_DEGREE_SUP_IS_ZERO,
        not positive,
        'sup of finite ext.deg over CM members is '
        + str(max((member.ext_report.value or 0 for member in cm_finite_members), default=0)),
        tuple(positive)
    )
    return free_finding, sup_zero_finding


def _get_fed_at_most_id_finding(fed_lower_bound: int, id_report: PdReport) -> FamilyConditionFinding:
    if id_report.is_infinite:
        return FamilyConditionFinding(
            FamilyCondition.FED_AT_MOST_ID, True, 'id(A) is infinite'
        )
    if not id_report.is_finite:
        return FamilyConditionFinding(
            FamilyCondition.FED_AT_MOST_ID, None, 'id(A) not certified'
        )
    assert id_report.value is not None
    return FamilyConditionFinding(
        FamilyCondition.FED_AT_MOST_ID,
        fed_lower_bound <= id_report.value,
        f'fed lower bound {fed_lower_bound}, id(A) = {id_report.value}'
    )


def _get_fed_dichotomy_finding(
    members: Sequence[MemberAudit],
    id_report: PdReport,
    cutoff: int
) -> Optional[FedDichotomyFinding]:
    # for Artin algebras with finite id: fed(A) is either id(A) or infinite
    if not id_report.is_finite:
        return None
    assert id_report.value is not None
    certified = []
    flagged = []
    for member in members:
        report = member.ext_report
        if report.value is None or report.value <= id_report.value:
            continue
        if report.is_certified:
            certified.append(member.module.name)
        elif report.value < cutoff:
            flagged.append(member.module.name)
    if not certified and not flagged:
        return None
    finding = FedDichotomyFinding(
        id_value=id_report.value,
        certified_members=tuple(certified),
        flagged_members=tuple(flagged)
    )
    LOGGER.info('ext.deg exceeds id(A) = %d: %r', id_report.value, finding)
    return finding


def _get_consistency_failures(
    members: Sequence[MemberAudit],
    fed_lower_bound: int,
    fpd_estimate: int
) -> List[str]:
    failures = []
    for member in members:
        if member.pd_report.consistency_failure:
            failures.append(f'{member.module.name}: pd disagrees with Ext(M, A) vanishing')
        if member.garc.consistency_failure:
            failures.append(f'{member.module.name}: ext.deg(M ⊕ A) exceeds finite pd')
    if fpd_estimate > fed_lower_bound:
        failures.append(f'fpd estimate {fpd_estimate} exceeds fed lower bound {fed_lower_bound}')
    return failures


def audit_family(  # pylint: disable=too-many-arguments,too-many-locals
    a: AlgebraPresentation,
    family: Sequence[ModuleRep],
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS,
    max_workers: int = 1
) -> FamilyAuditReport:
    if not is_local_algebra(a):
        raise NonLocalAlgebraError(a.name, 'family audits require a local algebra')
    if not family:
        raise EmptyFamilyError(a.name)
    for m in family:
        if m.algebra != a:
            raise AlgebraMismatchError(a.name, m.algebra.name)
    LOGGER.info('auditing family over %r: %d members, cutoff=%d', a.name, len(family), cutoff)
    members = _iter_member_audits(family, cutoff, seed, options, max_workers)
    certified_pd_values = [
        member.pd_report.value for member in members
        if member.pd_report.is_finite and member.pd_report.value is not None
    ]
    fpd_estimate = max(certified_pd_values, default=0)
    fed_lower_bound = max(
        [
            member.ext_report.value for member in members
            if member.ext_report.is_certified_finite and member.ext_report.value is not None
        ] + certified_pd_values,
        default=0
    )
    uncertified = tuple(
        UncertifiedMember(
            name=member.module.name,
            observed_bound=member.ext_report.value or 0,
            cutoff=cutoff
        )
        for member in members
        if not member.ext_report.is_certified
    )
    injdim_report = injective_dimension_report(a, cutoff, seed=seed, options=options)
    free_finding, sup_zero_finding = _get_cm_findings(members)
    report = FamilyAuditReport(
        algebra=a,
        family=tuple(member.module.name for member in members),
        cutoff=cutoff,
        members=tuple(members),
        fed_lower_bound=fed_lower_bound,
        fpd_estimate=fpd_estimate,
        uncertified=uncertified,
        condition_findings=(
            _get_finite_pd_finding(members),
            free_finding,
            sup_zero_finding,
            _get_fed_at_most_id_finding(fed_lower_bound, injdim_report.left)
        ),
        injdim_report=injdim_report,
        garc_violations=tuple(
            member.module.name for member in members
            if member.garc.verdict == ConditionVerdict.VIOLATION
        ),
        garc_failure_candidates=tuple(
            member.module.name for member in members
            if member.garc.failure_candidate
        ),
        fed_dichotomy=_get_fed_dichotomy_finding(members, injdim_report.left, cutoff),
        consistency_failures=tuple(
            _get_consistency_failures(members, fed_lower_bound, fpd_estimate)
        )
    )
    LOGGER.info(
        'family audit over %r: fed >= %d, fpd >= %d, uncertified=%d, violations=%r',
        a.name, report.fed_lower_bound, report.fpd_estimate, len(report.uncertified),
        report.garc_violations
    )
    return report

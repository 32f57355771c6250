import dataclasses
import logging
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence, Tuple

from extdeg_labs.models.algebra import (
    AlgebraPresentation,
    NonLocalAlgebraError,
    is_local_algebra,
    opposite
)
from extdeg_labs.models.ext import (
    CMReport,
    ExtDegreeReport,
    TailVerdict,
    cm_status,
    ext_dims,
    ext_with_ring_degree,
    get_last_nonzero,
    get_tail_verdict,
    self_ext_degree
)
from extdeg_labs.models.module import (
    IsoCertificate,
    ModuleRep,
    check_same_algebra,
    direct_sum,
    dual,
    free_module,
    is_isomorphic
)
from extdeg_labs.models.resolution import (
    DEFAULT_CERTIFICATION_OPTIONS,
    CertificationOptions,
    FinitePd,
    PeriodicityCertificate,
    certify_resolution,
    get_resolution,
    syzygy
)


LOGGER = logging.getLogger(__name__)


class PdStatus(str, Enum):
    FINITE = 'finite'
    INFINITE = 'infinite'
    UNKNOWN = 'unknown'


class PdMethod(str, Enum):
    TERMINATION = 'Termination'
    PERIODICITY = 'Periodicity'
    CUTOFF_ONLY = 'CutoffOnly'


class ConditionVerdict(str, Enum):
    CONSISTENT = 'Consistent'
    VIOLATION = 'Violation'
    INCONCLUSIVE = 'Inconclusive'


class InjectiveSide:
    # id_A(A): the regular left module
    LEFT = 'left'
    # id_(A^op)(A): the regular right module
    RIGHT = 'right'


class RingExtCrossCheck(NamedTuple):
    sup_index: Optional[int]
    agrees: bool
    dims: Tuple[int, ...] = ()


@dataclasses.dataclass(frozen=True)
class PdReport:
    module: ModuleRep
    cutoff: int
    status: PdStatus
    value: Optional[int]
    method: PdMethod
    ring_ext_crosscheck: Optional[RingExtCrossCheck] = None

    @property
    def is_finite(self) -> bool:
        return self.status == PdStatus.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.status == PdStatus.INFINITE

    @property
    def consistency_failure(self) -> bool:
        return self.ring_ext_crosscheck is not None and not self.ring_ext_crosscheck.agrees


@dataclasses.dataclass(frozen=True)
class GarcVerdict:  # pylint: disable=too-many-instance-attributes
    module: ModuleRep
    n_star: ExtDegreeReport
    pd_report: PdReport
    verdict: ConditionVerdict
    theorem_equality: Optional[bool] = None
    failure_candidate: bool = False
    consistency_failure: bool = False


@dataclasses.dataclass(frozen=True)
class ArcVerdict:
    module: ModuleRep
    dims: Tuple[int, ...]
    tail: TailVerdict
    pd_report: PdReport
    verdict: ConditionVerdict
    failure_candidate: bool = False


@dataclasses.dataclass(frozen=True)
class InjectiveDimensionReport:
    algebra: AlgebraPresentation
    left: PdReport
    right: PdReport
    self_injective_certificate: Optional[IsoCertificate] = None

    @property
    def is_self_injective(self) -> bool:
        return (
            self.left.is_finite and self.left.value == 0
            and self.right.is_finite and self.right.value == 0
        )


@dataclasses.dataclass(frozen=True)
class GorensteinSymmetryReport:
    algebra: AlgebraPresentation
    ext_report: ExtDegreeReport
    id_left: PdReport
    id_right: PdReport
    equality_holds: Optional[bool]
    inequality_holds: Optional[bool]
    right_equality_holds: Optional[bool]

    @property
    def has_violation(self) -> bool:
        return False in (self.equality_holds, self.inequality_holds, self.right_equality_holds)


@dataclasses.dataclass(frozen=True)
class DualitySymmetryReport:
    module: ModuleRep
    dims: Tuple[int, ...]
    dual_dims: Tuple[int, ...]

    @property
    def agrees(self) -> bool:
        return self.dims == self.dual_dims


class BoundMember(NamedTuple):
    name: str
    bound: int


@dataclasses.dataclass(frozen=True)
class AuslanderBoundProbe:
    module: ModuleRep
    test_family: Tuple[str, ...]
    cutoff: int
    b_m_relative: int
    eventually_vanishing_members: Tuple[BoundMember, ...]
    uncertified_members: Tuple[BoundMember, ...]
    non_vanishing_members: Tuple[str, ...]


@dataclasses.dataclass(frozen=True)
class SyzygySumCheck:  # pylint: disable=too-many-instance-attributes
    module: ModuleRep
    n: int
    d: Optional[int]
    base_last_nonzero: Optional[int]
    sum_last_nonzero: Optional[int]
    bound_holds: Optional[bool]
    equality_expected: bool
    equality_holds: Optional[bool]


class ShiftFailure(NamedTuple):
    degree: int
    first_shift: int
    second_shift: int
    expected: int
    observed: int


@dataclasses.dataclass(frozen=True)
class ModuleAuditReport:  # pylint: disable=too-many-instance-attributes
    module: ModuleRep
    cutoff: int
    ext_report: ExtDegreeReport
    ext_with_ring_report: ExtDegreeReport
    pd_report: PdReport
    cm_report: CMReport
    garc: GarcVerdict
    arc: ArcVerdict
    duality: DualitySymmetryReport
    ext_degree_chain_holds: Optional[bool]

    @property
    def consistency_failures(self) -> List[str]:
        failures = []
        if self.pd_report.consistency_failure:
            failures.append('projective dimension disagrees with Ext(M, A) vanishing')
        if self.garc.consistency_failure:
            failures.append('ext.deg(M ⊕ A) exceeds a finite projective dimension')
        if self.ext_degree_chain_holds is False:
            failures.append('ext.deg(M) <= ext.deg(M ⊕ A) <= pd(M) chain broken')
        if not self.duality.agrees:
            failures.append('Ext profile differs from the dual profile over the opposite algebra')
        return failures

    @property
    def has_violation(self) -> bool:
        return (
            self.garc.verdict == ConditionVerdict.VIOLATION
            or self.arc.verdict == ConditionVerdict.VIOLATION
        )


def _check_local(a: AlgebraPresentation, message: str):
    if not is_local_algebra(a):
        raise NonLocalAlgebraError(a.name, message)


def projective_dimension(
    m: ModuleRep,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> PdReport:
    ring = free_module(m.algebra, 1)
    r = get_resolution(m)
    r.extend(cutoff + 1)
    if not r.is_local:
        dims = ext_dims(m, ring, cutoff).dims
        return PdReport(
            module=m, cutoff=cutoff, status=PdStatus.UNKNOWN, value=None,
            method=PdMethod.CUTOFF_ONLY,
            ring_ext_crosscheck=RingExtCrossCheck(get_last_nonzero(dims), agrees=True, dims=dims)
        )
    certificate = certify_resolution(r, cutoff, seed=seed, options=options)
    if isinstance(certificate, FinitePd):
        n = certificate.n
        dims = ext_dims(m, ring, max(cutoff, n)).dims
        agrees = m.is_zero or (dims[n] != 0 and not any(dims[n + 1:]))
        if not agrees:
            LOGGER.warning('pd(%r) = %d disagrees with Ext(M, A) profile %r', m.name, n, dims)
        return PdReport(
            module=m, cutoff=cutoff, status=PdStatus.FINITE, value=n,
            method=PdMethod.TERMINATION,
            ring_ext_crosscheck=RingExtCrossCheck(get_last_nonzero(dims), agrees=agrees, dims=dims)
        )
    dims = ext_dims(m, ring, cutoff).dims
    ring_ext_probe = RingExtCrossCheck(get_last_nonzero(dims), agrees=True, dims=dims)
    if isinstance(certificate, PeriodicityCertificate):
        return PdReport(
            module=m, cutoff=cutoff, status=PdStatus.INFINITE, value=None,
            method=PdMethod.PERIODICITY, ring_ext_crosscheck=ring_ext_probe
        )
    return PdReport(
        module=m, cutoff=cutoff, status=PdStatus.UNKNOWN, value=None,
        method=PdMethod.CUTOFF_ONLY, ring_ext_crosscheck=ring_ext_probe
    )


def _get_garc_verdict(
    n_star: ExtDegreeReport,
    pd_report: PdReport
) -> Tuple[ConditionVerdict, Optional[bool], bool]:
    if n_star.is_infinite:
        return ConditionVerdict.CONSISTENT, None, False
    if n_star.is_certified_finite:
        if pd_report.is_finite:
            assert pd_report.value is not None and n_star.value is not None
            if pd_report.value == n_star.value:
                return ConditionVerdict.CONSISTENT, True, False
            if pd_report.value > n_star.value:
                return ConditionVerdict.VIOLATION, False, False
            return ConditionVerdict.INCONCLUSIVE, False, True
        if pd_report.is_infinite:
            return ConditionVerdict.VIOLATION, False, False
        return ConditionVerdict.INCONCLUSIVE, None, False
    if pd_report.is_finite and pd_report.value == n_star.value:
        return ConditionVerdict.CONSISTENT, True, False
    return ConditionVerdict.INCONCLUSIVE, None, False


def garc_check(
    m: ModuleRep,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> GarcVerdict:
    _check_local(m.algebra, 'GARC verdicts certified only for local algebras')
    n_star = ext_with_ring_degree(m, cutoff, seed=seed, options=options)
    pd_report = projective_dimension(m, cutoff, seed=seed, options=options)
    verdict, theorem_equality, consistency_failure = _get_garc_verdict(n_star, pd_report)
    failure_candidate = (
        verdict == ConditionVerdict.INCONCLUSIVE
        and not n_star.is_certified
        and n_star.value is not None
        and n_star.value < cutoff
        and not pd_report.is_finite
    )
    if failure_candidate:
        LOGGER.info(
            'GARC failure candidate %r: ext.deg(M ⊕ A) >= %r observed, no pd termination',
            m.name, n_star.value
        )
    return GarcVerdict(
        module=m,
        n_star=n_star,
        pd_report=pd_report,
        verdict=verdict,
        theorem_equality=theorem_equality,
        failure_candidate=failure_candidate,
        consistency_failure=consistency_failure
    )


def arc_check(
    m: ModuleRep,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> ArcVerdict:
    _check_local(m.algebra, 'ARC verdicts certified only for local algebras')
    dims = ext_dims(m, direct_sum(m, free_module(m.algebra, 1)), cutoff).dims
    certificate = certify_resolution(get_resolution(m), cutoff, seed=seed, options=options)
    higher_dims = (0,) + dims[1:]
    tail = get_tail_verdict(higher_dims, certificate)
    pd_report = projective_dimension(m, cutoff, seed=seed, options=options)
    failure_candidate = False
    if any(higher_dims):
        verdict = ConditionVerdict.CONSISTENT
    elif tail.is_certified:
        if pd_report.is_finite and pd_report.value == 0:
            verdict = ConditionVerdict.CONSISTENT
        elif pd_report.is_finite or pd_report.is_infinite:
            verdict = ConditionVerdict.VIOLATION
        else:
            verdict = ConditionVerdict.INCONCLUSIVE
    else:
        verdict = ConditionVerdict.INCONCLUSIVE
        failure_candidate = not pd_report.is_finite
    return ArcVerdict(
        module=m,
        dims=dims,
        tail=tail,
        pd_report=pd_report,
        verdict=verdict,
        failure_candidate=failure_candidate
    )


def get_dual_of_regular_module(a: AlgebraPresentation, side: str) -> ModuleRep:
    if side == InjectiveSide.LEFT:
        # D(_A A), a left module over the opposite algebra
        return dual(free_module(a, 1))
    if side == InjectiveSide.RIGHT:
        # D(_(A^op) A), a left A-module
        return dual(free_module(opposite(a), 1))
    raise ValueError(f'invalid side: {side!r}')


def injective_dimension(
    a: AlgebraPresentation,
    cutoff: int,
    seed: int = 0,
    side: str = InjectiveSide.LEFT,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> PdReport:
    _check_local(a, 'injective dimension via duality requires a local algebra')
    return projective_dimension(
        get_dual_of_regular_module(a, side), cutoff, seed=seed, options=options
    )


def injective_dimension_report(
    a: AlgebraPresentation,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> InjectiveDimensionReport:
    left = injective_dimension(a, cutoff, seed=seed, side=InjectiveSide.LEFT, options=options)
    right = injective_dimension(a, cutoff, seed=seed, side=InjectiveSide.RIGHT, options=options)
    certificate = is_isomorphic(
        get_dual_of_regular_module(a, InjectiveSide.RIGHT),
        free_module(a, 1),
        seed=seed,
        trials=options.trials
    )
    LOGGER.info(
        'id(%r): left=%s/%r, right=%s/%r, D(A) ≅ A certified=%r',
        a.name, left.status.value, left.value, right.status.value, right.value,
        certificate is not None
    )
    return InjectiveDimensionReport(
        algebra=a, left=left, right=right, self_injective_certificate=certificate
    )


def _compare_report_with_pd(ext_report: ExtDegreeReport, pd_report: PdReport) -> Optional[bool]:
    if ext_report.is_certified_finite and pd_report.is_finite:
        return ext_report.value == pd_report.value
    if ext_report.is_infinite and pd_report.is_infinite:
        return True
    if (ext_report.is_certified_finite and pd_report.is_infinite) or (
        ext_report.is_infinite and pd_report.is_finite
    ):
        return False
    return None


def _compare_pd_reports_at_most(smaller: PdReport, larger: PdReport) -> Optional[bool]:
    if larger.is_infinite:
        return True
    if smaller.is_finite and larger.is_finite:
        assert smaller.value is not None and larger.value is not None
        return smaller.value <= larger.value
    if smaller.is_infinite and larger.is_finite:
        return False
    return None


def gorenstein_symmetry_check(
    a: AlgebraPresentation,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> GorensteinSymmetryReport:
    _check_local(a, 'Gorenstein symmetry check requires a local algebra')
    ext_report = ext_with_ring_degree(
        get_dual_of_regular_module(a, InjectiveSide.RIGHT), cutoff, seed=seed, options=options
    )
    id_left = injective_dimension(a, cutoff, seed=seed, side=InjectiveSide.LEFT, options=options)
    id_right = injective_dimension(
        a, cutoff, seed=seed, side=InjectiveSide.RIGHT, options=options
    )
    right_equality_holds: Optional[bool] = None
    if id_left.is_finite:
        right_equality_holds = _compare_report_with_pd(ext_report, id_left)
    return GorensteinSymmetryReport(
        algebra=a,
        ext_report=ext_report,
        id_left=id_left,
        id_right=id_right,
        equality_holds=_compare_report_with_pd(ext_report, id_right),
        inequality_holds=_compare_pd_reports_at_most(id_right, id_left),
        right_equality_holds=right_equality_holds
    )


def duality_symmetry_check(m: ModuleRep, cutoff: int) -> DualitySymmetryReport:
    dual_module = dual(m)
    return DualitySymmetryReport(
        module=m,
        dims=ext_dims(m, m, cutoff).dims,
        dual_dims=ext_dims(dual_module, dual_module, cutoff).dims
    )


def auslander_bound_probe(
    m: ModuleRep,
    family: Sequence[ModuleRep],
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> AuslanderBoundProbe:
    """
    Library-level probe, not run by audit_module or the command line: the largest certified
    vanishing bound of Ext(M, N) over the given family.
    """
    certificate = certify_resolution(get_resolution(m), cutoff, seed=seed, options=options)
    eventually_vanishing: List[BoundMember] = []
    uncertified: List[BoundMember] = []
    non_vanishing: List[str] = []
    for n in family:
        check_same_algebra(m, n)
        dims = ext_dims(m, n, cutoff).dims
        tail = get_tail_verdict(dims, certificate)
        if tail.is_certified_finite:
            assert tail.value is not None
            eventually_vanishing.append(BoundMember(n.name, tail.value))
        elif tail.is_infinite:
            non_vanishing.append(n.name)
        elif tail.value is not None and tail.value < cutoff:
            uncertified.append(BoundMember(n.name, tail.value))
        else:
            non_vanishing.append(n.name)
    return AuslanderBoundProbe(
        module=m,
        test_family=tuple(n.name for n in family),
        cutoff=cutoff,
        b_m_relative=max((member.bound for member in eventually_vanishing), default=0),
        eventually_vanishing_members=tuple(eventually_vanishing),
        uncertified_members=tuple(uncertified),
        non_vanishing_members=tuple(non_vanishing)
    )


def syzygy_sum_check(
    m: ModuleRep,
    n: int,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> SyzygySumCheck:
    """
    Compares ext.deg(M ⊕ Ω^n M) with ext.deg(M) + n + d, where Ext^i(M, A) = 0 for i > d.
    Equality is expected when d = 0 and M is not projective.

    Library-level check, not run by audit_module or the command line. Both verdicts stay None
    unless ext.deg(M) is certified finite and d is certified.
    """
    cm_report = cm_status(m, cutoff, seed=seed, options=options)
    d = cm_report.vanishing_bound if cm_report.certified else None
    base = self_ext_degree(m, cutoff, seed=seed, options=options)
    summed_module = direct_sum(m, syzygy(m, n))
    sum_last_nonzero = get_last_nonzero(ext_dims(summed_module, summed_module, cutoff).dims)
    pd_report = projective_dimension(m, cutoff, seed=seed, options=options)
    equality_expected = d == 0 and not (pd_report.is_finite and pd_report.value == 0)
    bound_holds: Optional[bool] = None
    equality_holds: Optional[bool] = None
    if d is not None and base.is_certified_finite:
        assert base.value is not None
        expected_bound = base.value + n + d
        observed = sum_last_nonzero if sum_last_nonzero is not None else 0
        if observed > expected_bound:
            bound_holds = False
        elif expected_bound <= cutoff:
            bound_holds = True
        if equality_expected and expected_bound <= cutoff:
            equality_holds = observed == expected_bound
    return SyzygySumCheck(
        module=m,
        n=n,
        d=d,
        base_last_nonzero=base.last_nonzero,
        sum_last_nonzero=sum_last_nonzero,
        bound_holds=bound_holds,
        equality_expected=equality_expected,
        equality_holds=equality_holds
    )


def first_argument_shift_failures(
    m: ModuleRep,
    n: ModuleRep,
    cutoff: int,
    max_shift: Optional[int] = None
) -> List[ShiftFailure]:
    # Ext^j(M, N) = Ext^(j - s)(Ω^s M, N) for 1 <= s < j
    base = ext_dims(m, n, cutoff).dims
    failures = []
    for shift in range(1, (max_shift if max_shift is not None else cutoff - 1) + 1):
        shifted = ext_dims(syzygy(m, shift), n, cutoff - shift).dims
        for degree in range(shift + 1, cutoff + 1):
            if base[degree] != shifted[degree - shift]:
                failures.append(ShiftFailure(
                    degree, shift, 0, base[degree], shifted[degree - shift]
                ))
    return failures


def two_sided_shift_failures(  # pylint: disable=too-many-arguments
    m: ModuleRep,
    n: ModuleRep,
    d: int,
    cutoff: int,
    max_first_shift: int,
    max_second_shift: int
) -> List[ShiftFailure]:
    # valid when Ext^i(M, A) = 0 for i > d, for degrees with d < min(j, j - s + t)
    base = ext_dims(m, n, cutoff).dims
    failures = []
    for first_shift in range(0, max_first_shift + 1):
        for second_shift in range(0, max_second_shift + 1):
            shifted = ext_dims(
                syzygy(m, first_shift), syzygy(n, second_shift), cutoff + second_shift
            ).dims
            for degree in range(0, cutoff + 1):
                shifted_degree = degree - first_shift + second_shift
                if d >= min(degree, shifted_degree):
                    continue
                if base[degree] != shifted[shifted_degree]:
                    failures.append(ShiftFailure(
                        degree, first_shift, second_shift,
                        base[degree], shifted[shifted_degree]
                    ))
    return failures


def resolution_independence_failures(
    m: ModuleRep,
    n: ModuleRep,
    cutoff: int,
    pad_step: int
) -> List[int]:
    minimal_dims = ext_dims(m, n, cutoff).dims
    padded_dims = ext_dims(m, n, cutoff, resolution=get_resolution(m, pad_step=pad_step)).dims
    return [
        degree
        for degree, (expected, observed) in enumerate(zip(minimal_dims, padded_dims))
        if expected != observed
    ]


def _get_ext_degree_chain_holds(
    ext_report: ExtDegreeReport,
    ext_with_ring_report: ExtDegreeReport,
    pd_report: PdReport
) -> Optional[bool]:
    if not pd_report.is_finite:
        return None
    if not (ext_report.is_certified_finite and ext_with_ring_report.is_certified_finite):
        return None
    return ext_report.value == ext_with_ring_report.value == pd_report.value


def audit_module(
    m: ModuleRep,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> ModuleAuditReport:
    LOGGER.info('auditing module %r (cutoff=%d, seed=%d)', m.name, cutoff, seed)
    ext_report = self_ext_degree(m, cutoff, seed=seed, options=options)
    garc = garc_check(m, cutoff, seed=seed, options=options)
    return ModuleAuditReport(
        module=m,
        cutoff=cutoff,
        ext_report=ext_report,
        ext_with_ring_report=garc.n_star,
        pd_report=garc.pd_report,
        cm_report=cm_status(m, cutoff, seed=seed, options=options),
        garc=garc,
        arc=arc_check(m, cutoff, seed=seed, options=options),
        duality=duality_symmetry_check(m, min(cutoff, options.window)),
        ext_degree_chain_holds=_get_ext_degree_chain_holds(ext_report, garc.n_star, garc.pd_report)
    )

import dataclasses
import logging
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence, Tuple

from extdeg_labs.linalg.matrix import Mat, linear_combination
from extdeg_labs.linalg.reduction import cohomology_dim
from extdeg_labs.models.module import (
    ModuleRep,
    check_same_algebra,
    direct_sum,
    free_module
)
from extdeg_labs.models.resolution import (
    DEFAULT_CERTIFICATION_OPTIONS,
    CertificationOptions,
    CutoffOnly,
    FinitePd,
    PeriodicityCertificate,
    Resolution,
    ResolutionCertificate,
    certify_resolution,
    get_resolution
)
from extdeg_labs.utils.cache import InMemoryKeyedObjectCache


LOGGER = logging.getLogger(__name__)


ZERO_MODULE_NOTE = 'zero module'


class ExtDegreeStatus(str, Enum):
    EXACT = 'Exact'
    LOWER_BOUND = 'LowerBound'


class ExtProfile(NamedTuple):
    source: ModuleRep
    target: ModuleRep
    dims: Tuple[int, ...]

    @property
    def cutoff(self) -> int:
        return len(self.dims) - 1


class TailVerdict(NamedTuple):
    last_nonzero: Optional[int]
    status: ExtDegreeStatus
    # None together with EXACT means infinite
    value: Optional[int]

    @property
    def is_certified(self) -> bool:
        return self.status == ExtDegreeStatus.EXACT

    @property
    def is_infinite(self) -> bool:
        return self.is_certified and self.value is None

    @property
    def is_certified_finite(self) -> bool:
        return self.is_certified and self.value is not None


@dataclasses.dataclass(frozen=True)
class ExtDegreeReport:
    module: ModuleRep
    cutoff: int
    dims: Tuple[int, ...]
    last_nonzero: Optional[int]
    status: ExtDegreeStatus
    value: Optional[int]
    certificate: ResolutionCertificate
    note: Optional[str] = None

    @property
    def is_certified(self) -> bool:
        return self.status == ExtDegreeStatus.EXACT

    @property
    def is_infinite(self) -> bool:
        return self.is_certified and self.value is None

    @property
    def is_certified_finite(self) -> bool:
        return self.is_certified and self.value is not None


@dataclasses.dataclass(frozen=True)
class CMReport:
    module: ModuleRep
    cutoff: int
    dims: Tuple[int, ...]
    vanishing_bound: Optional[int]
    certified: bool
    in_cm: Optional[bool]
    certificate: ResolutionCertificate


def get_last_nonzero(dims: Sequence[int]) -> Optional[int]:
    for index in range(len(dims) - 1, -1, -1):
        if dims[index]:
            return index
    return None


def get_tail_verdict(
    dims: Sequence[int],
    certificate: ResolutionCertificate
) -> TailVerdict:
    """
    Turns an observed Ext profile (degrees 0..cutoff) into a certified or lower-bound verdict.

    A terminated resolution makes every degree above its length vanish. A periodicity
    certificate (s, p) makes degrees above s repeat with period p, so one full period of
    observed degrees above s decides the tail.
    """
    cutoff = len(dims) - 1
    last_nonzero = get_last_nonzero(dims)
    observed_value = last_nonzero if last_nonzero is not None else 0
    if isinstance(certificate, FinitePd) and certificate.n <= cutoff:
        return TailVerdict(last_nonzero, ExtDegreeStatus.EXACT, observed_value)
    if isinstance(certificate, PeriodicityCertificate) and (
        cutoff - certificate.period >= certificate.start
    ):
        if any(dims[cutoff - certificate.period + 1:]):
            return TailVerdict(last_nonzero, ExtDegreeStatus.EXACT, None)
        return TailVerdict(last_nonzero, ExtDegreeStatus.EXACT, observed_value)
    return TailVerdict(last_nonzero, ExtDegreeStatus.LOWER_BOUND, observed_value)


def hom_differential(r: Resolution, n: ModuleRep, i: int) -> Mat:
    """
    Coboundary Hom(F_i, N) -> Hom(F_(i+1), N), with Hom(F_i, N) identified with N^(b_i)
    through the images of the free generators.
    """
    a = r.module.algebra
    source_rank = r.get_rank(i)
    target_rank = r.get_rank(i + 1)
    rows = target_rank * n.dim
    cols = source_rank * n.dim
    if rows == 0 or cols == 0:
        return Mat.zeros(n.field, rows, cols)
    differential = r.get_differential(i + 1)
    entries = [[n.field.zero] * cols for _ in range(rows)]
    for j in range(target_rank):
        generator_column = j * a.dim + a.unit_index
        for l in range(source_rank):
            block = linear_combination(
                n.field, n.dim, n.dim,
                [differential.entries[l * a.dim + k][generator_column] for k in range(a.dim)],
                list(n.action)
            )
            for row in range(n.dim):
                entries[j * n.dim + row][l * n.dim:(l + 1) * n.dim] = block.entries[row]
    return Mat(n.field, rows, cols, tuple(tuple(row) for row in entries))


class ExtDimsKey(NamedTuple):
    resolution: Resolution
    target: ModuleRep


EXT_DIMS_CACHE_MAX_SIZE = 4096

EXT_DIMS_CACHE = InMemoryKeyedObjectCache[ExtDimsKey, Tuple[int, ...]](
    max_size=EXT_DIMS_CACHE_MAX_SIZE
)


def _compute_ext_dims(r: Resolution, n: ModuleRep, cutoff: int) -> Tuple[int, ...]:
    r.extend(cutoff + 1)
    previous = Mat.zeros(n.field, r.get_rank(0) * n.dim, 0)
    dims: List[int] = []
    for i in range(cutoff + 1):
        current = hom_differential(r, n, i)
        dims.append(cohomology_dim(previous, current))
        previous = current
    return tuple(dims)


def ext_dims(
    m: ModuleRep,
    n: ModuleRep,
    cutoff: int,
    resolution: Optional[Resolution] = None
) -> ExtProfile:
    check_same_algebra(m, n)
    r = resolution if resolution is not None else get_resolution(m)
    key = ExtDimsKey(resolution=r, target=n)
    # Ext^i does not depend on the cutoff, so a longer cached profile serves as a prefix
    dims = EXT_DIMS_CACHE.get_or_load(key, lambda: _compute_ext_dims(r, n, cutoff))
    if len(dims) <= cutoff:
        dims = EXT_DIMS_CACHE.get_or_load(
            key, lambda: _compute_ext_dims(r, n, cutoff), reload=True
        )
    dims = dims[:cutoff + 1]
    LOGGER.debug('Ext(%r, %r) up to %d: %r', m.name, n.name, cutoff, dims)
    return ExtProfile(source=m, target=n, dims=dims)


def get_ext_degree_report(
    m: ModuleRep,
    profile: ExtProfile,
    certificate: ResolutionCertificate
) -> ExtDegreeReport:
    if m.is_zero:
        return ExtDegreeReport(
            module=m,
            cutoff=profile.cutoff,
            dims=profile.dims,
            last_nonzero=None,
            status=ExtDegreeStatus.EXACT,
            value=0,
            certificate=FinitePd(0),
            note=ZERO_MODULE_NOTE
        )
    verdict = get_tail_verdict(profile.dims, certificate)
    return ExtDegreeReport(
        module=m,
        cutoff=profile.cutoff,
        dims=profile.dims,
        last_nonzero=verdict.last_nonzero,
        status=verdict.status,
        value=verdict.value,
        certificate=certificate if verdict.is_certified else CutoffOnly()
    )


def self_ext_degree(
    m: ModuleRep,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> ExtDegreeReport:
    profile = ext_dims(m, m, cutoff)
    certificate = certify_resolution(get_resolution(m), cutoff, seed=seed, options=options)
    report = get_ext_degree_report(m, profile, certificate)
    LOGGER.info(
        'ext.deg(%r): status=%s, value=%r, certificate=%s',
        m.name, report.status.value, report.value, report.certificate.name
    )
    return report


def ext_with_ring_degree(
    m: ModuleRep,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> ExtDegreeReport:
    return self_ext_degree(
        direct_sum(m, free_module(m.algebra, 1)), cutoff, seed=seed, options=options
    )


def cm_status(
    m: ModuleRep,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> CMReport:
    profile = ext_dims(m, free_module(m.algebra, 1), cutoff)
    certificate = certify_resolution(get_resolution(m), cutoff, seed=seed, options=options)
    higher_dims = (0,) + profile.dims[1:]
    verdict = get_tail_verdict(higher_dims, certificate)
    if verdict.is_infinite:
        vanishing_bound = None
    else:
        vanishing_bound = verdict.value
    if any(higher_dims):
        in_cm: Optional[bool] = False
    elif verdict.is_certified:
        in_cm = True
    else:
        in_cm = None
    return CMReport(
        module=m,
        cutoff=cutoff,
        dims=profile.dims,
        vanishing_bound=vanishing_bound,
        certified=verdict.is_certified,
        in_cm=in_cm,
        certificate=certificate if verdict.is_certified else CutoffOnly()
    )

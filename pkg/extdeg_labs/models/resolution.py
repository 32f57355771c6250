import dataclasses
import logging
from threading import Lock
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from extdeg_labs.linalg.matrix import Mat, hstack
from extdeg_labs.linalg.reduction import (
    column_space_complement,
    nullspace_matrix,
    rank
)
from extdeg_labs.models.algebra import NonLocalAlgebraError, is_local_algebra
from extdeg_labs.models.module import (
    IsoCertificate,
    ModuleRep,
    free_module,
    is_isomorphic,
    submodule,
    zero_module
)
from extdeg_labs.utils.cache import InMemoryKeyedObjectCache


LOGGER = logging.getLogger(__name__)


class CertificationOptions(NamedTuple):
    window: int = 10
    trials: int = 20


DEFAULT_CERTIFICATION_OPTIONS = CertificationOptions()


class FreeCover(NamedTuple):
    free: ModuleRep
    cover: Mat
    generators: Mat


class ResolutionStep(NamedTuple):
    target: ModuleRep
    rank: int
    generators: Mat
    cover: Mat
    kernel_basis: Mat
    syzygy: ModuleRep


@dataclasses.dataclass(frozen=True)
class FinitePd:
    n: int
    name: str = dataclasses.field(default='FinitePd', init=False)


@dataclasses.dataclass(frozen=True)
class PeriodicityCertificate:
    start: int
    period: int
    iso: Optional[IsoCertificate] = dataclasses.field(default=None, compare=False, repr=False)
    name: str = dataclasses.field(default='Periodicity', init=False)


@dataclasses.dataclass(frozen=True)
class CutoffOnly:
    name: str = dataclasses.field(default='CutoffOnly', init=False)


ResolutionCertificate = Union[FinitePd, PeriodicityCertificate, CutoffOnly]


def _get_top_generators(m: ModuleRep) -> Mat:
    a = m.algebra
    radical_image = hstack(m.field, m.dim, [
        m.action[r] for r in a.radical_indices
    ])
    return Mat.unit_vectors(m.field, m.dim, column_space_complement(radical_image))


def get_cover_for_generators(m: ModuleRep, generators: Mat) -> FreeCover:
    # column l * dim(A) + k is e_k applied to the l-th generator
    free = free_module(m.algebra, generators.cols)
    cover = hstack(m.field, m.dim, [
        action @ generators.select_columns([generator_index])
        for generator_index in range(generators.cols)
        for action in m.action
    ])
    return FreeCover(free=free, cover=cover, generators=generators)


def minimal_cover(m: ModuleRep) -> FreeCover:
    if not is_local_algebra(m.algebra):
        raise NonLocalAlgebraError(
            m.algebra.name, 'minimal covers certified only for local algebras'
        )
    return get_cover_for_generators(m, _get_top_generators(m))


def _get_padded_generators(generators: Mat) -> Mat:
    if generators.cols == 0:
        return Mat.zeros(generators.field, generators.rows, 1)
    return hstack(generators.field, generators.rows, [
        generators, generators.select_columns([0])
    ])


class Resolution:
    def __init__(self, module: ModuleRep, pad_step: Optional[int] = None):
        self.module = module
        self.pad_step = pad_step
        self.is_local = is_local_algebra(module.algebra)
        self.minimal = self.is_local and pad_step is None
        self.steps: List[ResolutionStep] = []
        self._lock = Lock()

    def __repr__(self) -> str:
        return '%s(module=%r, steps=%d, minimal=%r)' % (
            type(self).__name__, self.module.name, len(self.steps), self.minimal
        )

    @property
    def betti(self) -> Sequence[int]:
        return [step.rank for step in self.steps]

    @property
    def syzygies(self) -> Sequence[ModuleRep]:
        return [step.syzygy for step in self.steps]

    @property
    def covers(self) -> Sequence[Tuple[int, Mat]]:
        return [(step.rank, step.cover) for step in self.steps]

    @property
    def is_terminated(self) -> bool:
        return bool(self.steps) and self.steps[-1].syzygy.is_zero

    def _get_generators(self, target: ModuleRep, step_index: int) -> Mat:
        if self.is_local:
            generators = minimal_cover(target).generators
        else:
            generators = Mat.identity(target.field, target.dim)
        if step_index == self.pad_step:
            generators = _get_padded_generators(generators)
        return generators

    def _compute_step(self, step_index: int) -> ResolutionStep:
        target = self.module if step_index == 0 else self.steps[-1].syzygy
        free_cover = get_cover_for_generators(
            target, self._get_generators(target, step_index)
        )
        kernel_basis = nullspace_matrix(free_cover.cover)
        syzygy = submodule(
            free_cover.free,
            kernel_basis,
            name=f'Ω^{step_index + 1}({self.module.name})'
        )
        LOGGER.debug(
            'resolution step %d of %r: rank=%d, syzygy dim=%d',
            step_index, self.module.name, free_cover.generators.cols, syzygy.dim
        )
        return ResolutionStep(
            target=target,
            rank=free_cover.generators.cols,
            generators=free_cover.generators,
            cover=free_cover.cover,
            kernel_basis=kernel_basis,
            syzygy=syzygy
        )

    def extend(self, upto: int) -> 'Resolution':
        with self._lock:
            while len(self.steps) <= upto and not self.is_terminated:
                self.steps.append(self._compute_step(len(self.steps)))
        return self

    def get_rank(self, step_index: int) -> int:
        if step_index < len(self.steps):
            return self.steps[step_index].rank
        if self.is_terminated:
            return 0
        self.extend(step_index)
        return self.get_rank(step_index)

    def get_syzygy(self, n: int) -> ModuleRep:
        if n == 0:
            return self.module
        self.extend(n - 1)
        if n - 1 < len(self.steps):
            return self.steps[n - 1].syzygy
        return zero_module(self.module.algebra)

    def get_differential(self, i: int) -> Mat:
        """
        Matrix of d_i: F_i -> F_(i-1) in free-module coordinates (i >= 1).
        """
        a = self.module.algebra
        rows = self.get_rank(i - 1) * a.dim
        cols = self.get_rank(i) * a.dim
        if rows == 0 or cols == 0:
            return Mat.zeros(a.field, rows, cols)
        return self.steps[i - 1].kernel_basis @ self.steps[i].cover


def extend_resolution(r: Resolution, upto: int) -> Resolution:
    return r.extend(upto)


def syzygy(m: ModuleRep, n: int) -> ModuleRep:
    if n == 0:
        return m
    r = get_resolution(m)
    if not r.is_local:
        raise NonLocalAlgebraError(
            m.algebra.name, 'minimal covers certified only for local algebras'
        )
    return r.get_syzygy(n)


def detect_termination(r: Resolution) -> Optional[int]:
    for step_index, step in enumerate(r.steps):
        if step.syzygy.is_zero:
            return step_index
    return None


def _iter_periodicity_candidates(window: int):
    for total in range(1, window + 1):
        for start in range(0, total):
            yield start, total - start


def detect_periodicity(
    r: Resolution,
    window: int,
    seed: int = 0,
    trials: int = DEFAULT_CERTIFICATION_OPTIONS.trials
) -> Optional[PeriodicityCertificate]:
    r.extend(window)
    for start, period in _iter_periodicity_candidates(window):
        first = r.get_syzygy(start)
        second = r.get_syzygy(start + period)
        if first.is_zero or first.dim != second.dim:
            continue
        if r.get_rank(start) != r.get_rank(start + period):
            continue
        iso = is_isomorphic(first, second, seed=seed, trials=trials)
        if iso is not None:
            LOGGER.info(
                'periodicity certified for %r: start=%d, period=%d',
                r.module.name, start, period
            )
            return PeriodicityCertificate(start=start, period=period, iso=iso)
    LOGGER.debug('no periodicity found for %r within window %d', r.module.name, window)
    return None


def is_minimal_differential(r: Resolution, i: int) -> bool:
    # every unit-component coefficient of the images of free generators vanishes
    a = r.module.algebra
    differential = r.get_differential(i)
    return all(
        differential.entries[l * a.dim + a.unit_index][j * a.dim + a.unit_index] == 0
        for l in range(r.get_rank(i - 1))
        for j in range(r.get_rank(i))
    )


def is_exact_at(r: Resolution, i: int) -> bool:
    # rank(d_(i+1)) = dim ker(d_i), with d_0 the augmentation onto the module
    current = r.steps[0].cover if i == 0 else r.get_differential(i)
    return rank(r.get_differential(i + 1)) == current.cols - rank(current)


RESOLUTION_CACHE_MAX_SIZE = 512
CERTIFICATE_CACHE_MAX_SIZE = 2048


class ResolutionKey(NamedTuple):
    module: ModuleRep
    # module equality ignores the name, which syzygy names are built from
    name: str
    pad_step: Optional[int]


class CertificateKey(NamedTuple):
    resolution: Resolution
    cutoff: int
    seed: int
    options: CertificationOptions


RESOLUTION_CACHE = InMemoryKeyedObjectCache[ResolutionKey, Resolution](
    max_size=RESOLUTION_CACHE_MAX_SIZE
)

CERTIFICATE_CACHE = InMemoryKeyedObjectCache[CertificateKey, ResolutionCertificate](
    max_size=CERTIFICATE_CACHE_MAX_SIZE
)


def get_resolution(m: ModuleRep, pad_step: Optional[int] = None) -> Resolution:
    return RESOLUTION_CACHE.get_or_load(
        ResolutionKey(module=m, name=m.name, pad_step=pad_step),
        load_fn=lambda: Resolution(m, pad_step=pad_step)
    )


def certify_resolution(
    r: Resolution,
    cutoff: int,
    seed: int = 0,
    options: CertificationOptions = DEFAULT_CERTIFICATION_OPTIONS
) -> ResolutionCertificate:
    return CERTIFICATE_CACHE.get_or_load(
        CertificateKey(resolution=r, cutoff=cutoff, seed=seed, options=options),
        load_fn=lambda: _compute_certificate(r, cutoff, seed, options)
    )


def _compute_certificate(
    r: Resolution,
    cutoff: int,
    seed: int,
    options: CertificationOptions
) -> ResolutionCertificate:
    r.extend(cutoff + 1)
    if not r.minimal:
        return CutoffOnly()
    termination = detect_termination(r)
    if termination is not None:
        return FinitePd(termination)
    periodicity = detect_periodicity(
        r, window=options.window, seed=seed, trials=options.trials
    )
    if periodicity is not None:
        return periodicity
    return CutoffOnly()

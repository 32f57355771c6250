from typing import Any, Dict, List, Optional, Sequence

from extdeg_labs.aggregators.audit import (
    ArcVerdict,
    DualitySymmetryReport,
    GarcVerdict,
    GorensteinSymmetryReport,
    InjectiveDimensionReport,
    ModuleAuditReport,
    PdReport
)
from extdeg_labs.aggregators.family import FamilyAuditReport
from extdeg_labs.aggregators.fixture_suite import FixtureSuiteReport
from extdeg_labs.models.algebra import AlgebraPresentation, ValidationReport
from extdeg_labs.models.ext import CMReport, ExtDegreeReport, ExtProfile
from extdeg_labs.models.module import ModuleRep
from extdeg_labs.models.resolution import (
    FinitePd,
    PeriodicityCertificate,
    Resolution,
    ResolutionCertificate
)


INFINITE_TEXT = '∞'
INFINITE_JSON_VALUE = 'infinite'


def certificate_to_json(certificate: ResolutionCertificate) -> Dict[str, Any]:
    if isinstance(certificate, FinitePd):
        return {'name': certificate.name, 'n': certificate.n}
    if isinstance(certificate, PeriodicityCertificate):
        return {
            'name': certificate.name,
            'start': certificate.start,
            'period': certificate.period
        }
    return {'name': certificate.name}


def format_certificate(certificate: ResolutionCertificate) -> str:
    if isinstance(certificate, FinitePd):
        return f'FinitePd({certificate.n})'
    if isinstance(certificate, PeriodicityCertificate):
        return f'Periodicity({certificate.start},{certificate.period})'
    return certificate.name


def _get_optional_bool_text(value: Optional[bool]) -> str:
    if value is None:
        return 'undecided'
    return 'yes' if value else 'no'


def ext_profile_to_json(profile: ExtProfile) -> Dict[str, Any]:
    return {
        'source': profile.source.name,
        'target': profile.target.name,
        'cutoff': profile.cutoff,
        'dims': list(profile.dims)
    }


def render_ext_profile_text(profile: ExtProfile) -> str:
    lines = [f'Ext^i({profile.source.name}, {profile.target.name}), i = 0..{profile.cutoff}']
    lines.extend(f'  {degree:>3}  {dim}' for degree, dim in enumerate(profile.dims))
    return '\n'.join(lines)


def ext_degree_report_to_json(report: ExtDegreeReport) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        'module': report.module.name,
        'cutoff': report.cutoff,
        'dims': list(report.dims),
        'last_nonzero': report.last_nonzero,
        'status': report.status.value,
        'certificate': report.certificate.name,
        'certificate_detail': certificate_to_json(report.certificate),
        'note': report.note
    }
    if not report.is_certified:
        result['bound'] = report.value
    elif report.value is None:
        result['value'] = INFINITE_JSON_VALUE
    else:
        result['value'] = report.value
    return result


def format_ext_degree_value(report: ExtDegreeReport) -> str:
    if not report.is_certified:
        return f'≥ {report.value}'
    if report.value is None:
        return f'= {INFINITE_TEXT}'
    return f'= {report.value}'


def render_ext_degree_report_text(report: ExtDegreeReport, label: str = 'ext.deg') -> str:
    text = (
        f'{label}({report.module.name}) {format_ext_degree_value(report)}'
        f' [{format_certificate(report.certificate)}, cutoff {report.cutoff}]'
    )
    if report.note:
        text += f' ({report.note})'
    return text


def pd_report_to_json(report: PdReport) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        'module': report.module.name,
        'cutoff': report.cutoff,
        'status': report.status.value,
        'method': report.method.value,
        'value': report.value,
        'consistency_failure': report.consistency_failure
    }
    if report.ring_ext_crosscheck is not None:
        result['ring_ext_crosscheck'] = {
            'sup_index': report.ring_ext_crosscheck.sup_index,
            'agrees': report.ring_ext_crosscheck.agrees,
            'dims': list(report.ring_ext_crosscheck.dims)
        }
    return result


def format_pd_value(report: PdReport) -> str:
    if report.is_finite:
        return f'= {report.value}'
    if report.is_infinite:
        return f'= {INFINITE_TEXT}'
    return 'unknown'


def render_pd_report_text(report: PdReport, label: str = 'pd') -> str:
    text = (
        f'{label}({report.module.name}) {format_pd_value(report)}'
        f' [{report.method.value}, cutoff {report.cutoff}]'
    )
    if report.ring_ext_crosscheck is not None:
        text += (
            f'; Ext(M, A) sup index {report.ring_ext_crosscheck.sup_index},'
            f' agrees: {_get_optional_bool_text(report.ring_ext_crosscheck.agrees)}'
        )
    return text


def resolution_to_json(r: Resolution, certificate: ResolutionCertificate) -> Dict[str, Any]:
    return {
        'module': r.module.name,
        'minimal': r.minimal,
        'betti': list(r.betti),
        'syzygy_dims': [syzygy.dim for syzygy in r.syzygies],
        'terminated': r.is_terminated,
        'certificate': certificate_to_json(certificate)
    }


def render_resolution_text(r: Resolution, certificate: ResolutionCertificate) -> str:
    lines = [
        f'resolution of {r.module.name} (minimal: {_get_optional_bool_text(r.minimal)})',
        '  step  betti  syzygy dim'
    ]
    lines.extend(
        f'  {step_index:>4}  {step.rank:>5}  {step.syzygy.dim:>10}'
        for step_index, step in enumerate(r.steps)
    )
    if r.is_terminated:
        lines.append(f'terminated: pd = {len(r.steps) - 1}')
    lines.append(f'certificate: {format_certificate(certificate)}')
    return '\n'.join(lines)


def cm_report_to_json(report: CMReport) -> Dict[str, Any]:
    return {
        'module': report.module.name,
        'cutoff': report.cutoff,
        'dims': list(report.dims),
        'vanishing_bound': report.vanishing_bound,
        'certified': report.certified,
        'in_cm': report.in_cm,
        'certificate': report.certificate.name
    }


def render_cm_report_text(report: CMReport) -> str:
    bound_text = (
        str(report.vanishing_bound) if report.vanishing_bound is not None else INFINITE_TEXT
    )
    return (
        f'CM({report.module.name}): d = {bound_text}'
        f' ({"certified" if report.certified else "observed"}),'
        f' in CM: {_get_optional_bool_text(report.in_cm)}'
    )


def garc_verdict_to_json(verdict: GarcVerdict) -> Dict[str, Any]:
    return {
        'module': verdict.module.name,
        'verdict': verdict.verdict.value,
        'n_star': ext_degree_report_to_json(verdict.n_star),
        'pd': pd_report_to_json(verdict.pd_report),
        'theorem_equality': verdict.theorem_equality,
        'failure_candidate': verdict.failure_candidate,
        'consistency_failure': verdict.consistency_failure
    }


def render_garc_verdict_text(verdict: GarcVerdict) -> str:
    lines = [
        f'GARC({verdict.module.name}): {verdict.verdict.value}',
        '  ' + render_ext_degree_report_text(verdict.n_star, label='ext.deg(M ⊕ A)'),
        '  ' + render_pd_report_text(verdict.pd_report)
    ]
    if verdict.theorem_equality:
        lines.append('  pd(M) = ext.deg(M ⊕ A)')
    if verdict.failure_candidate:
        lines.append('  flagged: GARC failure candidate (finite observation, no pd termination)')
    return '\n'.join(lines)


def arc_verdict_to_json(verdict: ArcVerdict) -> Dict[str, Any]:
    return {
        'module': verdict.module.name,
        'verdict': verdict.verdict.value,
        'dims': list(verdict.dims),
        'tail_certified': verdict.tail.is_certified,
        'pd': pd_report_to_json(verdict.pd_report),
        'failure_candidate': verdict.failure_candidate
    }


def render_arc_verdict_text(verdict: ArcVerdict) -> str:
    lines = [
        f'ARC({verdict.module.name}): {verdict.verdict.value}',
        f'  Ext^i(M, M ⊕ A): {list(verdict.dims)}',
        '  ' + render_pd_report_text(verdict.pd_report)
    ]
    if verdict.failure_candidate:
        lines.append('  flagged: ARC failure candidate (observed vanishing, no pd termination)')
    return '\n'.join(lines)


def injective_dimension_report_to_json(report: InjectiveDimensionReport) -> Dict[str, Any]:
    return {
        'algebra': report.algebra.name,
        'left': pd_report_to_json(report.left),
        'right': pd_report_to_json(report.right),
        'self_injective': report.is_self_injective,
        'dual_isomorphic_to_regular': report.self_injective_certificate is not None
    }


def gorenstein_symmetry_report_to_json(report: GorensteinSymmetryReport) -> Dict[str, Any]:
    return {
        'algebra': report.algebra.name,
        'ext_degree_of_dual_plus_ring': ext_degree_report_to_json(report.ext_report),
        'id_left': pd_report_to_json(report.id_left),
        'id_right': pd_report_to_json(report.id_right),
        'equality_holds': report.equality_holds,
        'inequality_holds': report.inequality_holds,
        'right_equality_holds': report.right_equality_holds
    }


def render_injective_dimension_text(
    report: InjectiveDimensionReport,
    symmetry: GorensteinSymmetryReport
) -> str:
    lines = [
        f'injective dimension of {report.algebra.name}',
        '  ' + render_pd_report_text(report.left, label='id_A(A) = pd'),
        '  ' + render_pd_report_text(report.right, label='id_(A^op)(A) = pd'),
        f'  self-injective: {_get_optional_bool_text(report.is_self_injective)}'
        f' (D(A) ≅ A certified: '
        f'{_get_optional_bool_text(report.self_injective_certificate is not None)})',
        '  ' + render_ext_degree_report_text(symmetry.ext_report, label='ext.deg'),
        f'  id_(A^op)(A) = ext.deg(D(A) ⊕ A): '
        f'{_get_optional_bool_text(symmetry.equality_holds)}',
        f'  id_(A^op)(A) <= id_A(A): {_get_optional_bool_text(symmetry.inequality_holds)}'
    ]
    return '\n'.join(lines)


def duality_report_to_json(report: DualitySymmetryReport) -> Dict[str, Any]:
    return {
        'module': report.module.name,
        'dims': list(report.dims),
        'dual_dims': list(report.dual_dims),
        'agrees': report.agrees
    }


def render_duality_report_text(report: DualitySymmetryReport) -> str:
    return '\n'.join([
        f'Ext^i({report.module.name}, {report.module.name}): {list(report.dims)}',
        f'Ext^i over the opposite algebra of the dual: {list(report.dual_dims)}',
        f'agrees: {_get_optional_bool_text(report.agrees)}'
    ])


def module_audit_to_json(report: ModuleAuditReport) -> Dict[str, Any]:
    return {
        'module': report.module.name,
        'cutoff': report.cutoff,
        'ext_degree': ext_degree_report_to_json(report.ext_report),
        'ext_degree_with_ring': ext_degree_report_to_json(report.ext_with_ring_report),
        'pd': pd_report_to_json(report.pd_report),
        'cm': cm_report_to_json(report.cm_report),
        'garc': garc_verdict_to_json(report.garc),
        'arc': arc_verdict_to_json(report.arc),
        'duality': duality_report_to_json(report.duality),
        'ext_degree_chain_holds': report.ext_degree_chain_holds,
        'consistency_failures': report.consistency_failures,
        'has_violation': report.has_violation
    }


def render_module_audit_text(report: ModuleAuditReport) -> str:
    lines = [
        f'audit of {report.module.name} (cutoff {report.cutoff})',
        '  ' + render_ext_degree_report_text(report.ext_report),
        '  ' + render_ext_degree_report_text(report.ext_with_ring_report, label='ext.deg(M ⊕ A)'),
        '  ' + render_pd_report_text(report.pd_report),
        '  ' + render_cm_report_text(report.cm_report),
        f'  GARC: {report.garc.verdict.value}'
        + (' (flagged failure candidate)' if report.garc.failure_candidate else ''),
        f'  ARC: {report.arc.verdict.value}'
        + (' (flagged failure candidate)' if report.arc.failure_candidate else ''),
        f'  duality symmetry: {_get_optional_bool_text(report.duality.agrees)}',
        f'  ext.deg chain: {_get_optional_bool_text(report.ext_degree_chain_holds)}'
    ]
    lines.extend(f'  consistency failure: {failure}' for failure in report.consistency_failures)
    return '\n'.join(lines)


def family_audit_to_json(report: FamilyAuditReport) -> Dict[str, Any]:
    return {
        'algebra': report.algebra.name,
        'family': list(report.family),
        'cutoff': report.cutoff,
        'members': [
            {
                'module': member.module.name,
                'ext_degree': ext_degree_report_to_json(member.ext_report),
                'pd': pd_report_to_json(member.pd_report),
                'cm': cm_report_to_json(member.cm_report),
                'garc': member.garc.verdict.value
            }
            for member in report.members
        ],
        'fed_lower_bound': report.fed_lower_bound,
        'fpd_estimate': report.fpd_estimate,
        'uncertified': [
            {'name': member.name, 'observed_bound': member.observed_bound, 'cutoff': member.cutoff}
            for member in report.uncertified
        ],
        'condition_findings': [
            {
                'condition': finding.condition,
                'holds': finding.holds,
                'detail': finding.detail,
                'counterexamples': list(finding.counterexamples)
            }
            for finding in report.condition_findings
        ],
        'injdim': injective_dimension_report_to_json(report.injdim_report),
        'garc_violations': list(report.garc_violations),
        'garc_failure_candidates': list(report.garc_failure_candidates),
        'fed_dichotomy': None if report.fed_dichotomy is None else {
            'id': report.fed_dichotomy.id_value,
            'certified_members': list(report.fed_dichotomy.certified_members),
            'flagged_members': list(report.fed_dichotomy.flagged_members)
        },
        'consistency_failures': list(report.consistency_failures),
        'has_violation': report.has_violation
    }


def render_family_audit_text(report: FamilyAuditReport) -> str:
    lines = [
        f'family audit of {report.algebra.name}: {len(report.family)} members,'
        f' cutoff {report.cutoff}'
    ]
    for member in report.members:
        lines.append(
            f'  {member.module.name}: ext.deg {format_ext_degree_value(member.ext_report)}'
            f' [{format_certificate(member.ext_report.certificate)}],'
            f' pd {format_pd_value(member.pd_report)}, GARC {member.garc.verdict.value}'
        )
    lines.append(f'fed(A) >= {report.fed_lower_bound} (family-relative, certified values only)')
    lines.append(f'fpd(A) >= {report.fpd_estimate}')
    lines.append('id(A): ' + format_pd_value(report.injdim_report.left))
    for uncertified in report.uncertified:
        lines.append(
            f'uncertified: {uncertified.name} observed ext.deg >= {uncertified.observed_bound}'
            f' (cutoff {uncertified.cutoff})'
        )
    for finding in report.condition_findings:
        lines.append(
            f'condition {finding.condition}: {_get_optional_bool_text(finding.holds)}'
            f' ({finding.detail})'
        )
    if report.fed_dichotomy is not None:
        status = 'certified' if report.fed_dichotomy.fed_infinite_certified else 'flagged'
        lines.append(
            f'ext.deg exceeds id(A) = {report.fed_dichotomy.id_value} ({status}): '
            + ', '.join(
                report.fed_dichotomy.certified_members + report.fed_dichotomy.flagged_members
            )
        )
    lines.extend(f'flagged GARC failure candidate: {name}' for name in report.garc_failure_candidates)
    lines.extend(f'GARC violation: {name}' for name in report.garc_violations)
    lines.extend(f'consistency failure: {failure}' for failure in report.consistency_failures)
    return '\n'.join(lines)


def fixture_suite_to_json(report: FixtureSuiteReport) -> Dict[str, Any]:
    return {
        'passed': report.passed,
        'checks': [
            {
                'name': result.name,
                'passed': result.passed,
                'detail': result.detail
            }
            for result in report.results
        ]
    }


def render_fixture_suite_text(report: FixtureSuiteReport) -> str:
    lines = [
        f'{"PASS" if result.passed else "FAIL"}  {result.name}'
        f' ({result.elapsed_seconds:.2f}s): {result.detail}'
        for result in report.results
    ]
    lines.append(
        'all checks passed' if report.passed
        else 'failed checks: ' + ', '.join(report.failed_checks)
    )
    return '\n'.join(lines)


def get_algebra_validation_line(a: AlgebraPresentation, report: ValidationReport) -> str:
    if not report.ok:
        return f'{a.name}: invalid: ' + ', '.join(
            f'{violation.axiom} at {violation.witness!r}' for violation in report.violations
        )
    locality_text = 'local' if report.locality is not None and report.locality.is_local else (
        'non-local'
    )
    return f'{a.name}: ok: {locality_text}, dim {a.dim}'


def get_module_validation_line(m: ModuleRep) -> str:
    return f'{m.name}: ok: dim {m.dim} over {m.algebra.name}'


def validation_lines_to_json(lines: Sequence[str]) -> Dict[str, List[str]]:
    return {'results': list(lines)}

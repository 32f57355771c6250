import argparse
import logging
import os
import sys
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence

from extdeg_labs.aggregators.audit import (
    ConditionVerdict,
    arc_check,
    audit_module,
    duality_symmetry_check,
    garc_check,
    gorenstein_symmetry_check,
    injective_dimension_report,
    projective_dimension
)
from extdeg_labs.aggregators.family import audit_family, enumerate_cyclic_family
from extdeg_labs.aggregators.fixture_suite import run_fixture_suite
from extdeg_labs.cli import render
from extdeg_labs.config.workspace_config import (
    DEFAULT_CONFIG_FILE,
    OutputFormat,
    WorkspaceConfig,
    get_fixtures_dir_from_environment_variables,
    load_workspace_config
)
from extdeg_labs.models.algebra import validate_algebra
from extdeg_labs.models.ext import ext_dims, self_ext_degree
from extdeg_labs.models.resolution import certify_resolution, get_resolution
from extdeg_labs.providers.documents import Workspace, parse_workspace
from extdeg_labs.utils.json import get_canonical_json
from extdeg_labs.utils.logging import configure_logging
from extdeg_labs.utils.text import parse_scalar_csv


LOGGER = logging.getLogger(__name__)


DEFAULT_LOGGING_CONFIG_FILE = 'config/logging.yaml'

DEFAULT_COEFFICIENTS = '0,1'
DEFAULT_MAX_GENERATORS = 1


class ExitCode:
    OK = 0
    ERROR = 1
    VIOLATION = 2


class CommandResult(NamedTuple):
    text: str
    json_record: object
    exit_code: int = ExitCode.OK


class CliArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.ERROR, f'{self.prog}: error: {message}\n')


def get_common_argument_parser() -> argparse.ArgumentParser:
    # defaults are suppressed so that a flag may appear before or after the command
    parser = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    parser.add_argument('--format', choices=[OutputFormat.TEXT, OutputFormat.JSON])
    parser.add_argument('--cutoff', type=int, help='highest Ext degree computed')
    parser.add_argument('--seed', type=int, help='seed for randomized isomorphism tests')
    parser.add_argument('--window', type=int, help='periodicity search window')
    parser.add_argument('--trials', type=int, help='isomorphism trials per candidate')
    parser.add_argument('--workers', type=int, help='parallel family member audits')
    parser.add_argument('--fixtures-dir', help='directory of algebra and module documents')
    parser.add_argument(
        '--workspace', action='append', help='additional document file (repeatable)'
    )
    parser.add_argument('--config', help='workspace configuration YAML file')
    parser.add_argument('--log-level', help='root log level, e.g. DEBUG')
    return parser


def get_argument_parser() -> argparse.ArgumentParser:
    common_parser = get_common_argument_parser()
    parser = CliArgumentParser(
        prog='extdeg',
        description='Exact Ext-degree, syzygy and homological condition audits',
        parents=[common_parser]
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    validate_parser = subparsers.add_parser(
        'validate', parents=[common_parser], help='validate algebra and module documents'
    )
    validate_parser.add_argument('files', nargs='+')

    resolve_parser = subparsers.add_parser(
        'resolve', parents=[common_parser], help='minimal free resolution'
    )
    resolve_parser.add_argument('module')
    resolve_parser.add_argument('--upto', type=int, default=10)

    ext_parser = subparsers.add_parser('ext', parents=[common_parser], help='Ext dimensions')
    ext_parser.add_argument('module')
    ext_parser.add_argument('target')

    for command, help_text in [
        ('extdeg', 'self-extension degree'),
        ('pd', 'projective dimension'),
        ('audit-module', 'full module audit'),
        ('garc', 'generalized Auslander-Reiten condition'),
        ('arc', 'Auslander-Reiten condition'),
        ('dual-check', 'Ext profile against the dual over the opposite algebra')
    ]:
        subparsers.add_parser(
            command, parents=[common_parser], help=help_text
        ).add_argument('module')

    subparsers.add_parser(
        'injdim', parents=[common_parser], help='injective dimension of the algebra'
    ).add_argument('algebra')

    family_parser = subparsers.add_parser(
        'audit-family', parents=[common_parser], help='cyclic family audit'
    )
    family_parser.add_argument('algebra')
    family_parser.add_argument(
        '--coeffs',
        default=DEFAULT_COEFFICIENTS,
        help='comma separated coefficient set; use the --coeffs=-1,0,1 form for negative values'
    )
    family_parser.add_argument('--max-gens', type=int, default=DEFAULT_MAX_GENERATORS)

    fixtures_parser = subparsers.add_parser(
        'fixtures', parents=[common_parser], help='fixture acceptance suite'
    )
    fixtures_parser.add_argument('action', choices=['run'])
    return parser


def get_workspace_config(args: argparse.Namespace) -> WorkspaceConfig:
    config = load_workspace_config(getattr(args, 'config', DEFAULT_CONFIG_FILE))
    return config.with_overrides(
        cutoff=getattr(args, 'cutoff', None),
        seed=getattr(args, 'seed', None),
        output_format=getattr(args, 'format', None),
        periodicity_window=getattr(args, 'window', None),
        iso_trials=getattr(args, 'trials', None),
        max_workers=getattr(args, 'workers', None)
    )


def get_workspace_paths(args: argparse.Namespace) -> List[str]:
    fixtures_dir = getattr(
        args, 'fixtures_dir', get_fixtures_dir_from_environment_variables()
    )
    paths = [fixtures_dir] if os.path.isdir(fixtures_dir) else []
    return paths + list(getattr(args, 'workspace', []))


def run_validate(args: argparse.Namespace, config: WorkspaceConfig) -> CommandResult:
    workspace = parse_workspace(args.files, config=config)
    lines = [
        render.get_algebra_validation_line(a, validate_algebra(a))
        for a in workspace.algebras.values()
    ] + [
        render.get_module_validation_line(m)
        for m in workspace.modules.values()
    ]
    return CommandResult('\n'.join(lines), render.validation_lines_to_json(lines))


def run_resolve(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    config = workspace.config
    m = workspace.get_module(args.module)
    r = get_resolution(m).extend(args.upto)
    certificate = certify_resolution(
        r, args.upto, seed=config.seed, options=config.certification_options
    )
    pd_report = projective_dimension(
        m, args.upto, seed=config.seed, options=config.certification_options
    )
    return CommandResult(
        render.render_resolution_text(r, certificate),
        {
            'resolution': render.resolution_to_json(r, certificate),
            'pd': render.pd_report_to_json(pd_report)
        }
    )


def run_ext(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    profile = ext_dims(
        workspace.get_module(args.module),
        workspace.get_module(args.target),
        workspace.config.cutoff
    )
    return CommandResult(
        render.render_ext_profile_text(profile), render.ext_profile_to_json(profile)
    )


def run_extdeg(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    config = workspace.config
    report = self_ext_degree(
        workspace.get_module(args.module),
        config.cutoff,
        seed=config.seed,
        options=config.certification_options
    )
    return CommandResult(
        render.render_ext_degree_report_text(report), render.ext_degree_report_to_json(report)
    )


def run_pd(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    config = workspace.config
    report = projective_dimension(
        workspace.get_module(args.module),
        config.cutoff,
        seed=config.seed,
        options=config.certification_options
    )
    return CommandResult(
        render.render_pd_report_text(report),
        render.pd_report_to_json(report),
        ExitCode.VIOLATION if report.consistency_failure else ExitCode.OK
    )


def run_injdim(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    config = workspace.config
    a = workspace.get_algebra(args.algebra)
    report = injective_dimension_report(
        a, config.cutoff, seed=config.seed, options=config.certification_options
    )
    symmetry = gorenstein_symmetry_check(
        a, config.cutoff, seed=config.seed, options=config.certification_options
    )
    has_violation = (
        symmetry.has_violation
        or report.left.consistency_failure
        or report.right.consistency_failure
    )
    return CommandResult(
        render.render_injective_dimension_text(report, symmetry),
        {
            'injdim': render.injective_dimension_report_to_json(report),
            'gorenstein_symmetry': render.gorenstein_symmetry_report_to_json(symmetry)
        },
        ExitCode.VIOLATION if has_violation else ExitCode.OK
    )


def run_audit_module(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    config = workspace.config
    report = audit_module(
        workspace.get_module(args.module),
        config.cutoff,
        seed=config.seed,
        options=config.certification_options
    )
    return CommandResult(
        render.render_module_audit_text(report),
        render.module_audit_to_json(report),
        ExitCode.VIOLATION if report.has_violation or report.consistency_failures
        else ExitCode.OK
    )


def run_garc(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    config = workspace.config
    verdict = garc_check(
        workspace.get_module(args.module),
        config.cutoff,
        seed=config.seed,
        options=config.certification_options
    )
    return CommandResult(
        render.render_garc_verdict_text(verdict),
        render.garc_verdict_to_json(verdict),
        ExitCode.VIOLATION
        if verdict.verdict == ConditionVerdict.VIOLATION or verdict.consistency_failure
        else ExitCode.OK
    )


def run_arc(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    config = workspace.config
    verdict = arc_check(
        workspace.get_module(args.module),
        config.cutoff,
        seed=config.seed,
        options=config.certification_options
    )
    return CommandResult(
        render.render_arc_verdict_text(verdict),
        render.arc_verdict_to_json(verdict),
        ExitCode.VIOLATION if verdict.verdict == ConditionVerdict.VIOLATION else ExitCode.OK
    )


def run_dual_check(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    report = duality_symmetry_check(workspace.get_module(args.module), workspace.config.cutoff)
    return CommandResult(
        render.render_duality_report_text(report),
        render.duality_report_to_json(report),
        ExitCode.OK if report.agrees else ExitCode.VIOLATION
    )


def run_audit_family(args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    config = workspace.config
    a = workspace.get_algebra(args.algebra)
    family = enumerate_cyclic_family(
        a,
        parse_scalar_csv(args.coeffs, a.field),
        args.max_gens,
        limit=config.enumeration_limit,
        seed=config.seed,
        trials=config.iso_trials
    )
    report = audit_family(
        a,
        family,
        config.cutoff,
        seed=config.seed,
        options=config.certification_options,
        max_workers=config.max_workers
    )
    return CommandResult(
        render.render_family_audit_text(report),
        render.family_audit_to_json(report),
        ExitCode.VIOLATION if report.has_violation else ExitCode.OK
    )


def run_fixtures(_args: argparse.Namespace, workspace: Workspace) -> CommandResult:
    report = run_fixture_suite(workspace, workspace.config)
    return CommandResult(
        render.render_fixture_suite_text(report),
        render.fixture_suite_to_json(report),
        ExitCode.OK if report.passed else ExitCode.VIOLATION
    )


WORKSPACE_COMMANDS: Dict[str, Callable[[argparse.Namespace, Workspace], CommandResult]] = {
    'resolve': run_resolve,
    'ext': run_ext,
    'extdeg': run_extdeg,
    'pd': run_pd,
    'injdim': run_injdim,
    'audit-module': run_audit_module,
    'audit-family': run_audit_family,
    'garc': run_garc,
    'arc': run_arc,
    'dual-check': run_dual_check,
    'fixtures': run_fixtures
}


def run_command(args: argparse.Namespace, config: WorkspaceConfig) -> CommandResult:
    if args.command == 'validate':
        return run_validate(args, config)
    workspace = parse_workspace(get_workspace_paths(args), config=config)
    return WORKSPACE_COMMANDS[args.command](args, workspace)


def get_rendered_output(result: CommandResult, output_format: str) -> str:
    if output_format == OutputFormat.JSON:
        return get_canonical_json(result.json_record)
    return result.text + '\n'


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = get_argument_parser().parse_args(argv)
    config = get_workspace_config(args)
    configure_logging(
        DEFAULT_LOGGING_CONFIG_FILE,
        level=getattr(args, 'log_level', None),
        stream_to_stderr=config.output_format == OutputFormat.JSON
    )
    try:
        LOGGER.info('running command %r with config: %r', args.command, config)
        result = run_command(args, config)
    except (ValueError, KeyError, RuntimeError) as exc:
        LOGGER.debug('command %r failed', args.command, exc_info=True)
        print(f'error: {exc}', file=sys.stderr)
        return ExitCode.ERROR
    except ArithmeticError as exc:
        LOGGER.warning('command %r hit a consistency failure: %r', args.command, exc)
        print(f'consistency failure: {exc}', file=sys.stderr)
        return ExitCode.VIOLATION
    sys.stdout.write(get_rendered_output(result, config.output_format))
    return result.exit_code

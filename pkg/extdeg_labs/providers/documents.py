import dataclasses
import json
import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from extdeg_labs.config.workspace_config import WorkspaceConfig
from extdeg_labs.linalg.field import FieldKind, FieldSpec, Scalar
from extdeg_labs.linalg.matrix import Mat
from extdeg_labs.models.algebra import (
    AlgebraPresentation,
    InvalidAlgebraError,
    validate_algebra
)
from extdeg_labs.models.module import (
    InvalidModuleError,
    ModuleRep,
    cyclic_quotient,
    validate_module
)


LOGGER = logging.getLogger(__name__)


DOCUMENT_FILE_SUFFIX = '.json'


class DocumentParseError(ValueError):
    def __init__(self, file_path: str, context: str, reason: str):
        super().__init__(f'{file_path}: {context}: {reason}')
        self.file_path = file_path
        self.context = context
        self.reason = reason


class UnknownNameError(KeyError):
    def __init__(self, name: str, kind: str):
        super().__init__(f'unknown {kind}: {name!r}')
        self.name = name
        self.kind = kind

    def __str__(self) -> str:
        return str(self.args[0])


class NameKind:
    ALGEBRA = 'algebra'
    MODULE = 'module'


@dataclasses.dataclass
class Workspace:
    algebras: Dict[str, AlgebraPresentation] = dataclasses.field(default_factory=dict)
    modules: Dict[str, ModuleRep] = dataclasses.field(default_factory=dict)
    config: WorkspaceConfig = WorkspaceConfig()

    def get_algebra(self, name: str) -> AlgebraPresentation:
        try:
            return self.algebras[name]
        except KeyError as exc:
            raise UnknownNameError(name, NameKind.ALGEBRA) from exc

    def get_module(self, name: str) -> ModuleRep:
        try:
            return self.modules[name]
        except KeyError as exc:
            raise UnknownNameError(name, NameKind.MODULE) from exc

    def get_modules_over(self, a: AlgebraPresentation) -> List[ModuleRep]:
        return [m for m in self.modules.values() if m.algebra == a]


class _DocumentSource:
    def __init__(self, file_path: str, text: str):
        self.file_path = file_path
        self.text = text

    def get_context(self, document: Mapping[str, Any], path: str) -> str:
        name = document.get('name') if isinstance(document, Mapping) else None
        line_number = self._get_line_number(name)
        if line_number is None:
            return path
        return f'line {line_number}, {path}'

    def _get_line_number(self, name: Optional[str]) -> Optional[int]:
        if not isinstance(name, str):
            return None
        match = re.search(r'"name"\s*:\s*' + re.escape(json.dumps(name)), self.text)
        if not match:
            return None
        return self.text.count('\n', 0, match.start()) + 1

    def error(self, document: Mapping[str, Any], path: str, reason: str) -> DocumentParseError:
        return DocumentParseError(self.file_path, self.get_context(document, path), reason)


def _require(
    source: _DocumentSource,
    document: Mapping[str, Any],
    path: str,
    key: str,
    expected_type: type
) -> Any:
    if key not in document:
        raise source.error(document, path, f'missing {key!r}')
    value = document[key]
    if not isinstance(value, expected_type) or isinstance(value, bool):
        raise source.error(
            document, f'{path}.{key}', f'expected {expected_type.__name__}, got {value!r}'
        )
    return value


def parse_field_spec(
    source: _DocumentSource,
    document: Mapping[str, Any],
    path: str
) -> FieldSpec:
    field_dict = _require(source, document, path, 'field', dict)
    kind = field_dict.get('kind')
    try:
        if kind == FieldKind.RATIONAL:
            return FieldSpec.rational()
        if kind == FieldKind.PRIME:
            p = field_dict.get('p')
            if not isinstance(p, int) or isinstance(p, bool):
                raise source.error(document, f'{path}.field.p', f'expected int, got {p!r}')
            return FieldSpec.prime(p)
    except ValueError as exc:
        raise source.error(document, f'{path}.field', str(exc)) from exc
    raise source.error(document, f'{path}.field', f'unknown field kind: {kind!r}')


def _parse_scalar(
    source: _DocumentSource,
    document: Mapping[str, Any],
    path: str,
    field: FieldSpec,
    value: Any
) -> Scalar:
    try:
        return field.parse_scalar(value)
    except ValueError as exc:
        raise source.error(document, path, str(exc)) from exc


def _parse_index(
    source: _DocumentSource,
    document: Mapping[str, Any],
    path: str,
    value: Any,
    dim: int
) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < dim:
        raise source.error(document, path, f'invalid basis index {value!r} for dim {dim}')
    return value


def parse_algebra_document(
    source: _DocumentSource,
    document: Mapping[str, Any],
    path: str
) -> AlgebraPresentation:
    name = _require(source, document, path, 'name', str)
    field = parse_field_spec(source, document, path)
    dim = _require(source, document, path, 'dim', int)
    basis_names = _require(source, document, path, 'basis', list)
    if len(basis_names) != dim:
        raise source.error(
            document, f'{path}.basis', f'expected {dim} basis names, got {len(basis_names)}'
        )
    unit_index = _parse_index(
        source, document, f'{path}.unit', _require(source, document, path, 'unit', int), dim
    )
    radical_indices = [
        _parse_index(source, document, f'{path}.radical[{position}]', index, dim)
        for position, index in enumerate(_require(source, document, path, 'radical', list))
    ]
    table: Dict[Tuple[int, int], List[Tuple[int, Scalar]]] = {}
    for position, entry in enumerate(_require(source, document, path, 'table', list)):
        entry_path = f'{path}.table[{position}]'
        if not isinstance(entry, list) or len(entry) != 3 or not isinstance(entry[2], list):
            raise source.error(document, entry_path, 'expected [i, j, [[k, scalar], ...]]')
        i = _parse_index(source, document, entry_path, entry[0], dim)
        j = _parse_index(source, document, entry_path, entry[1], dim)
        if (i, j) in table:
            raise source.error(document, entry_path, f'duplicate product entry ({i}, {j})')
        terms = []
        for term in entry[2]:
            if not isinstance(term, list) or len(term) != 2:
                raise source.error(document, entry_path, f'expected [k, scalar], got {term!r}')
            terms.append((
                _parse_index(source, document, entry_path, term[0], dim),
                _parse_scalar(source, document, entry_path, field, term[1])
            ))
        table[(i, j)] = terms
    return AlgebraPresentation.from_table(
        name=name,
        field=field,
        basis_names=[str(basis_name) for basis_name in basis_names],
        unit_index=unit_index,
        table=table,
        radical_indices=radical_indices
    )


def _parse_matrix(  # pylint: disable=too-many-arguments
    source: _DocumentSource,
    document: Mapping[str, Any],
    path: str,
    field: FieldSpec,
    rows: Any,
    dim: int
) -> Mat:
    if not isinstance(rows, list) or len(rows) != dim:
        raise source.error(document, path, f'expected {dim} rows')
    parsed_rows = []
    for row_index, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise source.error(document, f'{path}[{row_index}]', f'expected {dim} entries')
        parsed_rows.append([
            _parse_scalar(source, document, f'{path}[{row_index}]', field, value)
            for value in row
        ])
    return Mat.from_rows(field, parsed_rows, cols=dim)


def parse_module_document(
    source: _DocumentSource,
    document: Mapping[str, Any],
    path: str,
    algebras: Mapping[str, AlgebraPresentation]
) -> ModuleRep:
    name = _require(source, document, path, 'name', str)
    algebra_name = _require(source, document, path, 'algebra', str)
    if algebra_name not in algebras:
        raise source.error(document, f'{path}.algebra', f'unresolved algebra {algebra_name!r}')
    a = algebras[algebra_name]
    if 'cyclic' in document:
        generators = []
        for position, generator in enumerate(_require(source, document, path, 'cyclic', list)):
            generator_path = f'{path}.cyclic[{position}]'
            if not isinstance(generator, list) or len(generator) != a.dim:
                raise source.error(
                    document, generator_path, f'expected a vector of length {a.dim}'
                )
            generators.append([
                _parse_scalar(source, document, generator_path, a.field, value)
                for value in generator
            ])
        m = cyclic_quotient(a, generators, name=name)
        if 'dim' in document and document['dim'] != m.dim:
            raise source.error(
                document, f'{path}.dim', f'declared dim {document["dim"]!r}, computed {m.dim}'
            )
        return m
    dim = _require(source, document, path, 'dim', int)
    actions = _require(source, document, path, 'action', list)
    if len(actions) != a.dim:
        raise source.error(
            document, f'{path}.action', f'expected {a.dim} action matrices, got {len(actions)}'
        )
    return ModuleRep(
        algebra=a,
        dim=dim,
        action=tuple(
            _parse_matrix(source, document, f'{path}.action[{index}]', a.field, rows, dim)
            for index, rows in enumerate(actions)
        ),
        name=name
    )


def _iter_documents(source: _DocumentSource) -> List[Tuple[str, Mapping[str, Any]]]:
    try:
        root = json.loads(source.text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(
            source.file_path, f'line {exc.lineno}, column {exc.colno}', exc.msg
        ) from exc
    documents = root if isinstance(root, list) else [root]
    result = []
    for position, document in enumerate(documents):
        path = f'$[{position}]' if isinstance(root, list) else '$'
        if not isinstance(document, dict):
            raise DocumentParseError(source.file_path, path, 'expected a JSON object')
        result.append((path, document))
    return result


def _is_module_document(document: Mapping[str, Any]) -> bool:
    return 'algebra' in document


def iter_document_paths(paths: Sequence[str]) -> List[str]:
    result: List[str] = []
    for path in paths:
        if os.path.isdir(path):
            result.extend(
                str(file_path)
                for file_path in sorted(Path(path).glob('*' + DOCUMENT_FILE_SUFFIX))
            )
        else:
            result.append(path)
    return result


def _read_sources(paths: Sequence[str]) -> List[_DocumentSource]:
    sources = []
    for file_path in iter_document_paths(paths):
        try:
            with open(file_path, 'r', encoding='utf-8') as document_fp:
                sources.append(_DocumentSource(file_path, document_fp.read()))
        except OSError as exc:
            raise DocumentParseError(file_path, '$', str(exc)) from exc
    return sources


def _check_unique_name(
    names: Mapping[str, Any],
    name: str,
    source: _DocumentSource,
    document: Mapping[str, Any],
    path: str
):
    if name in names:
        raise source.error(document, f'{path}.name', f'duplicate name {name!r}')


def parse_workspace(
    paths: Sequence[str],
    config: Optional[WorkspaceConfig] = None
) -> Workspace:
    """
    Reads algebra and module documents (files or directories of `*.json` files).

    Algebras are parsed first across all files so that a module may reference an
    algebra from another file. Every algebra and module is validated.
    """
    workspace = Workspace(config=config if config is not None else WorkspaceConfig())
    sources = _read_sources(paths)
    documents_by_source = [(source, _iter_documents(source)) for source in sources]
    for source, documents in documents_by_source:
        for path, document in documents:
            if _is_module_document(document):
                continue
            a = parse_algebra_document(source, document, path)
            _check_unique_name(workspace.algebras, a.name, source, document, path)
            report = validate_algebra(a)
            if not report.ok:
                raise InvalidAlgebraError(a.name, report.violations)
            workspace.algebras[a.name] = a
    for source, documents in documents_by_source:
        for path, document in documents:
            if not _is_module_document(document):
                continue
            m = parse_module_document(source, document, path, workspace.algebras)
            _check_unique_name(workspace.modules, m.name, source, document, path)
            report = validate_module(m)
            if not report.ok:
                raise InvalidModuleError(m.name, report.violations)
            workspace.modules[m.name] = m
    LOGGER.info(
        'loaded workspace: algebras=%r, modules=%r',
        list(workspace.algebras), list(workspace.modules)
    )
    return workspace

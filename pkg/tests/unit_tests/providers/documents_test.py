import json
from pathlib import Path
from typing import Any

import pytest

from extdeg_labs.config.workspace_config import WorkspaceConfig
from extdeg_labs.models.algebra import InvalidAlgebraError
from extdeg_labs.models.module import InvalidModuleError
from extdeg_labs.providers.documents import (
    DocumentParseError,
    UnknownNameError,
    iter_document_paths,
    parse_workspace
)

from tests.unit_tests.test_data import KX2


KX2_ALGEBRA_DOCUMENT = {
    'name': 'kx2',
    'field': {'kind': 'rational'},
    'dim': 2,
    'basis': ['1', 'x'],
    'unit': 0,
    'radical': [1],
    'table': [
        [0, 0, [[0, '1']]],
        [0, 1, [[1, '1']]],
        [1, 0, [[1, '1']]]
    ]
}

K_OVER_KX2_DOCUMENT = {
    'name': 'k_kx2',
    'algebra': 'kx2',
    'dim': 1,
    'action': [[['1']], [['0']]]
}


def _write_json(path: Path, document: Any) -> str:
    path.write_text(json.dumps(document, indent=2), encoding='utf-8')
    return str(path)


def _with(document: dict, **kwargs) -> dict:
    return {**document, **kwargs}


class TestParseWorkspace:
    def test_should_parse_algebra_and_modules(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', [
            KX2_ALGEBRA_DOCUMENT,
            K_OVER_KX2_DOCUMENT,
            {'name': 'A_kx2', 'algebra': 'kx2', 'cyclic': []}
        ])
        workspace = parse_workspace([file_path])
        a = workspace.get_algebra('kx2')
        assert a.dim == 2
        assert a.structure_constants == KX2.structure_constants
        assert workspace.get_module('k_kx2').dim == 1
        assert workspace.get_module('A_kx2').dim == 2
        assert [m.name for m in workspace.get_modules_over(a)] == ['k_kx2', 'A_kx2']

    def test_should_resolve_algebra_from_other_file(self, tmp_path: Path):
        _write_json(tmp_path / 'a.json', K_OVER_KX2_DOCUMENT)
        _write_json(tmp_path / 'b.json', KX2_ALGEBRA_DOCUMENT)
        workspace = parse_workspace([str(tmp_path)])
        assert list(workspace.modules) == ['k_kx2']

    def test_should_keep_config(self, tmp_path: Path):
        config = WorkspaceConfig(cutoff=7)
        file_path = _write_json(tmp_path / 'kx2.json', KX2_ALGEBRA_DOCUMENT)
        assert parse_workspace([file_path], config).config == config

    def test_should_parse_cyclic_module_with_declared_dim(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', [
            KX2_ALGEBRA_DOCUMENT,
            {'name': 'k', 'algebra': 'kx2', 'cyclic': [['0', '1']], 'dim': 1}
        ])
        assert parse_workspace([file_path]).get_module('k').dim == 1

    def test_should_parse_prime_field(self, tmp_path: Path):
        file_path = _write_json(
            tmp_path / 'kx2.json',
            _with(KX2_ALGEBRA_DOCUMENT, field={'kind': 'prime', 'p': 3})
        )
        assert parse_workspace([file_path]).get_algebra('kx2').field.p == 3

    def test_should_raise_unknown_name_error(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', KX2_ALGEBRA_DOCUMENT)
        workspace = parse_workspace([file_path])
        with pytest.raises(UnknownNameError) as exc_info:
            workspace.get_module('missing')
        assert str(exc_info.value) == "unknown module: 'missing'"


class TestParseWorkspaceErrors:
    def test_should_report_invalid_json_position(self, tmp_path: Path):
        file_path = tmp_path / 'broken.json'
        file_path.write_text('{\n  "name": \n}', encoding='utf-8')
        with pytest.raises(DocumentParseError) as exc_info:
            parse_workspace([str(file_path)])
        assert exc_info.value.context.startswith('line 3')

    def test_should_report_missing_key_with_line(self, tmp_path: Path):
        document = dict(KX2_ALGEBRA_DOCUMENT)
        del document['unit']
        file_path = _write_json(tmp_path / 'kx2.json', [document])
        with pytest.raises(DocumentParseError) as exc_info:
            parse_workspace([file_path])
        assert exc_info.value.reason == "missing 'unit'"
        assert exc_info.value.context == 'line 3, $[0]'

    def test_should_reject_non_prime_characteristic(self, tmp_path: Path):
        file_path = _write_json(
            tmp_path / 'kx2.json',
            _with(KX2_ALGEBRA_DOCUMENT, field={'kind': 'prime', 'p': 4})
        )
        with pytest.raises(DocumentParseError):
            parse_workspace([file_path])

    def test_should_reject_duplicate_product_entry(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', _with(
            KX2_ALGEBRA_DOCUMENT,
            table=KX2_ALGEBRA_DOCUMENT['table'] + [[0, 0, [[0, '1']]]]
        ))
        with pytest.raises(DocumentParseError, match='duplicate product entry'):
            parse_workspace([file_path])

    def test_should_reject_out_of_range_index(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', _with(KX2_ALGEBRA_DOCUMENT, unit=5))
        with pytest.raises(DocumentParseError, match='invalid basis index'):
            parse_workspace([file_path])

    def test_should_reject_unresolved_algebra(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'k.json', K_OVER_KX2_DOCUMENT)
        with pytest.raises(DocumentParseError, match='unresolved algebra'):
            parse_workspace([file_path])

    def test_should_reject_duplicate_names(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', [
            KX2_ALGEBRA_DOCUMENT, K_OVER_KX2_DOCUMENT, K_OVER_KX2_DOCUMENT
        ])
        with pytest.raises(DocumentParseError, match='duplicate name'):
            parse_workspace([file_path])

    def test_should_reject_wrong_action_shape(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', [
            KX2_ALGEBRA_DOCUMENT,
            _with(K_OVER_KX2_DOCUMENT, action=[[['1']]])
        ])
        with pytest.raises(DocumentParseError, match='expected 2 action matrices'):
            parse_workspace([file_path])

    def test_should_reject_mismatching_declared_dim(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', [
            KX2_ALGEBRA_DOCUMENT,
            {'name': 'k', 'algebra': 'kx2', 'cyclic': [['0', '1']], 'dim': 2}
        ])
        with pytest.raises(DocumentParseError, match='declared dim'):
            parse_workspace([file_path])

    def test_should_reject_algebra_violating_axioms(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', _with(
            KX2_ALGEBRA_DOCUMENT,
            table=KX2_ALGEBRA_DOCUMENT['table'] + [[1, 1, [[0, '1']]]]
        ))
        with pytest.raises(InvalidAlgebraError):
            parse_workspace([file_path])

    def test_should_reject_module_violating_axioms(self, tmp_path: Path):
        file_path = _write_json(tmp_path / 'kx2.json', [
            KX2_ALGEBRA_DOCUMENT,
            _with(K_OVER_KX2_DOCUMENT, action=[[['1']], [['1']]])
        ])
        with pytest.raises(InvalidModuleError):
            parse_workspace([file_path])

    def test_should_report_missing_file(self, tmp_path: Path):
        with pytest.raises(DocumentParseError):
            parse_workspace([str(tmp_path / 'missing.json')])


class TestIterDocumentPaths:
    def test_should_expand_directories_in_sorted_order(self, tmp_path: Path):
        _write_json(tmp_path / 'b.json', {})
        _write_json(tmp_path / 'a.json', {})
        (tmp_path / 'notes.txt').write_text('')
        assert iter_document_paths([str(tmp_path), 'other.json']) == [
            str(tmp_path / 'a.json'), str(tmp_path / 'b.json'), 'other.json'
        ]

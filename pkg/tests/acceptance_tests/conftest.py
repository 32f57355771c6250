import os
from pathlib import Path

import pytest

from extdeg_labs.config.workspace_config import (
    WorkspaceConfig,
    WorkspaceEnvironmentVariables
)
from extdeg_labs.providers.documents import Workspace, parse_workspace


DEFAULT_ACCEPTANCE_FIXTURES_DIR = str(Path(__file__).parents[2] / 'fixtures')


def get_acceptance_fixtures_dir() -> str:
    return os.getenv(
        WorkspaceEnvironmentVariables.FIXTURES_DIR,
        DEFAULT_ACCEPTANCE_FIXTURES_DIR
    )


@pytest.fixture(scope='session')
def acceptance_config() -> WorkspaceConfig:
    return WorkspaceConfig()


@pytest.fixture(scope='session')
def fixture_workspace(acceptance_config: WorkspaceConfig) -> Workspace:
    return parse_workspace([get_acceptance_fixtures_dir()], config=acceptance_config)

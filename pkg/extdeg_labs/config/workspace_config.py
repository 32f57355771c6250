import os
from typing import NamedTuple, Optional

import yaml

from extdeg_labs.models.resolution import CertificationOptions


DEFAULT_CONFIG_FILE = 'config/extdeg.yaml'

DEFAULT_FIXTURES_DIR = 'fixtures'


class OutputFormat:
    TEXT = 'text'
    JSON = 'json'


class WorkspaceEnvironmentVariables:
    FIXTURES_DIR = 'EXTDEG_FIXTURES_DIR'


class WorkspaceConfig(NamedTuple):
    cutoff: int = 20
    seed: int = 0
    enumeration_limit: int = 5000
    output_format: str = OutputFormat.TEXT
    periodicity_window: int = 10
    iso_trials: int = 20
    max_workers: int = 1

    @property
    def certification_options(self) -> CertificationOptions:
        return CertificationOptions(window=self.periodicity_window, trials=self.iso_trials)

    def with_overrides(self, **kwargs) -> 'WorkspaceConfig':
        return self._replace(**{
            key: value
            for key, value in kwargs.items()
            if value is not None
        })


def load_workspace_config(config_file: Optional[str] = None) -> WorkspaceConfig:
    if not config_file or not os.path.exists(config_file):
        return WorkspaceConfig()
    with open(config_file, 'r', encoding='utf-8') as config_fp:
        config_dict = yaml.load(config_fp, yaml.SafeLoader) or {}
    defaults_dict = config_dict.get('defaults', {})
    return WorkspaceConfig().with_overrides(
        cutoff=defaults_dict.get('cutoff'),
        seed=defaults_dict.get('seed'),
        enumeration_limit=defaults_dict.get('enumeration_limit'),
        output_format=defaults_dict.get('output_format'),
        periodicity_window=defaults_dict.get('periodicity_window'),
        iso_trials=defaults_dict.get('iso_trials'),
        max_workers=defaults_dict.get('max_workers')
    )


def get_fixtures_dir_from_environment_variables(
    default_fixtures_dir: str = DEFAULT_FIXTURES_DIR
) -> str:
    return os.getenv(WorkspaceEnvironmentVariables.FIXTURES_DIR) or default_fixtures_dir

import logging
import logging.config
import os
from typing import Optional

import yaml


LOGGER = logging.getLogger(__name__)


def configure_logging(
    config_file: Optional[str] = None,
    level: Optional[str] = None,
    stream_to_stderr: bool = False
):
    if config_file and os.path.exists(config_file):
        with open(config_file, 'r', encoding='utf-8') as config_fp:
            logging_config = yaml.load(config_fp, yaml.SafeLoader)
        if stream_to_stderr:
            for handler_config in logging_config.get('handlers', {}).values():
                if handler_config.get('stream') == 'ext://sys.stdout':
                    handler_config['stream'] = 'ext://sys.stderr'
        logging.config.dictConfig(logging_config)
    else:
        logging.basicConfig(level='INFO')
        LOGGER.debug('logging config file not found: %r', config_file)
    if level:
        logging.getLogger().setLevel(level.upper())

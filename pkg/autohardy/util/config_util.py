"""
Typed access to the `autoconf` configuration of **PyAutoHardy**.

Values are read from `general.ini`, first in the workspace `config` folder and then in the default
`autohardy/config` folder registered on import.
"""
import logging
import logging.config
from pathlib import Path

import yaml
from autoconf import conf

logger = logging.getLogger(__name__)

_TRUE = ("true", "1", "yes", "on")


def _value(section: str, key: str):
    return conf.instance["general"][section][key]


def config_float(section: str, key: str) -> float:
    return float(_value(section, key))


def config_int(section: str, key: str) -> int:
    return int(float(_value(section, key)))


def config_bool(section: str, key: str) -> bool:
    value = _value(section, key)
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in _TRUE


def logging_config_path() -> Path:
    """
    The `logging.yaml` used by the command line: the workspace file if present, otherwise the packaged default.
    """
    workspace = Path.cwd() / "config" / "logging.yaml"
    if workspace.exists():
        return workspace
    return Path(__file__).parent.parent / "config" / "logging.yaml"


def setup_logging(level: str = None):
    """
    Configure logging from a `logging.yaml` dictConfig file, optionally overriding the root level.
    """
    path = logging_config_path()

    with open(path) as f:
        logging.config.dictConfig(yaml.safe_load(f))

    if level is not None:
        root = logging.getLogger()
        root.setLevel(level.upper())
        for handler in root.handlers:
            handler.setLevel(level.upper())

    logger.debug(f"Logging configured from {path}")

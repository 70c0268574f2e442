import configparser
import logging
import os
from typing import Optional

from terwilliger.config.vault import VaultMeta
from terwilliger.constant import (
    CONFIG_PATH,
    DEFAULT_MAX_POINTS,
    MAX_POINTS_ENV,
    PROJECT,
)
from terwilliger.errors import ParameterError

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS = {
    "ORACLE": {
        "MAX_POINTS": str(DEFAULT_MAX_POINTS),
        "CLOSURE_STRATEGY": "generators",
    },
    "LOG": {
        "LEVEL": "WARNING",
        "FILE": "false",
        "JSON": "false",
    },
    "REPORT": {
        "INDENT": "2",
    },
}

CLOSURE_STRATEGIES = ("generators", "pairwise")


class Config(metaclass=VaultMeta):
    path = CONFIG_PATH

    @staticmethod
    def ensure_initialized(project, config):
        os.makedirs(Config.path, exist_ok=True)
        config_path = os.path.join(Config.path, project.lower().replace(" ", "_") + ".ini")
        if not os.path.exists(config_path):
            cfg = configparser.ConfigParser(interpolation=None)
            cfg.optionxform = str

            for k, v in config.items():
                cfg[k] = v

            with open(config_path, "w", encoding="utf-8") as configfile:
                cfg.write(configfile)
        return config_path


def section(name: str):
    """
    The named section of the project settings file, created with defaults on
    first use. Returns None when the settings directory cannot be written.
    """
    try:
        Config.ensure_initialized(PROJECT, DEFAULT_SETTINGS)
        return getattr(getattr(Config, PROJECT), name)
    except (OSError, AttributeError) as e:
        logger.debug("settings section %s unavailable (%s), using defaults", name, e)
        return None


def max_points(override: Optional[int] = None) -> int:
    """Oracle cap: environment, then explicit argument, then settings file, then default."""
    env = os.environ.get(MAX_POINTS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError as e:
            raise ParameterError(f"{MAX_POINTS_ENV}={env!r} is not an integer") from e
    elif override is not None:
        value = int(override)
    else:
        oracle = section("ORACLE")
        value = oracle.getint("MAX_POINTS", DEFAULT_MAX_POINTS) if oracle else DEFAULT_MAX_POINTS
    if value < 1:
        raise ParameterError(f"oracle cap must be positive, got {value}")
    return value


def closure_strategy(override: Optional[str] = None) -> str:
    if override is None:
        oracle = section("ORACLE")
        override = oracle.get_value("CLOSURE_STRATEGY", "generators") if oracle else "generators"
    strategy = str(override).strip().lower()
    if strategy not in CLOSURE_STRATEGIES:
        raise ParameterError(f"unknown closure strategy {override!r}, expected one of {CLOSURE_STRATEGIES}")
    return strategy


def report_indent() -> int:
    report = section("REPORT")
    return report.getint("INDENT", 2) if report else 2

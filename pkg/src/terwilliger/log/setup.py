"""
Rich console logging plus rotating files, configured once per process.

Entry points configure; library modules only call ``logging.getLogger(__name__)``:
    from terwilliger.log import LoggingConfigurator
    LoggingConfigurator.configure(project="terwilliger", level="INFO")
    LoggingConfigurator.configure_from_settings(level=None)  # [LOG] section of terwilliger.ini

- The console writes to stderr; stdout belongs to the JSON documents.
- Records carry the current run (``u=2,3 p=2``) set by :func:`terwilliger.log.run_context`.
- Failed checks attach ``extra={"detail": {...}}``; the jsonl file keeps it as an object.
- Archives are named YYYYMMDD.<project>.log|jsonl.
"""

import json
import logging
import os
from contextvars import ContextVar
from dataclasses import dataclass
from datetime import datetime, timezone
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

try:
    from rich.console import Console
    from rich.logging import RichHandler
    from rich.traceback import install as rich_traceback_install
except Exception as e:  # pragma: no cover
    raise ImportError("Install 'rich': pip install rich") from e

from terwilliger.config import section
from terwilliger.constant import LOGS_PATH, PROJECT

CURRENT_RUN: ContextVar[str] = ContextVar("terwilliger_run", default="-")


def _env_bool(name: str, default: bool) -> bool:
    val = os.environ.get(name)
    if val is None:
        return default
    return val.strip().lower() in {"1", "true", "yes", "on"}


def _dated_namer(base_path: Path):
    """'<dir>/<base>.YYYYMMDD' -> '<dir>/YYYYMMDD.<base>'."""
    def namer(default_name: str) -> str:
        return str(base_path.parent / f"{Path(default_name).suffix.lstrip('.')}.{base_path.name}")
    return namer


class RunFilter(logging.Filter):
    """Stamps ``project`` and ``run`` on every record."""

    def __init__(self, project: str):
        super().__init__()
        self.project = project

    def filter(self, record: logging.LogRecord) -> bool:
        record.project = self.project
        record.run = CURRENT_RUN.get()
        return True


class JsonLineFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload: Dict[str, Any] = {
            "ts": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "project": getattr(record, "project", PROJECT),
            "run": getattr(record, "run", "-"),
            "logger": record.name,
            "msg": record.getMessage(),
            "where": f"{record.module}:{record.lineno}",
        }
        detail = getattr(record, "detail", None)
        if detail:
            payload["detail"] = detail
        if record.exc_info:
            payload["exc_info"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False, default=str)


PLAIN_FORMAT = "%(asctime)s | %(levelname)-8s | %(project)s | %(run)s | %(name)s:%(lineno)d - %(message)s"


@dataclass
class LoggingConfigurator:
    configured: bool = False
    _project: Optional[str] = None
    _log_dir: Optional[Path] = None
    _console: Optional[Console] = None

    @classmethod
    def configure(
        cls,
        *,
        project: Optional[str] = None,
        level: str = "INFO",
        base_dir: Optional[Union[str, Path]] = None,
        console: bool = True,
        log_file: bool = True,
        json_file: bool = False,
        retention_days: int = 14,
        backtrace: bool = False,
        date_prefix_files: bool = True,
    ) -> None:
        """
        Configure the root logger once: rich console on stderr, daily rotating text file,
        optional daily rotating jsonl file. Without a project only the console is used.
        ``LOG_PROJECT``, ``LOG_LEVEL``, ``LOG_CONSOLE``, ``LOG_JSON``, ``LOG_DIR`` and
        ``LOG_RETENTION_DAYS`` override the arguments. Later calls are no-ops.
        """
        if cls.configured:
            return

        project = os.environ.get("LOG_PROJECT", project)
        level = os.environ.get("LOG_LEVEL", level).upper()
        console = _env_bool("LOG_CONSOLE", console)

        if project is None:
            log_dir = Path(".")
            log_file = json_file = False
        else:
            json_file = _env_bool("LOG_JSON", json_file)
            retention_days = int(os.environ.get("LOG_RETENTION_DAYS", retention_days))
            log_dir = cls.log_dir_for(project, base_dir)
            if log_file or json_file:
                log_dir.mkdir(parents=True, exist_ok=True)

        if backtrace:
            rich_traceback_install(width=None)

        run_filter = RunFilter(project or "unknown")
        handlers: List[logging.Handler] = []

        if console:
            cls._console = cls._console or Console(stderr=True)
            rich_handler = RichHandler(
                console=cls._console,
                show_time=True,
                show_level=True,
                show_path=True,
                markup=False,
                rich_tracebacks=True,
                tracebacks_suppress=[logging],
            )
            rich_handler.setFormatter(logging.Formatter("%(message)s"))
            handlers.append(rich_handler)

        def rotating(path: Path, formatter: logging.Formatter) -> TimedRotatingFileHandler:
            handler = TimedRotatingFileHandler(str(path), when="midnight", backupCount=retention_days,
                                               encoding="utf-8", utc=True)
            if date_prefix_files:
                handler.suffix = "%Y%m%d"
                handler.namer = _dated_namer(path)
            handler.setFormatter(formatter)
            return handler

        if log_file:
            handlers.append(rotating(log_dir / f"{project}.log",
                                     logging.Formatter(PLAIN_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")))
        if json_file:
            handlers.append(rotating(log_dir / f"{project}.jsonl", JsonLineFormatter()))

        root = logging.getLogger()
        root.setLevel(level)
        for h in handlers:
            h.setLevel(level)
            h.addFilter(run_filter)
            root.addHandler(h)

        cls._project = project
        cls._log_dir = log_dir
        cls.configured = True

    @classmethod
    def configure_from_settings(cls, *, level: Optional[str] = None, log_file: Optional[bool] = None,
                                base_dir: Optional[Union[str, Path]] = None) -> None:
        """
        ``configure`` for the terwilliger project, filling unset arguments from the
        ``[LOG]`` section (LEVEL, FILE, JSON) of the settings file.
        """
        settings = section("LOG")
        if level is None:
            level = settings.get_value("LEVEL", "WARNING") if settings else "WARNING"
        if log_file is None:
            log_file = settings.getbool("FILE", False) if settings else False
        json_file = settings.getbool("JSON", False) if settings else False
        cls.configure(project=PROJECT, level=level, base_dir=base_dir,
                      log_file=log_file, json_file=json_file)

    @staticmethod
    def log_dir_for(project: str, base_dir: Optional[Union[str, Path]] = None) -> Path:
        base_dir_env = os.environ.get("LOG_DIR")
        if base_dir_env:
            return Path(base_dir_env)
        if base_dir:
            return Path(base_dir)
        return Path(LOGS_PATH) / project

    @classmethod
    def get_console(cls) -> Optional[Console]:
        """The rich Console of the console handler, or None before configuration."""
        return cls._console

from terwilliger.config.config import (
    CLOSURE_STRATEGIES,
    DEFAULT_SETTINGS,
    Config,
    closure_strategy,
    max_points,
    report_indent,
    section,
)

__all__ = [
    "CLOSURE_STRATEGIES",
    "DEFAULT_SETTINGS",
    "Config",
    "closure_strategy",
    "max_points",
    "report_indent",
    "section",
]

from terwilliger.log.setup import LoggingConfigurator
from terwilliger.log.utils import run_context, with_spinner

__all__ = ["LoggingConfigurator", "run_context", "with_spinner"]

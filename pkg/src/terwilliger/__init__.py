from terwilliger.config import Config
from terwilliger.exact_field import FieldElem, FieldSpec
from terwilliger.index_algebra import SchemeParams
from terwilliger.log import LoggingConfigurator, with_spinner
from terwilliger.report import Report, VerifyResult, run_report, run_sweep, run_verify
from terwilliger.scheme import FactorialScheme, Point


__all__ = [
    "Config",
    "FactorialScheme",
    "FieldElem",
    "FieldSpec",
    "LoggingConfigurator",
    "Point",
    "Report",
    "SchemeParams",
    "VerifyResult",
    "run_report",
    "run_sweep",
    "run_verify",
    "with_spinner",
]

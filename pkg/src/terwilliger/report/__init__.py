from terwilliger.report.report import Report, run_report
from terwilliger.report.sweep import run_sweep, sweep_params
from terwilliger.report.verify import CHECKS, CheckResult, VerifyResult, run_verify

__all__ = [
    "CHECKS",
    "CheckResult",
    "Report",
    "VerifyResult",
    "run_report",
    "run_sweep",
    "run_verify",
    "sweep_params",
]

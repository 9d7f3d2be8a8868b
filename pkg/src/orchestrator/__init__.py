from .output import VALID, error_flag, read_csv, write_csv
from .runner import CYCLE_COLUMNS, RunOrchestrator, RunResult
from .verify import CHECKS, CheckResult, CheckStatus, VerificationReport, run_verification

__all__ = [
    "VALID",
    "error_flag",
    "read_csv",
    "write_csv",
    "CYCLE_COLUMNS",
    "RunOrchestrator",
    "RunResult",
    "CHECKS",
    "CheckResult",
    "CheckStatus",
    "VerificationReport",
    "run_verification",
]

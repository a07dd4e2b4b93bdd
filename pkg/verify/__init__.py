"""Verification suites, coefficient tables and map exports behind ``qp.py``."""

from verify.checks import CHECKS, SUITE_CHECKS, run_suite
from verify.emit import emit_maps, emit_series
from verify.schemas import CheckResult, VerificationReport

__all__ = [
    "CHECKS",
    "CheckResult",
    "SUITE_CHECKS",
    "VerificationReport",
    "emit_maps",
    "emit_series",
    "run_suite",
]

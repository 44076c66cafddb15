"""Exact verification toolkit for Kummer-type Calabi-Yau threefolds built from E_omega^3 and E_eta^3."""

from .report import Claim, Status, VerificationReport, emit_report
from .suites import SUITES, Options, run_suite

__version__ = "0.1.0"

__all__ = ["Claim", "Options", "SUITES", "Status", "VerificationReport", "emit_report", "run_suite", "__version__"]

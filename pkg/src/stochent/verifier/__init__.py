"""Seeded property suites for the entropy inequalities, plus the conjecture fuzzer."""

from .observational import channel_chi, s_tilde, s_tilde_convexity_gap
from .report import Check, SuiteReport, Violation
from .suites import (
    CONJECTURE,
    SUITES,
    THEOREM_SUITES,
    Resample,
    Suite,
    conjecture_sides,
    fuzz_conjecture,
    replay_conjecture,
    run_suite,
)

__all__ = [
    "CONJECTURE", "Check", "Resample", "SUITES", "Suite", "SuiteReport", "THEOREM_SUITES", "Violation",
    "channel_chi", "conjecture_sides", "fuzz_conjecture", "replay_conjecture", "run_suite", "s_tilde",
    "s_tilde_convexity_gap",
]

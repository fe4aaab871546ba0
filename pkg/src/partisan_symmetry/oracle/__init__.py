"""Exhaustive lattice search used to check the closed-form bounds."""
from .backend import BACKEND
from .enumerate import AchievabilityTable, BudgetExceeded, Cell, LatticeSpec, enumerate_extremes
from .scan import ZeroMask, compare_zero_mask, declination_zero_cells, zero_achievability_scan
from .structured import ProbeResult, probe
from .verify import (
    DEFAULT_SUITE,
    VerificationReport,
    ambiguity_text,
    probe_pairs,
    resolve_ambiguities,
    run_suite,
    verify_bounds,
)

__all__ = [
    "BACKEND", "AchievabilityTable", "BudgetExceeded", "Cell", "LatticeSpec", "enumerate_extremes",
    "ZeroMask", "compare_zero_mask", "declination_zero_cells", "zero_achievability_scan",
    "ProbeResult", "probe", "DEFAULT_SUITE", "VerificationReport", "ambiguity_text",
    "probe_pairs", "resolve_ambiguities", "run_suite", "verify_bounds",
]

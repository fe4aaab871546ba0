"""Recombination chain and short-burst runs on synthetic vote geographies."""
from .geography import KINDS, Geography, GeographyError, grid_edges, make_rng, synth_geography
from .partition import Partition, check_partition, is_connected, max_deviation
from .recom import MAX_TREE_DRAWS, balanced_cut, random_plan, recom_step, wilson_tree
from .shortburst import (
    METRICS,
    BucketStats,
    BurstRunSummary,
    PlanRecord,
    acceptability_band,
    efficiency_gap_votes,
    mm_envelope,
    short_burst,
    summarize_ranges,
)

__all__ = [
    "KINDS", "Geography", "GeographyError", "grid_edges", "make_rng", "synth_geography",
    "Partition", "check_partition", "is_connected", "max_deviation",
    "MAX_TREE_DRAWS", "balanced_cut", "random_plan", "recom_step", "wilson_tree",
    "METRICS", "BucketStats", "BurstRunSummary", "PlanRecord", "acceptability_band",
    "efficiency_gap_votes", "mm_envelope", "short_burst", "summarize_ranges",
]

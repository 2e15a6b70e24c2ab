"""Explicit construction and verification of the three-phase strategy."""

from .build import (
    PhaseRole,
    SchedulePlan,
    bc_plan,
    build_phase3_slot,
    build_phase_round_slot,
    extract_buffer_equations,
    permuted_plan,
    phi_matrix,
    repetition_plan,
    simulate,
    simulate_plan,
    single_round_extractable,
    standard_plan,
)
from .channel import ChannelPool, HistoryView
from .checks import (
    DecodabilityReport,
    check_decodability,
    rank_ratio_of,
    weighted_sum_bound,
    weighted_sum_ok,
)
from .transcript import (
    TRANSCRIPT_VERSION,
    BufferedEquation,
    Transcript,
    transcript_from_dict,
    transcript_from_json,
    transcript_to_dict,
    transcript_to_json,
)
from .variants import achieved_tuple, execute_plan, simulate_oneshot

__all__ = [
    "PhaseRole",
    "SchedulePlan",
    "ChannelPool",
    "HistoryView",
    "DecodabilityReport",
    "TRANSCRIPT_VERSION",
    "BufferedEquation",
    "Transcript",
    "achieved_tuple",
    "bc_plan",
    "build_phase3_slot",
    "build_phase_round_slot",
    "check_decodability",
    "execute_plan",
    "extract_buffer_equations",
    "permuted_plan",
    "phi_matrix",
    "rank_ratio_of",
    "repetition_plan",
    "simulate",
    "simulate_oneshot",
    "simulate_plan",
    "single_round_extractable",
    "standard_plan",
    "transcript_from_dict",
    "transcript_from_json",
    "transcript_to_dict",
    "transcript_to_json",
    "weighted_sum_bound",
    "weighted_sum_ok",
]

"""Exact decodability and converse checks on simulated transcripts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..fieldmath import hstack, rank_of
from ..params import gamma
from .transcript import Transcript


@dataclass(frozen=True)
class DecodabilityReport:
    """Per-condition pass/fail for the linear decoding requirements.

    precoder_rank: rank[V_ij] == m_ij for each message.
    rank_identity: per receiver, desired ranks plus interference rank add
        up to the rank of the full reception (alignment condition).
    projection: the image of each desired block on the orthogonal
        complement of its interference has full message dimension.
    """

    precoder_rank: dict[tuple[int, int], bool]
    rank_identity: dict[int, bool]
    projection: dict[tuple[int, int], bool]

    @property
    def all_pass(self) -> bool:
        return (
            all(self.precoder_rank.values())
            and all(self.rank_identity.values())
            and all(self.projection.values())
        )


def check_decodability(t: Transcript) -> DecodabilityReport:
    precoder_rank = {}
    for i in (1, 2):
        for j in (1, 2):
            precoder_rank[(i, j)] = t.stacked_precoder(i, j).rank() == t.msg_sizes[(i, j)]

    rank_identity = {}
    projection = {}
    for i in (1, 2):
        desired = {j: t.received_image(i, i, j) for j in (1, 2)}
        cross = {j: t.received_image(i, 3 - i, j) for j in (1, 2)}
        interference_rank = rank_of(cross[1], cross[2])
        full = hstack([desired[1], desired[2], cross[1], cross[2]])
        full_rank = full.rank()
        rank_identity[i] = (
            desired[1].rank() + desired[2].rank() + interference_rank == full_rank
        )
        for j in (1, 2):
            # [desired_j | interference_ij] is a column permutation of the
            # full reception, so the projection gain is full - interference
            interf = hstack([desired[3 - j], cross[1], cross[2]])
            projection[(i, j)] = full_rank - interf.rank() == t.msg_sizes[(i, j)]

    return DecodabilityReport(
        precoder_rank=precoder_rank,
        rank_identity=rank_identity,
        projection=projection,
    )


def rank_ratio_of(t: Transcript, i: int) -> Fraction:
    """Exact ratio of the message-i subspace dimensions at the two receivers."""
    return t.rank_ratio(i)


def weighted_sum_bound(t: Transcript, i: int) -> tuple[Fraction, Fraction]:
    """Finite-blocklength weighted message-size bound for receiver i:
    returns (lhs, rhs) of m_i1 + m_i2 + G_i (m_i'1 + m_i'2) <= T G_i min(N_i', M1+M2)."""
    g = gamma(t.config, i)
    lhs = (
        t.msg_sizes[(i, 1)]
        + t.msg_sizes[(i, 2)]
        + g * (t.msg_sizes[(3 - i, 1)] + t.msg_sizes[(3 - i, 2)])
    )
    rhs = t.t_total * g * min(t.config.n_other(i), t.config.m1 + t.config.m2)
    return Fraction(lhs), Fraction(rhs)


def weighted_sum_ok(t: Transcript) -> bool:
    return all(lhs <= rhs for lhs, rhs in (weighted_sum_bound(t, i) for i in (1, 2)))

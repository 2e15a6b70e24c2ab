"""Per-slot channel draws with delayed-CSIT access control.

Channels are revealed slot by slot; precoder builders only ever see a
HistoryView truncated strictly before the slot they are encoding, so a
builder that peeks at the current or a future slot fails structurally.
Degenerate (rank-deficient) draws are resampled once and counted; a second
failure aborts the trial, preserving almost-sure-genericity semantics
without silent bias.
"""

from __future__ import annotations

from .. import errors
from ..config import AntennaConfig
from ..fieldmath import FieldMatrix, FieldRng


class ChannelPool:
    def __init__(self, config: AntennaConfig, prime: int, *stream: int):
        self.config = config
        self.prime = prime
        self._rng = FieldRng(prime, *stream)
        self.slots: list[dict[tuple[int, int], FieldMatrix]] = []
        self.resamples = 0

    def _draw_full_rank(self, rows: int, cols: int) -> FieldMatrix:
        mat = self._rng.matrix(rows, cols)
        if min(rows, cols) > 0 and mat.rank() < min(rows, cols):
            self.resamples += 1
            mat = self._rng.matrix(rows, cols)
            if mat.rank() < min(rows, cols):
                raise errors.TrialAbort(
                    f"channel block {rows}x{cols} degenerate twice (prime {self.prime})"
                )
        return mat

    def reveal_slot(self) -> dict[tuple[int, int], FieldMatrix]:
        """Draw all four channel matrices for the next slot."""
        slot = {}
        for i in (1, 2):
            for j in (1, 2):
                slot[(i, j)] = self._draw_full_rank(self.config.n(i), self.config.m(j))
        self.slots.append(slot)
        return slot

    def history(self, limit: int) -> "HistoryView":
        return HistoryView(self, limit)


class HistoryView:
    """Channels up to (but excluding) slot *limit*; the causality tripwire."""

    def __init__(self, pool: ChannelPool, limit: int):
        self._pool = pool
        self.limit = limit

    def channel(self, t: int, i: int, j: int) -> FieldMatrix:
        if t >= self.limit:
            raise errors.CausalityViolation(
                f"slot-{self.limit} encoder requested channel of slot {t}"
            )
        return self._pool.slots[t][(i, j)]

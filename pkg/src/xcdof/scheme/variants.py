"""Single-slot strategies and corner-plan execution.

p2p, MAC-style, and no-CSIT corner points all reduce to one slot of fresh
symbols on distinct antennas; the bc and full-scheme corners reuse the
three-phase machinery with role assignments.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .. import errors
from ..config import AntennaConfig
from ..fieldmath import DEFAULT_PRIME, FieldMatrix
from ..region import AchievabilityPlan
from .build import bc_plan, permuted_plan, simulate_plan
from .channel import ChannelPool
from .transcript import Transcript


def simulate_oneshot(
    config: AntennaConfig,
    counts: dict[tuple[int, int], int],
    seed: int,
    prime: int = DEFAULT_PRIME,
    kind: str = "oneshot",
) -> Transcript:
    """One slot; transmitter j sends counts[(i, j)] fresh symbols per message
    on distinct antennas, no CSIT used."""
    for j in (1, 2):
        used = counts.get((1, j), 0) + counts.get((2, j), 0)
        if used > config.m(j):
            raise errors.ConfigError(
                f"transmitter {j} cannot carry {used} symbols on {config.m(j)} antennas"
            )
    msg_sizes = {(i, j): counts.get((i, j), 0) for i in (1, 2) for j in (1, 2)}
    precoders = {}
    for j in (1, 2):
        antenna = 0
        for i in (1, 2):
            arr = np.zeros((config.m(j), msg_sizes[(i, j)]), np.uint64)
            for c in range(msg_sizes[(i, j)]):
                arr[antenna, c] = 1
                antenna += 1
            precoders[(i, j)] = FieldMatrix(arr, prime)
    pool = ChannelPool(config, prime, seed)
    pool.reveal_slot()
    return Transcript(
        kind=kind,
        config=config,
        prime=prime,
        seed=seed,
        msg_sizes=msg_sizes,
        channels=pool.slots,
        precoders=[precoders],
        phase_of_slot=[1],
        resamples=pool.resamples,
    )


def execute_plan(
    m: int, n: int, plan: AchievabilityPlan, seed: int, prime: int = DEFAULT_PRIME
) -> Transcript:
    """Run the transmission strategy matching an achievability plan on the
    symmetric (m, n) network."""
    cfg = AntennaConfig(m, m, n, n)
    if plan.kind == "p2p":
        count = int(plan.expected[2 * (plan.rx - 1) + (plan.tx - 1)])
        return simulate_oneshot(cfg, {(plan.rx, plan.tx): count}, seed, prime, "p2p")
    if plan.kind in ("mac", "zero_csit"):
        counts = {
            (i, j): int(plan.expected[2 * (i - 1) + (j - 1)])
            for i in (1, 2)
            for j in (1, 2)
        }
        return simulate_oneshot(cfg, counts, seed, prime, plan.kind)
    if plan.kind == "bc":
        active = plan.leads if plan.leads else (plan.tx, plan.tx)
        return simulate_plan(bc_plan(cfg, active), seed, prime)
    if plan.kind == "full_scheme":
        return simulate_plan(permuted_plan(cfg, plan.leads), seed, prime)
    raise errors.ConfigError(f"unknown plan kind {plan.kind}")


def achieved_tuple(t: Transcript) -> tuple[Fraction, ...]:
    """Exact DoF tuple (m_ij / T) realized by a transcript."""
    return tuple(
        Fraction(t.msg_sizes[(i, j)], t.t_total) for i in (1, 2) for j in (1, 2)
    )

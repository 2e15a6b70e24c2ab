"""Classify antenna configurations by distributed-transmitter DoF loss.

A configuration loses sum DoF relative to transmitter cooperation exactly
when the distributed rank-ratio bound is strictly tighter than the
cooperative one for at least one receiver.  The table-driven regime
conditions and the direct rational comparison sum_dof < bc_sum_dof are two
independent routes to the same predicate; both are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import errors
from .config import AntennaConfig, require_normalized
from .params import bc_sum_dof, gamma_bounds, sum_dof


@dataclass(frozen=True)
class ReceiverLossDetail:
    bound_coop: Fraction
    bound_dist: Fraction
    strictly_tighter: bool  # distributed bound strictly tighter than cooperative
    regime: int | None  # 1, 2 or 3 per the tighter-bound regime table


@dataclass(frozen=True)
class LossClassification:
    config: tuple[int, int, int, int]
    per_receiver: dict[int, ReceiverLossDetail]
    in_e1: bool
    in_e2: bool
    sum_dof_value: Fraction
    bc_sum_dof_value: Fraction

    @property
    def loss(self) -> bool:
        return self.in_e1 or self.in_e2

    @property
    def consistent(self) -> bool:
        """Table-driven and formula-driven predicates agree."""
        return self.loss == (self.sum_dof_value < self.bc_sum_dof_value)


def _tighter_conditions(cfg: AntennaConfig, i: int) -> bool:
    """The three strict inequalities making the distributed bound bite."""
    no, n_i = cfg.n_other(i), cfg.n(i)
    q1, q2 = cfg.q(i, 1), cfg.q(i, 2)
    msum = cfg.m1 + cfg.m2
    ratio = Fraction(q1 * no + q2 * (no + n_i), q2 + no)
    return no < msum and ratio < msum and ratio < cfg.n1 + cfg.n2


def _regime_of(cfg: AntennaConfig, i: int) -> int | None:
    """Regime table for a strictly tighter distributed bound (m1 >= m2).

    The first regime's second condition is N_i' + N_i/2 < M1 + M2, as the
    displayed strict inequalities imply for max(M1, M2) <= N_i'.
    """
    no, n_i = cfg.n_other(i), cfg.n(i)
    m1, m2 = cfg.m1, cfg.m2
    msum = m1 + m2
    if m2 <= m1 <= no < msum and Fraction(2 * no + n_i, 2) < msum:
        return 1
    if m2 <= no < m1 and m1 < cfg.n1 + cfg.n2 < m1 + 2 * m2:
        return 2
    if no < m2 <= m1 and n_i < msum and m1 < cfg.n1 + cfg.n2:
        return 3
    return None


def classify_loss(config: AntennaConfig) -> LossClassification:
    cfg = require_normalized(config)
    per = {}
    for i in (1, 2):
        coop, dist = gamma_bounds(cfg, i)
        tighter = _tighter_conditions(cfg, i)
        regime = _regime_of(cfg, i)
        if tighter != (regime is not None):
            raise errors.InternalInconsistency(
                f"regime table disagrees with tightness conditions for {cfg} i={i}"
            )
        per[i] = ReceiverLossDetail(
            bound_coop=coop,
            bound_dist=dist,
            strictly_tighter=tighter,
            regime=regime,
        )
    return LossClassification(
        config=cfg.astuple(),
        per_receiver=per,
        in_e1=per[1].strictly_tighter,
        in_e2=per[2].strictly_tighter,
        sum_dof_value=sum_dof(cfg),
        bc_sum_dof_value=bc_sum_dof(cfg),
    )


GRID_MODES = ("symmetric", "m1_eq_m2", "n1_eq_n2")

# CSV columns for the loss grids
GRID_HEADER = "m1,m2,n1,n2,loss,regime_i1,regime_i2,sum_dof,bc_sum_dof"


def _row(cls: LossClassification) -> str:
    r1 = cls.per_receiver[1].regime
    r2 = cls.per_receiver[2].regime
    return ",".join(
        [
            *map(str, cls.config),
            "1" if cls.loss else "0",
            "" if r1 is None else str(r1),
            "" if r2 is None else str(r2),
            str(cls.sum_dof_value),
            str(cls.bc_sum_dof_value),
        ]
    )


def loss_grid(mode: str, fixed: int, limit: int) -> list[str]:
    """CSV rows sweeping antenna configurations.

    symmetric: m1 = m2 = m, n1 = n2 = n for 1 <= m, n <= limit (fixed unused).
    m1_eq_m2: m1 = m2 = fixed, receivers sweep 1..limit.
    n1_eq_n2: n1 = n2 = fixed, transmitters sweep 1..limit (normalized).
    """
    if mode not in GRID_MODES:
        raise errors.ConfigError(f"unknown grid mode {mode!r}")
    if limit < 1 or (mode != "symmetric" and fixed < 1):
        raise errors.ConfigError("grid bounds must be positive")
    rows = [GRID_HEADER]
    if mode == "symmetric":
        it = (
            AntennaConfig(m, m, n, n)
            for m in range(1, limit + 1)
            for n in range(1, limit + 1)
        )
    elif mode == "m1_eq_m2":
        it = (
            AntennaConfig(fixed, fixed, n1, n2)
            for n1 in range(1, limit + 1)
            for n2 in range(1, limit + 1)
        )
    else:
        it = (
            AntennaConfig(m1, m2, fixed, fixed)
            for m1 in range(1, limit + 1)
            for m2 in range(1, m1 + 1)
        )
    rows.extend(_row(classify_loss(cfg)) for cfg in it)
    return rows

"""Three-phase transmission strategy as explicit precoding matrices.

Phase i (i = 1, 2) serves receiver i over kappa_i rounds of s_i slots.
The lead transmitter puts fresh symbols on every antenna each slot; the
follower sends fresh symbols only in the first xi_i slots and afterwards
retransmits rows of the overheard-image operator of its own round symbols
(available through delayed CSIT), which pins the dimension of its image at
the unintended receiver.  Phase 3 delivers equations that the unintended
receiver could form and the intended one still needs, pairing one
buffered equation from each of phases 1 and 2 per used antenna.

Role assignments are pluggable: the standard schedule (transmitter 1
leads both phases), a single-active-transmitter variant, and per-phase
lead permutations for symmetric networks all share this machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import errors
from ..config import AntennaConfig, require_normalized
from ..fieldmath import (
    FieldMatrix,
    RowBasis,
    left_kernel_against,
    vstack,
)
from ..params import SchemeParams, scheme_params
from .channel import ChannelPool, HistoryView
from .transcript import BufferedEquation, Transcript


@dataclass(frozen=True)
class PhaseRole:
    lead: int  # transmitter sending fresh symbols every slot of the phase
    follower_active: bool


@dataclass(frozen=True)
class SchedulePlan:
    kind: str
    config: AntennaConfig  # physical network
    params: SchemeParams  # may be computed on a reduced config (bc variant)
    roles: tuple[PhaseRole, PhaseRole]
    retransmit: str = "aligned"  # or "verbatim" (no delayed CSIT in rounds)

    def role(self, i: int) -> PhaseRole:
        return self.roles[i - 1]

    def message_sizes(self) -> dict[tuple[int, int], int]:
        sizes = {(i, j): 0 for i in (1, 2) for j in (1, 2)}
        for i in (1, 2):
            ph = self.params.phase(i)
            role = self.role(i)
            sizes[(i, role.lead)] = ph.kappa * ph.tx1_syms
            if role.follower_active:
                sizes[(i, 3 - role.lead)] = ph.kappa * ph.tx2_syms
        return sizes


def standard_plan(config: AntennaConfig) -> SchedulePlan:
    cfg = require_normalized(config)
    sp = scheme_params(cfg)
    roles = tuple(
        PhaseRole(lead=1, follower_active=sp.phase(i).phi_mode) for i in (1, 2)
    )
    return SchedulePlan(kind="scheme", config=cfg, params=sp, roles=roles)


def bc_plan(config: AntennaConfig, active: tuple[int, int]) -> SchedulePlan:
    """One transmitter active per phase; the other stays silent throughout.

    The schedule constants come from the single-transmitter reduction of
    the network (the silent transmitter contributes no antennas).
    """
    cfg = require_normalized(config)
    for i, a in zip((1, 2), active):
        if cfg.m(a) != cfg.m1:
            raise errors.ConfigError(
                "active transmitters must have the full antenna count "
                f"(phase {i} active tx{a} has {cfg.m(a)} < {cfg.m1})"
            )
    sp = scheme_params(AntennaConfig(cfg.m1, 0, cfg.n1, cfg.n2))
    roles = tuple(PhaseRole(lead=a, follower_active=False) for a in active)
    return SchedulePlan(kind="bc", config=cfg, params=sp, roles=roles)


def permuted_plan(config: AntennaConfig, leads: tuple[int, int]) -> SchedulePlan:
    """Standard schedule with a per-phase choice of lead transmitter;
    requires equal transmitter antenna counts."""
    cfg = require_normalized(config)
    if cfg.m1 != cfg.m2:
        raise errors.ConfigError("role permutation requires m1 == m2")
    sp = scheme_params(cfg)
    roles = tuple(
        PhaseRole(lead=leads[i - 1], follower_active=sp.phase(i).phi_mode)
        for i in (1, 2)
    )
    return SchedulePlan(kind="scheme-permuted", config=cfg, params=sp, roles=roles)


def repetition_plan(config: AntennaConfig) -> SchedulePlan:
    """Follower repeats its fresh symbols verbatim instead of retransmitting
    overheard-image rows; used to demonstrate the buffered-equation gain."""
    plan = standard_plan(config)
    return SchedulePlan(
        kind="scheme-verbatim",
        config=plan.config,
        params=plan.params,
        roles=plan.roles,
        retransmit="verbatim",
    )


# -- round construction ---------------------------------------------------------


def phi_matrix(round_channels: list[FieldMatrix]) -> FieldMatrix:
    """Block matrix mapping the follower's fresh round symbols to the
    unintended receiver's observations of them, one band per fresh slot.

    Input: the unintended receiver's channel blocks for the first xi slots
    of the round (each N x M2).  Output is (N*xi) x (M2*xi) with block l
    occupying rows [l*N, (l+1)*N) and columns [l*M2, (l+1)*M2); its rank is
    generically xi * min(M2, N).
    """
    if not round_channels:
        raise errors.ConfigError("need at least one fresh slot")
    n = round_channels[0].rows
    m2 = round_channels[0].cols
    xi = len(round_channels)
    p = round_channels[0].prime
    out = np.zeros((n * xi, m2 * xi), np.uint64)
    for l, g in enumerate(round_channels):
        if g.rows != n or g.cols != m2:
            raise errors.ConfigError("inconsistent channel block shapes")
        out[l * n : (l + 1) * n, l * m2 : (l + 1) * m2] = g.data
    return FieldMatrix(out, p)


def build_phase_round_slot(
    plan: SchedulePlan,
    i: int,
    k: int,
    t0: int,
    offset: int,
    history: HistoryView,
    msg_sizes: dict[tuple[int, int], int],
    prime: int,
) -> dict[tuple[int, int], FieldMatrix]:
    """Precoders for one slot of round k of phase i.

    All channel access goes through *history*, which exposes only slots
    strictly before the current one.
    """
    cfg = plan.config
    ph = plan.params.phase(i)
    role = plan.role(i)
    lead, fol = role.lead, 3 - role.lead
    rx_other = 3 - i

    precoders = {
        (ii, jj): np.zeros((cfg.m(jj), msg_sizes[(ii, jj)]), np.uint64)
        for ii in (1, 2)
        for jj in (1, 2)
    }

    # lead transmitter: fresh symbols on distinct antennas
    lead_base = k * ph.tx1_syms
    if ph.phi_mode:
        for a in range(cfg.m(lead)):
            precoders[(i, lead)][a, lead_base + offset * cfg.m(lead) + a] = 1
    else:
        # single-slot round; lead sends min(m1, n1+n2) symbols
        for a in range(ph.tx1_syms):
            precoders[(i, lead)][a, lead_base + a] = 1

    if role.follower_active and ph.tx2_syms > 0:
        m_f = cfg.m(fol)
        fol_base = k * ph.tx2_syms
        if offset < ph.xi:
            for a in range(m_f):
                precoders[(i, fol)][a, fol_base + offset * m_f + a] = 1
        else:
            if plan.retransmit == "aligned":
                blocks = [
                    history.channel(t0 + l, rx_other, fol) for l in range(ph.xi)
                ]
                phi = phi_matrix(blocks)
                n_rows = ph.xi * cfg.n(rx_other)
                for a in range(m_f):
                    row = phi.data[((offset - ph.xi) * m_f + a) % n_rows]
                    precoders[(i, fol)][a, fol_base : fol_base + ph.tx2_syms] = row
            else:  # verbatim repetition of the fresh symbols
                for a in range(m_f):
                    sym = ((offset - ph.xi) * m_f + a) % ph.tx2_syms
                    precoders[(i, fol)][a, fol_base + sym] = 1

    return {key: FieldMatrix(arr, prime) for key, arr in precoders.items()}


# -- buffered-equation extraction ------------------------------------------------


def round_reception_blocks(
    plan: SchedulePlan,
    i: int,
    k: int,
    t0: int,
    channels,
    precoders,
) -> tuple[FieldMatrix, FieldMatrix]:
    """The unintended receiver's images of the round's own symbols:
    A for the lead transmitter, B for the follower (zero-width if silent)."""
    cfg = plan.config
    ph = plan.params.phase(i)
    role = plan.role(i)
    lead, fol = role.lead, 3 - role.lead
    rx = 3 - i
    lead_cols = slice(k * ph.tx1_syms, (k + 1) * ph.tx1_syms)
    fol_cols = slice(k * ph.tx2_syms, (k + 1) * ph.tx2_syms)

    a_parts, b_parts = [], []
    for o in range(ph.s):
        t = t0 + o
        g_lead = channels[t][(rx, lead)]
        v_lead = FieldMatrix(precoders[t][(i, lead)].data[:, lead_cols], g_lead.prime)
        a_parts.append(g_lead.mul(v_lead))
        if role.follower_active and ph.tx2_syms > 0:
            g_fol = channels[t][(rx, fol)]
            v_fol = FieldMatrix(precoders[t][(i, fol)].data[:, fol_cols], g_fol.prime)
            b_parts.append(g_fol.mul(v_fol))
    a = vstack(a_parts)
    b = (
        vstack(b_parts)
        if b_parts
        else FieldMatrix.zeros(a.rows, 0, a.prime)
    )
    return a, b


def round_owner_takes(plan: SchedulePlan, i: int) -> list[tuple[int, int]]:
    """Per-round (lead, follower) equation counts for phase i.

    The lead transmitter's pool is preferred, but its aggregate share is
    capped so that the phase-3 schedule can ship every equation within the
    per-slot antenna limits (at most M_j per transmitter per phase per
    slot).  Raises CapacityViolation when no split fits, which means the
    published blocklength cannot carry the buffered equations at all.
    """
    cfg = plan.config
    ph = plan.params.phase(i)
    lam, kappa, t3 = ph.lambda_buf, ph.kappa, plan.params.t_phase3
    if lam == 0 or kappa == 0:
        return []
    b1_cap, b2_cap = ph.owner_split
    lead, fol = plan.role(i).lead, 3 - plan.role(i).lead
    low = max(0, lam - b2_cap)
    high = min(b1_cap, lam)
    t1_total_max = min(kappa * high, cfg.m(lead) * t3)
    t1_total_min = max(kappa * low, kappa * lam - cfg.m(fol) * t3)
    if t1_total_min > t1_total_max:
        raise errors.CapacityViolation(
            f"phase {i}: {kappa * lam} buffered equations cannot be scheduled "
            f"in {t3} slots within per-transmitter antenna limits"
        )
    takes = []
    t1_rem = t1_total_max
    for r in range(kappa, 0, -1):
        t1 = max(low, min(high, t1_rem - low * (r - 1)))
        takes.append((t1, lam - t1))
        t1_rem -= t1
    return takes


def extract_buffer_equations(
    plan: SchedulePlan,
    i: int,
    k: int,
    t0: int,
    channels,
    precoders,
    msg_sizes,
    take: tuple[int, int] | None = None,
) -> list[BufferedEquation]:
    """Single-source equations the unintended receiver can form from round k
    of phase i and the intended receiver still needs: exactly lambda_buf of
    them, drawn from the lead transmitter's pool first unless a specific
    owner split is scheduled."""
    ph = plan.params.phase(i)
    lam = ph.lambda_buf
    if lam == 0 or ph.kappa == 0:
        return []
    role = plan.role(i)
    lead, fol = role.lead, 3 - role.lead
    a, b = round_reception_blocks(plan, i, k, t0, channels, precoders)
    b1_cap, b2_cap = ph.owner_split
    if take is None:
        take = (min(b1_cap, lam), lam - min(b1_cap, lam))
    lead_take, fol_take = take
    if fol_take > b2_cap or lead_take > b1_cap:
        raise errors.InternalInconsistency(
            f"owner split cannot supply {lam} equations for phase {i}"
        )

    out: list[BufferedEquation] = []

    def collect(source_rows: FieldMatrix, need: int, owner: int, width: int, base: int):
        basis = RowBasis(source_rows.cols, source_rows.prime)
        taken = 0
        for r in range(source_rows.rows):
            if taken == need:
                break
            row = source_rows.data[r]
            if basis.insert(row):
                full = np.zeros(width, np.uint64)
                full[base : base + source_rows.cols] = row
                out.append(
                    BufferedEquation(phase=i, owner=owner, round_index=k, row=full)
                )
                taken += 1
        if taken < need:
            raise errors.BufferDeficit(
                f"phase {i} round {k}: only {taken} of {need} independent "
                f"equations for transmitter {owner}"
            )

    if lead_take:
        l1 = left_kernel_against(a, b)
        collect(
            l1.mul(a),
            lead_take,
            lead,
            msg_sizes[(i, lead)],
            k * ph.tx1_syms,
        )
    if fol_take:
        l2 = left_kernel_against(b, a)
        collect(
            l2.mul(b),
            fol_take,
            fol,
            msg_sizes[(i, fol)],
            k * ph.tx2_syms,
        )
    return out


def single_round_extractable(
    config: AntennaConfig, seed: int, prime: int, retransmit: str = "aligned"
) -> int:
    """Independent single-source equations the unintended receiver can form
    from one phase-1 round, counted by rank (no schedule cap applied)."""
    plan = repetition_plan(config) if retransmit == "verbatim" else standard_plan(config)
    ph = plan.params.phase(1)
    role = plan.role(1)
    msg_sizes = {(i, j): 0 for i in (1, 2) for j in (1, 2)}
    msg_sizes[(1, role.lead)] = ph.tx1_syms
    if role.follower_active:
        msg_sizes[(1, 3 - role.lead)] = ph.tx2_syms
    pool = ChannelPool(config, prime, seed)
    precoders = []
    for o in range(ph.s):
        t = len(pool.slots)
        precoders.append(
            build_phase_round_slot(plan, 1, 0, 0, o, pool.history(t), msg_sizes, prime)
        )
        pool.reveal_slot()
    a, b = round_reception_blocks(plan, 1, 0, 0, pool.slots, precoders)
    lead_count = left_kernel_against(a, b).mul(a).rank()
    fol_count = left_kernel_against(b, a).mul(b).rank() if b.cols else 0
    return lead_count + fol_count


# -- phase 3 ---------------------------------------------------------------------


def _owner_queues(buffer: list[BufferedEquation]) -> dict[int, list[BufferedEquation]]:
    qs: dict[int, list[BufferedEquation]] = {1: [], 2: []}
    for eq in buffer:
        qs[eq.owner].append(eq)
    return qs


def _slot_split(c: int, rem1: int, rem2: int, cap1: int, cap2: int, slots_left: int):
    """Per-slot owner counts: fill transmitter 1 first, subject to both
    owners' remainders fitting in the remaining slots."""
    low = max(0, c - min(cap2, rem2), rem1 - cap1 * (slots_left - 1))
    high = min(cap1, rem1, c - max(0, rem2 - cap2 * (slots_left - 1)))
    if low > high:
        raise errors.CapacityViolation(
            f"cannot place {c} equations per slot within antenna limits"
        )
    take1 = high
    return take1, c - take1


def build_phase3_slot(
    plan: SchedulePlan,
    queues: dict[int, dict[int, list[BufferedEquation]]],
    slots_left: int,
    msg_sizes,
) -> dict[tuple[int, int], FieldMatrix]:
    """Dequeue and place one slot's worth of buffered equations.

    For each phase, min(total antennas, that receiver's antennas) equations
    are sent; each used antenna of a transmitter carries the superposition
    of its assigned phase-1 and phase-2 equations.
    """
    cfg = plan.config
    pcfg = plan.params.config
    arrs = {
        (ii, jj): np.zeros((cfg.m(jj), msg_sizes[(ii, jj)]), np.uint64)
        for ii in (1, 2)
        for jj in (1, 2)
    }
    for i in (1, 2):
        c = min(pcfg.m1 + pcfg.m2, cfg.n(i))
        q1, q2 = queues[i][1], queues[i][2]
        take1, take2 = _slot_split(
            c, len(q1), len(q2), cfg.m1, cfg.m2, slots_left
        )
        for owner, take in ((1, take1), (2, take2)):
            q = queues[i][owner]
            for a in range(take):
                eq = q.pop(0)
                arrs[(i, owner)][a, :] = eq.row
    return arrs


# -- full simulation -------------------------------------------------------------


def simulate_plan(plan: SchedulePlan, seed: int, prime: int) -> Transcript:
    cfg = plan.config
    sp = plan.params
    msg_sizes = plan.message_sizes()
    pool = ChannelPool(cfg, prime, seed)
    precoders: list[dict[tuple[int, int], FieldMatrix]] = []
    phase_of_slot: list[int] = []
    round_starts: list[tuple[int, int, int]] = []  # (phase, round, t0)

    for i in (1, 2):
        ph = sp.phase(i)
        for k in range(ph.kappa):
            t0 = len(pool.slots)
            round_starts.append((i, k, t0))
            for o in range(ph.s):
                t = len(pool.slots)
                slot_pre = build_phase_round_slot(
                    plan, i, k, t0, o, pool.history(t), msg_sizes, prime
                )
                precoders.append(slot_pre)
                phase_of_slot.append(i)
                pool.reveal_slot()

    takes = {i: round_owner_takes(plan, i) for i in (1, 2)}
    buffers: dict[int, list[BufferedEquation]] = {1: [], 2: []}
    for i, k, t0 in round_starts:
        take = takes[i][k] if takes[i] else None
        buffers[i].extend(
            extract_buffer_equations(
                plan, i, k, t0, pool.slots, precoders, msg_sizes, take
            )
        )

    queues = {i: _owner_queues(buffers[i]) for i in (1, 2)}
    for s3 in range(sp.t_phase3):
        arrs = build_phase3_slot(plan, queues, sp.t_phase3 - s3, msg_sizes)
        precoders.append(
            {key: FieldMatrix(arr, prime) for key, arr in arrs.items()}
        )
        phase_of_slot.append(3)
        pool.reveal_slot()

    for i in (1, 2):
        if queues[i][1] or queues[i][2]:
            raise errors.CapacityViolation(f"phase-{i} buffer not drained")

    assert len(pool.slots) == sp.t_total
    return Transcript(
        kind=plan.kind,
        config=cfg,
        prime=prime,
        seed=seed,
        msg_sizes=msg_sizes,
        channels=pool.slots,
        precoders=precoders,
        phase_of_slot=phase_of_slot,
        params=sp,
        buffers=buffers,
        resamples=pool.resamples,
    )


def simulate(config: AntennaConfig, seed: int, prime: int | None = None) -> Transcript:
    """Run the full three-phase strategy over fresh per-slot channels."""
    from ..fieldmath import DEFAULT_PRIME

    return simulate_plan(standard_plan(config), seed, prime or DEFAULT_PRIME)

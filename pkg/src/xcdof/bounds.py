"""Monte Carlo and structural verification of the converse machinery.

Three rank inequalities are exercised over seeded random strategies (and
the scheme itself): the X-channel rank-ratio bound, its broadcast-channel
counterpart, and the normalized rank-difference bound.  Violations are
counted against exact rational thresholds; a suspected violation is
re-examined under a second prime so field collisions (Schwartz-Zippel
failures) are never reported as genuine.

The structural spot check walks a transcript slot by slot: whenever the
observing receiver's rank increment falls short of its antenna count, the
transmitted precoders must already be largely recoverable from its past
rows (the dimension of the two hide-able row spaces must exceed
M1 + M2 - N2); the complement event has probability zero.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import errors
from .config import AntennaConfig
from .fieldmath import (
    DEFAULT_PRIME,
    SECOND_PRIME,
    FieldMatrix,
    FieldRng,
    derive_key,
    rank_of,
)
from .params import gamma
from .scheme.build import simulate_plan, standard_plan
from .scheme.channel import ChannelPool
from .scheme.transcript import Transcript

MODES = ("oblivious_random", "delayed_adaptive_random", "paper_scheme")


@dataclass
class VerificationReport:
    kind: str
    config: tuple[int, int, int, int]
    t_horizon: int
    trials: int = 0
    violations: int = 0
    tightness_hits: int = 0
    resamples: int = 0
    collision_clears: int = 0  # suspected violations cleared under prime 2
    max_ratio: dict[int, Fraction] = field(default_factory=dict)

    def note_ratio(self, i: int, ratio: Fraction) -> None:
        if i not in self.max_ratio or ratio > self.max_ratio[i]:
            self.max_ratio[i] = ratio

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        assert (self.kind, self.config, self.t_horizon) == (
            other.kind,
            other.config,
            other.t_horizon,
        )
        self.trials += other.trials
        self.violations += other.violations
        self.tightness_hits += other.tightness_hits
        self.resamples += other.resamples
        self.collision_clears += other.collision_clears
        for i, r in other.max_ratio.items():
            self.note_ratio(i, r)
        return self

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "config": list(self.config),
            "T": self.t_horizon,
            "trials": self.trials,
            "violations": self.violations,
            "tightness_hits": self.tightness_hits,
            "resamples": self.resamples,
            "collision_clears": self.collision_clears,
            "max_ratio": {str(i): str(r) for i, r in sorted(self.max_ratio.items())},
        }


# -- strategy generators ---------------------------------------------------------


def random_transcript(
    config: AntennaConfig,
    t_horizon: int,
    mode: str,
    seed: int,
    trial: int,
    prime: int = DEFAULT_PRIME,
) -> Transcript:
    """A full transcript under one of the random strategy modes.

    oblivious_random: precoders drawn independently of all channels, one
        fresh M_j x (M_j * T) precoder per slot.
    delayed_adaptive_random: V_ij[t] = R_0 + sum_{s<t} R_s G_{i'j}[s] with
        seeded random coefficient matrices; channel access runs through the
        causality-checked history view.
    """
    if mode == "paper_scheme":
        return simulate_plan(
            standard_plan(config), derive_key(seed, trial) & ((1 << 63) - 1), prime
        )
    if mode not in MODES:
        raise errors.ConfigError(f"unknown strategy mode {mode!r}")
    pool = ChannelPool(config, prime, seed, trial, 0)
    rng = FieldRng(prime, seed, trial, 1)
    if mode == "oblivious_random":
        msg_sizes = {
            (i, j): config.m(j) * t_horizon for i in (1, 2) for j in (1, 2)
        }
    else:
        msg_sizes = {(i, j): config.m(j) for i in (1, 2) for j in (1, 2)}

    precoders = []
    for t in range(t_horizon):
        hist = pool.history(t)
        slot = {}
        for i in (1, 2):
            for j in (1, 2):
                m_j, m_ij = config.m(j), msg_sizes[(i, j)]
                if mode == "oblivious_random":
                    slot[(i, j)] = rng.matrix(m_j, m_ij)
                else:
                    acc = rng.matrix(m_j, m_ij).data.copy()
                    for s in range(t):
                        coeff = rng.matrix(m_j, config.n_other(i))
                        g_past = hist.channel(s, 3 - i, j)
                        acc_add = coeff.mul(g_past).data
                        acc = np.where(
                            acc + acc_add >= np.uint64(prime),
                            acc + acc_add - np.uint64(prime),
                            acc + acc_add,
                        )
                    slot[(i, j)] = FieldMatrix(acc, prime)
        precoders.append(slot)
        pool.reveal_slot()
    return Transcript(
        kind=mode,
        config=config,
        prime=prime,
        seed=seed,
        msg_sizes=msg_sizes,
        channels=pool.slots,
        precoders=precoders,
        phase_of_slot=[0] * t_horizon,
        resamples=pool.resamples,
    )


# -- lemma verifications -----------------------------------------------------------


def _ratio_pair(t: Transcript, i: int) -> Fraction | None:
    num = rank_of(t.received_image(i, i, 1), t.received_image(i, i, 2))
    den = rank_of(t.received_image(3 - i, i, 1), t.received_image(3 - i, i, 2))
    if den == 0:
        return None
    return Fraction(num, den)


def _lemma1_trial(args) -> VerificationReport:
    cfg_t, t_horizon, mode, seed, trial, prime = args
    config = AntennaConfig(*cfg_t)
    bounds = {i: gamma(config, i) for i in (1, 2)}
    rep = VerificationReport("lemma1", cfg_t, t_horizon, trials=1)
    t = random_transcript(config, t_horizon, mode, seed, trial, prime)
    rep.resamples += t.resamples
    for i in (1, 2):
        ratio = _ratio_pair(t, i)
        if ratio is None:
            continue
        rep.note_ratio(i, ratio)
        if ratio == bounds[i]:
            rep.tightness_hits += 1
        if ratio > bounds[i]:
            t2 = random_transcript(config, t_horizon, mode, seed, trial, SECOND_PRIME)
            r2 = _ratio_pair(t2, i)
            if r2 is not None and r2 > bounds[i]:
                rep.violations += 1
            else:
                rep.collision_clears += 1
    return rep


def _lemma2_trial(args) -> VerificationReport:
    cfg_t, t_horizon, mode, seed, trial, prime = args
    config = AntennaConfig(*cfg_t)
    bounds = {
        i: Fraction(
            min(max(config.m1, config.n_other(i)), config.n1 + config.n2),
            config.n_other(i),
        )
        for i in (1, 2)
    }
    rep = VerificationReport("lemma2", cfg_t, t_horizon, trials=1)
    t = random_transcript(config, t_horizon, mode, seed, trial, prime)
    rep.resamples += t.resamples
    for i in (1, 2):
        num = t.received_image(i, 1, 1).rank()
        den = t.received_image(3 - i, 1, 1).rank()
        if den == 0:
            continue
        ratio = Fraction(num, den)
        rep.note_ratio(i, ratio)
        if ratio == bounds[i]:
            rep.tightness_hits += 1
        if ratio > bounds[i]:
            t2 = random_transcript(config, t_horizon, mode, seed, trial, SECOND_PRIME)
            num2 = t2.received_image(i, 1, 1).rank()
            den2 = t2.received_image(3 - i, 1, 1).rank()
            if den2 and Fraction(num2, den2) > bounds[i]:
                rep.violations += 1
            else:
                rep.collision_clears += 1
    return rep


def _lemma3_violates(t: Transcript, i: int) -> bool:
    cfg = t.config
    r_own = rank_of(t.received_image(i, i, 1), t.received_image(i, i, 2))
    r_cross = rank_of(t.received_image(3 - i, i, 1), t.received_image(3 - i, i, 2))
    r_c1 = t.received_image(3 - i, i, 1).rank()
    r_c2 = t.received_image(3 - i, i, 2).rank()
    lhs = Fraction(r_own, cfg.n(i)) - Fraction(r_cross, cfg.n_other(i))
    rhs = Fraction(2 * r_cross - r_c1 - r_c2, cfg.n(i))
    return lhs > rhs


def _lemma3_trial(args) -> VerificationReport:
    cfg_t, t_horizon, mode, seed, trial, prime = args
    config = AntennaConfig(*cfg_t)
    rep = VerificationReport("lemma3", cfg_t, t_horizon, trials=1)
    t = random_transcript(config, t_horizon, mode, seed, trial, prime)
    rep.resamples += t.resamples
    for i in (1, 2):
        if _lemma3_violates(t, i):
            t2 = random_transcript(config, t_horizon, mode, seed, trial, SECOND_PRIME)
            if _lemma3_violates(t2, i):
                rep.violations += 1
            else:
                rep.collision_clears += 1
    return rep


def _run_trials(kind, trial_fn, base_args, trials, jobs) -> VerificationReport:
    cfg_t, t_horizon = base_args[0], base_args[1]
    report = VerificationReport(kind, cfg_t, t_horizon)
    arglist = [base_args[:4] + (trial, base_args[4]) for trial in range(trials)]
    if jobs <= 1:
        for args in arglist:
            report.merge(trial_fn(args))
        return report
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for rep in pool.map(trial_fn, arglist, chunksize=max(1, trials // (4 * jobs))):
            report.merge(rep)
    return report


def verify_lemma1(
    config: AntennaConfig,
    t_horizon: int,
    trials: int,
    mode: str,
    seed: int,
    prime: int = DEFAULT_PRIME,
    jobs: int = 1,
) -> VerificationReport:
    """Check the per-receiver rank-ratio bound over seeded strategies."""
    args = (config.astuple(), t_horizon, mode, seed, prime)
    return _run_trials("lemma1", _lemma1_trial, args, trials, jobs)


def verify_lemma2(
    bc_m: int,
    n1: int,
    n2: int,
    t_horizon: int,
    trials: int,
    mode: str = "oblivious_random",
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
    jobs: int = 1,
) -> VerificationReport:
    """Broadcast-channel rank-ratio bound: a single transmitter with bc_m
    antennas, realized as an antenna configuration with m2 = 0."""
    if bc_m < 1:
        raise errors.ConfigError("bc transmitter needs at least one antenna")
    config = AntennaConfig(bc_m, 0, n1, n2)
    args = (config.astuple(), t_horizon, mode, seed, prime)
    return _run_trials("lemma2", _lemma2_trial, args, trials, jobs)


def verify_lemma3(
    config: AntennaConfig,
    t_horizon: int,
    trials: int,
    mode: str,
    seed: int,
    prime: int = DEFAULT_PRIME,
    jobs: int = 1,
) -> VerificationReport:
    """Normalized rank-difference bound over seeded strategies."""
    args = (config.astuple(), t_horizon, mode, seed, prime)
    return _run_trials("lemma3", _lemma3_trial, args, trials, jobs)


def _combined_trial(args) -> tuple[VerificationReport, VerificationReport]:
    """One transcript feeding both the rank-ratio and rank-difference checks."""
    cfg_t, t_horizon, mode, seed, trial, prime = args
    config = AntennaConfig(*cfg_t)
    bounds = {i: gamma(config, i) for i in (1, 2)}
    rep1 = VerificationReport("lemma1", cfg_t, t_horizon, trials=1)
    rep3 = VerificationReport("lemma3", cfg_t, t_horizon, trials=1)
    t = random_transcript(config, t_horizon, mode, seed, trial, prime)
    rep1.resamples = rep3.resamples = t.resamples
    t2 = None
    for i in (1, 2):
        ratio = _ratio_pair(t, i)
        if ratio is not None:
            rep1.note_ratio(i, ratio)
            if ratio == bounds[i]:
                rep1.tightness_hits += 1
            if ratio > bounds[i]:
                t2 = t2 or random_transcript(
                    config, t_horizon, mode, seed, trial, SECOND_PRIME
                )
                r2 = _ratio_pair(t2, i)
                if r2 is not None and r2 > bounds[i]:
                    rep1.violations += 1
                else:
                    rep1.collision_clears += 1
        if _lemma3_violates(t, i):
            t2 = t2 or random_transcript(
                config, t_horizon, mode, seed, trial, SECOND_PRIME
            )
            if _lemma3_violates(t2, i):
                rep3.violations += 1
            else:
                rep3.collision_clears += 1
    return rep1, rep3


def verify_rank_inequalities(
    config: AntennaConfig,
    t_horizon: int,
    trials: int,
    mode: str,
    seed: int,
    prime: int = DEFAULT_PRIME,
    jobs: int = 1,
) -> tuple[VerificationReport, VerificationReport]:
    """Rank-ratio and rank-difference checks sharing one set of transcripts."""
    cfg_t = config.astuple()
    rep1 = VerificationReport("lemma1", cfg_t, t_horizon)
    rep3 = VerificationReport("lemma3", cfg_t, t_horizon)
    arglist = [(cfg_t, t_horizon, mode, seed, trial, prime) for trial in range(trials)]
    if jobs <= 1:
        for args in arglist:
            r1, r3 = _combined_trial(args)
            rep1.merge(r1)
            rep3.merge(r3)
        return rep1, rep3
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for r1, r3 in pool.map(
            _combined_trial, arglist, chunksize=max(1, trials // (4 * jobs))
        ):
            rep1.merge(r1)
            rep3.merge(r3)
    return rep1, rep3


# -- structural spot check ----------------------------------------------------------


@dataclass
class SpotCheckReport:
    config: tuple[int, int, int, int]
    transcripts: int = 0
    slots_in_scope: int = 0  # slots where the rank increment fell short
    counterexamples: list = field(default_factory=list)

    def merge(self, other: "SpotCheckReport") -> "SpotCheckReport":
        self.transcripts += other.transcripts
        self.slots_in_scope += other.slots_in_scope
        self.counterexamples.extend(other.counterexamples)
        return self


def _hideable_dim(v_slot: FieldMatrix, pad_left: int, pad_right: int, prior) -> int:
    """dim{w : [0 | w V | 0] lies in the row span of prior}."""
    m_j = v_slot.rows
    if m_j == 0:
        return 0
    padded = np.zeros((m_j, pad_left + v_slot.cols + pad_right), np.uint64)
    padded[:, pad_left : pad_left + v_slot.cols] = v_slot.data
    if prior is None:
        stacked = FieldMatrix(padded, v_slot.prime)
        return m_j - stacked.rank()
    stack = np.concatenate([padded, prior.data], axis=0)
    joint = FieldMatrix(stack, v_slot.prime).rank()
    return m_j - (joint - prior.rank())


def appendix_c_spot_check(t: Transcript, message_i: int = 1) -> SpotCheckReport:
    """Per-slot structural check at receiver 2 for the designated message's
    precoders: a short rank increment must come with jointly hide-able
    precoder row spaces of dimension more than M1 + M2 - N2."""
    cfg = t.config
    rep = SpotCheckReport(cfg.astuple(), transcripts=1)
    m1 = t.msg_sizes[(message_i, 1)]
    m2 = t.msg_sizes[(message_i, 2)]
    n2 = cfg.n2
    prior: FieldMatrix | None = None
    prior_rank = 0
    rows_so_far = []
    for slot in range(t.t_total):
        g1, g2 = t.channels[slot][(2, 1)], t.channels[slot][(2, 2)]
        v1, v2 = t.precoders[slot][(message_i, 1)], t.precoders[slot][(message_i, 2)]
        cur = np.concatenate([g1.mul(v1).data, g2.mul(v2).data], axis=1)
        rows_so_far.append(cur)
        stacked = FieldMatrix(np.concatenate(rows_so_far, axis=0), t.prime)
        new_rank = stacked.rank()
        if new_rank - prior_rank < n2:
            rep.slots_in_scope += 1
            d1 = _hideable_dim(v1, 0, m2, prior)
            d2 = _hideable_dim(v2, m1, 0, prior)
            if not d1 + d2 > cfg.m1 + cfg.m2 - n2:
                rep.counterexamples.append(
                    {"slot": slot, "message": message_i, "d1": d1, "d2": d2}
                )
        prior = stacked
        prior_rank = new_rank
    return rep


def spot_check_scheme(
    config: AntennaConfig, seeds: int, seed0: int = 0, prime: int = DEFAULT_PRIME
) -> SpotCheckReport:
    rep = SpotCheckReport(config.astuple())
    for s in range(seeds):
        t = simulate_plan(standard_plan(config), seed0 + s, prime)
        for i in (1, 2):
            rep.merge(appendix_c_spot_check(t, i))
    rep.transcripts = seeds
    return rep


def spot_check_random(
    config: AntennaConfig,
    t_horizon: int,
    seeds: int,
    mode: str = "oblivious_random",
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
) -> SpotCheckReport:
    rep = SpotCheckReport(config.astuple())
    for trial in range(seeds):
        t = random_transcript(config, t_horizon, mode, seed, trial, prime)
        for i in (1, 2):
            rep.merge(appendix_c_spot_check(t, i))
    rep.transcripts = seeds
    return rep

"""Closed-form network constants, all evaluated in exact rational arithmetic.

Everything here is a pure function of the antenna counts: the per-receiver
maximum rank-ratios (with their cooperative and distributed constituents),
the linear sum DoF, the case classification, and the full set of scheme
constants (slots per round, fresh-symbol counts, per-round symbol and
buffered-equation counts, round counts, blocklength, achieved DoF).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import errors
from .config import AntennaConfig, require_normalized


class Case(enum.Enum):
    """Antenna-configuration classes with structurally different schedules."""

    CASE1 = "Case1"  # some receiver alone has as many antennas as both transmitters
    CASE2 = "Case2"  # transmitter 1 alone covers both receivers
    CASE3 = "Case3"  # everything else

    def __str__(self) -> str:
        return self.value


def gamma_bounds(config: AntennaConfig, i: int) -> tuple[Fraction, Fraction]:
    """Cooperative and distributed rank-ratio bounds for receiver *i*.

    coop caps the ratio when the transmitters may pool their antennas;
    dist caps it when they stay distributed.  The maximum rank-ratio is
    max(min(coop, dist), 1).
    """
    cfg = require_normalized(config)
    no = cfg.n_other(i)
    coop = max(
        min(Fraction(cfg.m1 + cfg.m2, no), Fraction(cfg.n1 + cfg.n2, no)), Fraction(1)
    )
    q1, q2 = cfg.q(i, 1), cfg.q(i, 2)
    dist = Fraction(q1 * no + q2 * (no + cfg.n(i)), no * (q2 + no))
    return coop, dist


def gamma(config: AntennaConfig, i: int) -> Fraction:
    """Maximum rank-ratio between receiver *i*'s and the other receiver's
    message-*i* signal subspaces, as an exact rational."""
    cfg = require_normalized(config)
    no = cfg.n_other(i)
    q1, q2 = cfg.q(i, 1), cfg.q(i, 2)
    inner = min(
        Fraction(cfg.m1 + cfg.m2, no),
        Fraction(cfg.n(i) + no, no),
        Fraction(q1 * no + q2 * (no + cfg.n(i)), no * (q2 + no)),
    )
    return max(inner, Fraction(1))


def _dof_expression(cfg: AntennaConfig, g1: Fraction, g2: Fraction) -> Fraction:
    if cfg.m1 + cfg.m2 >= max(cfg.n1, cfg.n2) and g1 * g2 != 1:
        return (g1 * g2 * (cfg.n1 + cfg.n2) - g1 * cfg.n2 - g2 * cfg.n1) / (g1 * g2 - 1)
    # g1*g2 == 1 under the first branch forces n1 = n2 = m1 + m2, where the
    # two branches agree; treat it with the cut-set value.
    return Fraction(cfg.m1 + cfg.m2)


def sum_dof(config: AntennaConfig) -> Fraction:
    """Linear sum DoF of the network."""
    cfg = require_normalized(config)
    return _dof_expression(cfg, gamma(cfg, 1), gamma(cfg, 2))


def bc_sum_dof(config: AntennaConfig) -> Fraction:
    """Sum DoF when the transmitters cooperate (broadcast-channel bound).

    Same expression as sum_dof with each rank-ratio replaced by its
    cooperative bound; this is the comparison curve for loss analysis.
    """
    cfg = require_normalized(config)
    c1, _ = gamma_bounds(cfg, 1)
    c2, _ = gamma_bounds(cfg, 2)
    return _dof_expression(cfg, c1, c2)


def case_of(config: AntennaConfig) -> Case:
    cfg = require_normalized(config)
    if max(cfg.n1, cfg.n2) >= cfg.m1 + cfg.m2:
        return Case.CASE1
    if cfg.m1 >= cfg.n1 + cfg.n2:
        return Case.CASE2
    return Case.CASE3


@dataclass(frozen=True)
class PhaseParams:
    """Constants for one round of the phase serving receiver *i*.

    phi_mode tells whether transmitter 2 participates and retransmits
    overheard combinations (true) or stays silent while transmitter 1
    sends min(m1, n1+n2) fresh symbols (false).
    """

    i: int
    phi_mode: bool
    s: int  # slots per round
    xi: int  # slots in which transmitter 2 sends fresh symbols
    lambda_cap: int  # symbols per round (both transmitters)
    lambda_buf: int  # equations buffered per round
    lambda_bar: int  # maximum extractable single-source equations
    owner_split: tuple[int, int]  # per-transmitter caps on buffered equations
    kappa: int  # rounds
    tx1_syms: int  # fresh symbols from transmitter 1 per round
    tx2_syms: int  # fresh symbols from transmitter 2 per round


@dataclass(frozen=True)
class SchemeParams:
    """All derived constants of the three-phase strategy."""

    config: AntennaConfig
    gamma: tuple[Fraction, Fraction]
    case_label: Case
    phases: tuple[PhaseParams, PhaseParams]
    t_phase3: int
    t_total: int
    achieved_dof: Fraction

    def phase(self, i: int) -> PhaseParams:
        return self.phases[i - 1]

    def message_size(self, i: int, j: int) -> int:
        ph = self.phase(i)
        return ph.kappa * (ph.tx1_syms if j == 1 else ph.tx2_syms)


def _phase_params(cfg: AntennaConfig, i: int, g: Fraction) -> PhaseParams:
    m1, m2 = cfg.m1, cfg.m2
    n_i, n_o = cfg.n(i), cfg.n_other(i)
    phi_mode = m2 > 0 and g * n_o > m1
    if phi_mode:
        # smallest xi making s = m2*xi / min(g*n_o - m1, m2) an integer
        gap = min(g * n_o - m1, Fraction(m2))
        a, b = gap.numerator, gap.denominator
        xi = a // math.gcd(a, m2 * b)
        s_frac = Fraction(m2 * xi * b, a)
        if s_frac.denominator != 1:
            raise errors.InternalInconsistency(f"slot count not integral for {cfg} i={i}")
        s = int(s_frac)
        lambda_cap = s * m1 + xi * m2
        tx1, tx2 = s * m1, xi * m2
    else:
        s, xi = 1, 0
        lambda_cap = min(m1, cfg.n1 + cfg.n2)
        tx1, tx2 = lambda_cap, 0

    lambda_buf = lambda_cap - s * min(m1 + m2, n_i)
    if lambda_buf < 0:
        raise errors.InternalInconsistency(f"negative buffer count for {cfg} i={i}")
    if phi_mode and case_of(cfg) is Case.CASE3:
        # same count via the direct per-round tally; both must agree
        if lambda_buf != s * (m1 - n_i) + xi * m2:
            raise errors.InternalInconsistency(f"buffer count mismatch for {cfg} i={i}")

    b1 = min(tx1, s * n_o - xi * min(m2, n_o))
    b2 = min(xi * min(m2, n_o), s * max(0, n_o - m1))
    lambda_bar = b1 + b2
    if lambda_buf > lambda_bar:
        raise errors.InternalInconsistency(
            f"buffered equations exceed extractable ones for {cfg} i={i}"
        )
    return PhaseParams(
        i=i,
        phi_mode=phi_mode,
        s=s,
        xi=xi,
        lambda_cap=lambda_cap,
        lambda_buf=lambda_buf,
        lambda_bar=lambda_bar,
        owner_split=(b1, b2),
        kappa=0,  # filled by scheme_params
        tx1_syms=tx1,
        tx2_syms=tx2,
    )


def _solve_rounds(cfg: AntennaConfig, lam1: int, lam2: int) -> tuple[int, int, int]:
    """Smallest round counts balancing the two buffers; returns (k1, k2, t3)."""
    c1 = min(cfg.m1 + cfg.m2, cfg.n1)
    c2 = min(cfg.m1 + cfg.m2, cfg.n2)
    if lam1 == 0 and lam2 == 0:
        return 1, 1, 0
    if lam1 == 0:
        return 1, 0, 0
    if lam2 == 0:
        return 0, 1, 0
    r1 = Fraction(c1, lam1)
    r2 = Fraction(c2, lam2)
    t3 = math.lcm(r1.denominator, r2.denominator)
    k1 = t3 * r1
    k2 = t3 * r2
    if k1.denominator != 1 or k2.denominator != 1:
        raise errors.InternalInconsistency(f"balance unsolvable for {cfg}")
    return int(k1), int(k2), t3


def scheme_params(config: AntennaConfig) -> SchemeParams:
    """Populate every scheme constant for the given configuration."""
    cfg = require_normalized(config)
    g1, g2 = gamma(cfg, 1), gamma(cfg, 2)
    p1 = _phase_params(cfg, 1, g1)
    p2 = _phase_params(cfg, 2, g2)
    k1, k2, t3 = _solve_rounds(cfg, p1.lambda_buf, p2.lambda_buf)
    p1 = PhaseParams(**{**p1.__dict__, "kappa": k1})
    p2 = PhaseParams(**{**p2.__dict__, "kappa": k2})
    t_total = k1 * p1.s + k2 * p2.s + t3
    achieved = Fraction(k1 * p1.lambda_cap + k2 * p2.lambda_cap, t_total)
    expected = sum_dof(cfg)
    if achieved != expected:
        raise errors.InternalInconsistency(
            f"achieved DoF {achieved} != closed form {expected} for {cfg}"
        )
    return SchemeParams(
        config=cfg,
        gamma=(g1, g2),
        case_label=case_of(cfg),
        phases=(p1, p2),
        t_phase3=t3,
        t_total=t_total,
        achieved_dof=achieved,
    )


# -- symmetric closed forms -------------------------------------------------

REGIME_BREAKS = (Fraction(1, 2), Fraction(1), Fraction(4, 3), Fraction(2))


def regime_of(m: int, n: int) -> int:
    """Symmetric regime index 1..5 by the ratio n/m (left-open intervals)."""
    r = Fraction(n, m)
    for idx, hi in enumerate(REGIME_BREAKS, start=1):
        if r <= hi:
            return idx
    return 5


def symmetric_closed_forms(m: int, n: int) -> dict:
    """Per-regime closed forms for the symmetric network: rank-ratio,
    transmitter-2/transmitter-1 symbol ratio, and sum DoF."""
    reg = regime_of(m, n)
    table = {
        1: (Fraction(2), Fraction(0), Fraction(4 * n, 3)),
        2: (Fraction(3 * m, m + n), Fraction(2 * n - m, m + n), Fraction(6 * m * n, 4 * m + n)),
        3: (Fraction(3, 2), Fraction(3 * n - 2 * m, 2 * m), Fraction(6 * n, 5)),
        4: (Fraction(2 * m, n), Fraction(1), Fraction(4 * m * n, 2 * m + n)),
        5: (Fraction(1), Fraction(1), Fraction(2 * m)),
    }
    g, ratio, dof = table[reg]
    return {"regime": reg, "gamma": g, "symbol_ratio": ratio, "dof": dof}

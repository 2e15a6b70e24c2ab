from fractions import Fraction as F

import pytest

from xcdof import errors
from xcdof.config import AntennaConfig, normalize
from xcdof.params import (
    Case,
    bc_sum_dof,
    case_of,
    gamma,
    gamma_bounds,
    regime_of,
    scheme_params,
    sum_dof,
    symmetric_closed_forms,
)

C = AntennaConfig


def all_normalized(limit):
    for m1 in range(1, limit + 1):
        for m2 in range(1, m1 + 1):
            for n1 in range(1, limit + 1):
                for n2 in range(1, limit + 1):
                    yield C(m1, m2, n1, n2)


# -- normalization --------------------------------------------------------------


def test_normalize():
    cfg, swapped = normalize(C(2, 3, 1, 1))
    assert cfg == C(3, 2, 1, 1) and swapped
    cfg, swapped = normalize(C(3, 2, 1, 1))
    assert cfg == C(3, 2, 1, 1) and not swapped
    cfg, swapped = normalize(C(1, 1, 4, 2))
    assert cfg == C(1, 1, 4, 2) and not swapped


def test_config_rejections():
    with pytest.raises(errors.ConfigError):
        C(0, 0, 1, 1)
    with pytest.raises(errors.ConfigError):
        C(1, 0, 0, 1)
    with pytest.raises(errors.ConfigError):
        C(1, 0, 1, -1)
    with pytest.raises(errors.ConfigError):
        gamma(C(1, 2, 1, 1), 1)  # not normalized


# -- rank ratios -------------------------------------------------------------------


def test_gamma_known_values():
    assert gamma(C(1, 1, 1, 1), 1) == F(3, 2)
    assert gamma(C(3, 3, 2, 2), 1) == F(9, 5)
    assert gamma(C(2, 2, 3, 1), 1) == F(10, 3)
    assert gamma(C(2, 2, 3, 1), 2) == F(7, 6)


def test_gamma_bounds():
    assert gamma_bounds(C(3, 3, 2, 2), 1) == (F(2), F(9, 5))
    coop, dist = gamma_bounds(C(1, 1, 4, 4), 1)
    assert coop == 1 and dist >= 1 and gamma(C(1, 1, 4, 4), 1) == 1
    coop, dist = gamma_bounds(C(4, 1, 2, 1), 1)
    assert coop == 3 and dist >= 3 and gamma(C(4, 1, 2, 1), 1) == 3


def test_gamma_composition_and_range():
    for cfg in all_normalized(5):
        for i in (1, 2):
            coop, dist = gamma_bounds(cfg, i)
            g = gamma(cfg, i)
            assert g == max(min(coop, dist), 1)
            assert 1 <= g <= max(coop, F(1))


# -- sum DoF -----------------------------------------------------------------------


def test_sum_dof_known_values():
    assert sum_dof(C(3, 3, 2, 2)) == F(18, 7)
    assert sum_dof(C(2, 1, 4, 1)) == F(3)
    assert sum_dof(C(2, 2, 3, 1)) == F(157, 52)


def test_bc_sum_dof():
    assert bc_sum_dof(C(3, 3, 1, 1)) == F(4, 3)
    assert bc_sum_dof(C(1, 1, 2, 2)) == F(2)
    assert bc_sum_dof(C(3, 3, 2, 2)) > sum_dof(C(3, 3, 2, 2))
    # cooperation never hurts
    for cfg in all_normalized(5):
        assert bc_sum_dof(cfg) >= sum_dof(cfg)


# -- case classification ---------------------------------------------------------------


def test_case_of():
    assert case_of(C(2, 1, 4, 1)) is Case.CASE1
    assert case_of(C(4, 1, 2, 1)) is Case.CASE2
    assert case_of(C(3, 3, 2, 2)) is Case.CASE3


def test_case2_equivalence_sweep():
    for cfg in all_normalized(8):
        g1, g2 = gamma(cfg, 1), gamma(cfg, 2)
        stmts = [cfg.m1 >= cfg.n1 + cfg.n2, g1 * cfg.n2 <= cfg.m1, g2 * cfg.n1 <= cfg.m1]
        assert all(stmts) or not any(stmts), cfg


def test_case3_gamma_structure_sweep():
    for cfg in all_normalized(8):
        if case_of(cfg) is not Case.CASE3:
            continue
        for i in (1, 2):
            g = gamma(cfg, i)
            no = cfg.n_other(i)
            q1, q2 = cfg.q(i, 1), cfg.q(i, 2)
            third = F(q1 * no + q2 * (cfg.n1 + cfg.n2), no * (q2 + no))
            assert g == min(F(cfg.m1 + cfg.m2, no), third)
            assert cfg.n1 + cfg.n2 > g * no


# -- scheme constants ---------------------------------------------------------------


def test_scheme_params_running_example():
    sp = scheme_params(C(3, 3, 2, 2))
    for p in sp.phases:
        assert (p.s, p.xi, p.lambda_cap, p.lambda_buf, p.kappa) == (5, 1, 18, 8, 1)
        assert p.owner_split == (8, 0) and p.lambda_bar == 8
    assert sp.t_phase3 == 4 and sp.t_total == 14
    assert sp.achieved_dof == F(18, 7)


def test_scheme_params_single_tx_case():
    sp = scheme_params(C(4, 1, 2, 1))
    p1, p2 = sp.phases
    assert (p1.s, p1.xi, p1.lambda_cap, p1.lambda_buf, p1.kappa) == (1, 0, 3, 1, 4)
    assert (p2.s, p2.xi, p2.lambda_cap, p2.lambda_buf, p2.kappa) == (1, 0, 3, 2, 1)
    assert sp.t_phase3 == 2 and sp.t_total == 7 and sp.achieved_dof == F(15, 7)
    assert not p1.phi_mode and not p2.phi_mode


def test_scheme_params_asymmetric_case3():
    sp = scheme_params(C(2, 2, 3, 1))
    p1, p2 = sp.phases
    assert (p1.s, p1.xi, p1.lambda_cap, p1.lambda_buf, p1.kappa) == (3, 2, 10, 1, 30)
    assert (p2.s, p2.xi, p2.lambda_cap, p2.lambda_buf, p2.kappa) == (4, 3, 14, 10, 1)
    assert sp.t_phase3 == 10 and sp.t_total == 104 and sp.achieved_dof == F(157, 52)


def test_scheme_params_case1_asymmetric_round_counts():
    sp = scheme_params(C(2, 1, 4, 1))
    assert sp.t_total == 1 and sp.achieved_dof == F(3)
    assert sp.phase(1).kappa == 1 and sp.phase(2).kappa == 0
    assert sp.message_size(1, 1) == 2 and sp.message_size(1, 2) == 1
    assert sp.message_size(2, 1) == sp.message_size(2, 2) == 0


def test_scheme_params_consistency_sweep():
    """Achieved DoF equals the closed form for every configuration; the
    buffered-equation count never exceeds the extractable maximum."""
    for cfg in all_normalized(6):
        sp = scheme_params(cfg)  # raises InternalInconsistency on violation
        assert sp.achieved_dof == sum_dof(cfg)
        for p in sp.phases:
            assert 0 <= p.lambda_buf <= p.lambda_bar
            if p.phi_mode:
                # slot count is the smallest integer multiple
                g = min(sp.gamma[p.i - 1] * cfg.n_other(p.i) - cfg.m1, F(cfg.m2))
                assert p.s == F(cfg.m2 * p.xi, 1) / g
                assert all(
                    (F(cfg.m2 * xi_c, 1) / g).denominator != 1
                    for xi_c in range(1, p.xi)
                )
                if case_of(cfg) is Case.CASE3:
                    # the round exactly meets the rank-ratio bound
                    assert sp.gamma[p.i - 1] == F(p.lambda_cap, p.s * cfg.n_other(p.i))


def test_case3_lambda_bar_four_term_min():
    for cfg in all_normalized(6):
        if case_of(cfg) is not Case.CASE3:
            continue
        sp = scheme_params(cfg)
        for p in sp.phases:
            if not p.phi_mode:
                continue
            no = cfg.n_other(p.i)
            s, xi = p.s, p.xi
            theta = min(
                p.lambda_cap,
                s * cfg.m1 + xi * no,
                s * no,
                s * no - xi * min(cfg.m2, no) + s * max(0, no - cfg.m1),
            )
            assert p.lambda_bar == theta
            assert theta >= p.lambda_cap - s * cfg.n(p.i)


# -- symmetric closed forms ---------------------------------------------------------


@pytest.mark.parametrize(
    "m,n,regime", [(2, 1, 1), (3, 2, 2), (3, 3, 2), (3, 4, 3), (2, 3, 4), (1, 3, 5)]
)
def test_regime_of(m, n, regime):
    assert regime_of(m, n) == regime


def test_symmetric_closed_forms_sweep():
    for m in range(1, 9):
        for n in range(1, 9):
            forms = symmetric_closed_forms(m, n)
            cfg = C(m, m, n, n)
            assert sum_dof(cfg) == forms["dof"]
            assert gamma(cfg, 1) == gamma(cfg, 2) == forms["gamma"]
            p = scheme_params(cfg).phase(1)
            ratio = F(p.xi * m, p.s * m) if p.phi_mode else F(0)
            assert ratio == forms["symbol_ratio"]

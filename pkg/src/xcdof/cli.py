"""Command-line interface: exact computations, simulations, verifications.

All outputs are deterministic given the flags; rationals are rendered as
"p/q" strings (never decimals) unless --decimal adds an approximate
column.  Exit codes: 0 success, 1 usage, 2 verification violation,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import errors
from .bounds import (
    spot_check_random,
    spot_check_scheme,
    verify_lemma1,
    verify_lemma2,
    verify_lemma3,
)
from .config import AntennaConfig, normalize
from .fieldmath import DEFAULT_PRIME, validate_prime
from .loss import loss_grid
from .params import (
    bc_sum_dof,
    gamma,
    scheme_params,
    sum_dof,
    symmetric_closed_forms,
)
from .region import is_vertex, region_symmetric, verify_region
from .scheme import (
    check_decodability,
    simulate,
    transcript_to_dict,
    weighted_sum_ok,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_INTERNAL = 3

ENV_SEED = "XCDOF_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_USAGE)


def _default_seed() -> int:
    return int(os.environ.get(ENV_SEED, "0"))


def _fmt(x: Fraction, decimal: bool) -> str:
    s = str(x)
    if decimal:
        s += f" ({float(x):.6g})"
    return s


def _parse_config(ns) -> tuple[AntennaConfig, bool]:
    try:
        cfg = AntennaConfig(ns.m1, ns.m2, ns.n1, ns.n2)
    except errors.ConfigError as exc:
        raise _Usage(str(exc))
    return normalize(cfg)


class _Usage(Exception):
    pass


def _add_config_args(p):
    p.add_argument("m1", type=int)
    p.add_argument("m2", type=int)
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)


def _add_common(p, trials_default=200):
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--trials", type=int, default=trials_default)
    p.add_argument("--T", dest="t_horizon", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--mode",
        choices=["oblivious_random", "delayed_adaptive_random", "paper_scheme"],
        default="oblivious_random",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="xcdof", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="derived scheme constants for a configuration")
    _add_config_args(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--decimal", action="store_true")

    p = sub.add_parser("simulate", help="run the three-phase strategy end to end")
    _add_config_args(p)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--dump", metavar="PATH", default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("verify", help="Monte Carlo / structural verification")
    p.add_argument(
        "kind",
        choices=["lemma1", "lemma2", "lemma3", "appendix_c", "weighted_sum"],
    )
    p.add_argument("config", type=int, nargs="*", metavar="M1 M2 N1 N2")
    p.add_argument("--bc", type=int, nargs=3, metavar=("M", "N1", "N2"))
    _add_common(p)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("region", help="symmetric DoF region and corner points")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=["text", "json", "hv"], default="text")

    p = sub.add_parser("table1", help="symmetric closed forms for the five regimes")
    p.add_argument("--max", type=int, default=8, help="verify numerically up to this antenna count")

    p = sub.add_parser("fig4", help="normalized sum DoF vs receiver/transmitter ratio (CSV)")
    p.add_argument("--max-den", type=int, default=6)
    p.add_argument("--max-num", type=int, default=15)
    p.add_argument("--decimal", action="store_true")

    p = sub.add_parser("lossmap", help="distributed-transmitter loss grid (CSV)")
    p.add_argument(
        "--mode",
        choices=["symmetric", "m1-eq-m2", "n1-eq-n2"],
        default="symmetric",
    )
    p.add_argument("--fixed", type=int, default=2, help="fixed antenna count for the non-swept side")
    p.add_argument("--limit", type=int, default=8)
    return parser


# -- commands ------------------------------------------------------------------


def cmd_params(ns) -> int:
    cfg, swapped = _parse_config(ns)
    sp = scheme_params(cfg)
    g1, g2 = sp.gamma
    fields = [
        ("config", " ".join(map(str, cfg.astuple()))),
        ("swapped", "yes" if swapped else "no"),
        ("case", str(sp.case_label)),
        ("gamma", f"{_fmt(g1, ns.decimal)} {_fmt(g2, ns.decimal)}"),
        ("S", f"{sp.phase(1).s} {sp.phase(2).s}"),
        ("xi", f"{sp.phase(1).xi} {sp.phase(2).xi}"),
        ("Lambda", f"{sp.phase(1).lambda_cap} {sp.phase(2).lambda_cap}"),
        ("lambda", f"{sp.phase(1).lambda_buf} {sp.phase(2).lambda_buf}"),
        ("lambda_bar", f"{sp.phase(1).lambda_bar} {sp.phase(2).lambda_bar}"),
        ("kappa", f"{sp.phase(1).kappa} {sp.phase(2).kappa}"),
        ("t_phase3", str(sp.t_phase3)),
        ("T", str(sp.t_total)),
        ("sum_dof", _fmt(sp.achieved_dof, ns.decimal)),
        ("bc_sum_dof", _fmt(bc_sum_dof(cfg), ns.decimal)),
    ]
    if ns.format == "json":
        print(json.dumps(dict(fields), sort_keys=True, separators=(",", ":")))
    else:
        for k, v in fields:
            print(f"{k} = {v}")
    return EXIT_OK


def cmd_simulate(ns) -> int:
    cfg, _ = _parse_config(ns)
    prime = validate_prime(ns.prime)
    seed = ns.seed if ns.seed is not None else _default_seed()
    t = simulate(cfg, seed, prime)
    rep = check_decodability(t)
    ok = rep.all_pass and weighted_sum_ok(t)
    line = (
        f"T={t.t_total} symbols={t.total_symbols()} dof={t.achieved_dof()} "
        f"decodable={'yes' if rep.all_pass else 'no'}"
    )
    if ns.dump:
        doc = transcript_to_dict(t)
        doc["report"] = {
            "decodable": rep.all_pass,
            "precoder_rank": {f"{i}{j}": v for (i, j), v in rep.precoder_rank.items()},
            "rank_identity": {str(i): v for i, v in rep.rank_identity.items()},
            "projection": {f"{i}{j}": v for (i, j), v in rep.projection.items()},
            "weighted_sum_ok": weighted_sum_ok(t),
        }
        with open(ns.dump, "w") as fh:
            fh.write(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    if ns.format == "json":
        print(
            json.dumps(
                {
                    "T": t.t_total,
                    "symbols": t.total_symbols(),
                    "dof": str(t.achieved_dof()),
                    "decodable": rep.all_pass,
                    "weighted_sum_ok": weighted_sum_ok(t),
                    "resamples": t.resamples,
                },
                sort_keys=True,
                separators=(",", ":"),
            )
        )
    else:
        print(line)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify(ns) -> int:
    prime = validate_prime(ns.prime)
    seed = ns.seed if ns.seed is not None else _default_seed()
    if ns.kind == "lemma2":
        if not ns.bc:
            raise _Usage("verify lemma2 requires --bc M N1 N2")
        rep = verify_lemma2(
            *ns.bc,
            t_horizon=ns.t_horizon,
            trials=ns.trials,
            mode=ns.mode,
            seed=seed,
            prime=prime,
            jobs=ns.jobs,
        )
    else:
        if len(ns.config) != 4:
            raise _Usage(f"verify {ns.kind} requires M1 M2 N1 N2")
        cfg, _ = normalize(AntennaConfig(*ns.config))
        if ns.kind == "lemma1":
            rep = verify_lemma1(
                cfg, ns.t_horizon, ns.trials, ns.mode, seed, prime, ns.jobs
            )
        elif ns.kind == "lemma3":
            rep = verify_lemma3(
                cfg, ns.t_horizon, ns.trials, ns.mode, seed, prime, ns.jobs
            )
        elif ns.kind == "appendix_c":
            if ns.mode == "paper_scheme":
                spot = spot_check_scheme(cfg, ns.trials, seed, prime)
            else:
                spot = spot_check_random(
                    cfg, ns.t_horizon, ns.trials, ns.mode, seed, prime
                )
            payload = {
                "transcripts": spot.transcripts,
                "slots_in_scope": spot.slots_in_scope,
                "counterexamples": len(spot.counterexamples),
            }
            if ns.format == "json":
                print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
            else:
                print(
                    f"counterexamples={len(spot.counterexamples)} "
                    f"slots_in_scope={spot.slots_in_scope} transcripts={spot.transcripts}"
                )
            return EXIT_OK if not spot.counterexamples else EXIT_VIOLATION
        else:  # weighted_sum
            bad = 0
            for s in range(ns.trials):
                t = simulate(cfg, seed + s, prime)
                if not weighted_sum_ok(t):
                    bad += 1
            if ns.format == "json":
                print(
                    json.dumps(
                        {"violations": bad, "transcripts": ns.trials},
                        sort_keys=True,
                        separators=(",", ":"),
                    )
                )
            else:
                print(f"violations={bad} transcripts={ns.trials}")
            return EXIT_OK if bad == 0 else EXIT_VIOLATION
    if ns.format == "json":
        print(json.dumps(rep.to_dict(), sort_keys=True, separators=(",", ":")))
    else:
        ratios = " ".join(f"max{i}={r}" for i, r in sorted(rep.max_ratio.items()))
        print(
            f"violations={rep.violations} {ratios} trials={rep.trials} "
            f"tightness_hits={rep.tightness_hits} resamples={rep.resamples}"
        )
    return EXIT_OK if rep.violations == 0 else EXIT_VIOLATION


def cmd_region(ns) -> int:
    if ns.m < 1 or ns.n < 1:
        raise _Usage("antenna counts must be >= 1")
    reg = region_symmetric(ns.m, ns.n)
    rep = verify_region(ns.m, ns.n)
    if ns.format == "json":
        doc = {
            "m": ns.m,
            "n": ns.n,
            "regime": reg.regime,
            "inequalities": [
                {"coeffs": [str(c) for c in coeffs], "rhs": str(rhs)}
                for coeffs, rhs in reg.inequalities
            ],
            "corners": [[str(x) for x in c] for c in reg.corners],
            "verification": {
                "corner_count": rep.corner_count,
                "infeasible": len(rep.infeasible),
                "non_vertex": len(rep.non_vertex),
                "unpublished_vertices": len(rep.missing),
                "max_corner_sum": str(rep.max_corner_sum),
                "sum_dof": str(rep.sum_dof_value),
            },
        }
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    elif ns.format == "hv":
        print("H-representation (coeffs d <= rhs):")
        for coeffs, rhs in reg.inequalities:
            print("  " + " ".join(str(c) for c in coeffs) + f" <= {rhs}")
        print("V-representation (corner points):")
        for c in reg.corners:
            print("  " + " ".join(str(x) for x in c))
    else:
        print(f"regime = {reg.regime}")
        print(f"corners = {rep.corner_count}")
        for c in reg.corners:
            status = "vertex" if is_vertex(reg.inequalities, c) else "NOT-A-VERTEX"
            print("  (" + ", ".join(str(x) for x in c) + f") {status}")
        print(f"max_corner_sum = {rep.max_corner_sum} (theorem value {rep.sum_dof_value})")
        if rep.missing:
            print(f"unpublished_vertices = {len(rep.missing)}")
    bad = rep.infeasible or rep.non_vertex or rep.max_corner_sum != rep.sum_dof_value
    return EXIT_VIOLATION if bad else EXIT_OK


_TABLE1_ROWS = [
    ("0 < N/M <= 1/2", "2", "0", "4N/3"),
    ("1/2 < N/M <= 1", "3M/(M+N)", "(2N-M)/(M+N)", "6MN/(4M+N)"),
    ("1 < N/M <= 4/3", "3/2", "(3N-2M)/(2M)", "6N/5"),
    ("4/3 < N/M <= 2", "2M/N", "1", "4MN/(2M+N)"),
    ("2 < N/M", "1", "1", "2M"),
]


def cmd_table1(ns) -> int:
    print("regime,gamma,symbol_ratio,dof")
    for row in _TABLE1_ROWS:
        print(",".join(row))
    # numeric verification against the exact parameter core
    for m in range(1, ns.max + 1):
        for n in range(1, ns.max + 1):
            forms = symmetric_closed_forms(m, n)
            cfg = AntennaConfig(m, m, n, n)
            sp = scheme_params(cfg)
            ph = sp.phase(1)
            ratio = Fraction(ph.xi, ph.s) if ph.phi_mode else Fraction(0)
            if (
                sum_dof(cfg) != forms["dof"]
                or gamma(cfg, 1) != forms["gamma"]
                or ratio != forms["symbol_ratio"]
            ):
                print(f"MISMATCH at M={m} N={n}", file=sys.stderr)
                return EXIT_INTERNAL
    print(f"# verified exactly for all 1 <= M,N <= {ns.max}")
    return EXIT_OK


def cmd_fig4(ns) -> int:
    ratios = set()
    for den in range(1, ns.max_den + 1):
        for num in range(1, ns.max_num + 1):
            ratios.add(Fraction(num, den))
    header = "ratio,xc_normalized,bc_normalized"
    if ns.decimal:
        header += ",xc_approx,bc_approx"
    print(header)
    for r in sorted(ratios):
        m, n = r.denominator, r.numerator
        cfg = AntennaConfig(m, m, n, n)
        norm = min(n, 2 * m)
        xc, bc = sum_dof(cfg) / norm, bc_sum_dof(cfg) / norm
        line = f"{r},{xc},{bc}"
        if ns.decimal:
            line += f",{float(xc):.6g},{float(bc):.6g}"
        print(line)
    return EXIT_OK


def cmd_lossmap(ns) -> int:
    mode = ns.mode.replace("-", "_")
    for row in loss_grid(mode, ns.fixed, ns.limit):
        print(row)
    return EXIT_OK


_DISPATCH = {
    "params": cmd_params,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "region": cmd_region,
    "table1": cmd_table1,
    "fig4": cmd_fig4,
    "lossmap": cmd_lossmap,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return _DISPATCH[ns.command](ns)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except errors.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        errors.InternalInconsistency,
        errors.CapacityViolation,
        errors.BufferDeficit,
        errors.TrialAbort,
    ) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

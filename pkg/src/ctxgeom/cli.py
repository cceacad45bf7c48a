"""Command-line frontend writing table and figure data as CSV/JSON files.

Subcommands: kcbs (summary plus figure data for the 5-cycle), chsh (either
angle regime or explicit angles), ncycle (odd-cycle scan table), verify
(exactness audits and the coarse-graining fuzz). Outputs are byte-stable
for identical flags.

Exit codes: 0 ok, 2 I/O failure, 3 bad arguments, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .analysis import (
    ncycle_scan,
    s2_total,
    verify_coarse_graining,
    verify_exactness,
)
from .linalg import EigensolverError
from .overlap import context_invariants
from .projectors import JointDiagonalizationError
from .scenarios import (
    BELL_OPTIMAL_ANGLES,
    ENTROPIC_OPTIMAL_ANGLES,
    ChshConfig,
    build_chsh,
    build_ncycle,
)
from .states import kcbs_mixing_state, named_state, sweep_state
from .witnesses import (
    chaves_fritz,
    commutator_witness_D,
    contextual_fraction,
    cycle_correlator,
    mu_bound,
    p_star,
)

EXIT_OK = 0
EXIT_IO = 2
EXIT_BAD_ARGS = 3
EXIT_NUMERICAL = 4

OUTPUT_DIR_ENV = "CTXGEOM_OUT"

FIG2B_STATES = ("mixed3", "0z", "0x", "+1z", "-1z", "+1x")
SWEEP_POINTS = 61
DEFAULT_NCYCLE = (5, 7, 9, 11, 13, 15)


class BadArguments(ValueError):
    pass


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


def _roundtrip(value, precision: int):
    """Recursively fix floats to the output precision for JSON stability."""
    if isinstance(value, float):
        return float(f"{value:.{precision}f}") + 0.0  # normalizes -0.0
    if isinstance(value, dict):
        return {k: _roundtrip(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_roundtrip(v, precision) for v in value]
    return value


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc


def _write_csv(path: str, metadata: list[str], header: list[str], rows: list[list[str]]) -> None:
    lines = [f"# {m}" for m in metadata]
    lines.append(",".join(header))
    lines.extend(",".join(row) for row in rows)
    _write_text(path, "\n".join(lines) + "\n")


def _write_json(path: str, payload: dict, precision: int) -> None:
    _write_text(
        path, json.dumps(_roundtrip(payload, precision), indent=2, sort_keys=True) + "\n"
    )


def _default_p_grid() -> list[float]:
    return [0.0, 0.25, 0.5, p_star(), 0.75, 0.9, 1.0]


def _context_summaries(scenario, precision: int):
    out = []
    for ctx in scenario.contexts:
        inv = context_invariants(ctx.left_family, ctx.right_family)
        bits, trivial = mu_bound(inv.c_mu)
        out.append(
            {
                "context": ctx.index,
                "E": inv.energy,
                "c_mu": inv.c_mu,
                "s2_bits": inv.s2_bits,
                "saturated": inv.saturated,
                "mu_bound_bits": bits,
                "mu_bound_trivial": trivial,
            }
        )
    return out


def cmd_kcbs(args) -> int:
    scenario = build_ncycle(5)
    prec = args.precision
    p_grid = args.p if args.p else _default_p_grid()
    total_bits = s2_total(scenario)

    fig1_rows = []
    bc_table = []
    for p in p_grid:
        rho = kcbs_mixing_state(p)
        chi = cycle_correlator(scenario, rho)
        cf = contextual_fraction(chi, scenario.chi_nc, scenario.chi_ns)
        bc_max = max(chaves_fritz(scenario, rho, k) for k in range(scenario.n))
        fig1_rows.append([_fmt(p, prec), _fmt(chi, prec), _fmt(cf, prec), _fmt(bc_max, prec)])
        bc_table.append({"p": p, "chi": chi, "cf": cf, "bc_max_bits": bc_max})
    metadata = [
        f"p_star = {_fmt(p_star(), prec)}",
        f"s2_total_bits = {_fmt(total_bits, prec)}",
    ]
    _write_csv(
        os.path.join(args.out, "fig1.csv"),
        metadata,
        ["p", "chi", "cf", "bc_max_bits"],
        fig1_rows,
    )

    sweep_rows = []
    for s in np.linspace(0.0, math.pi / 2, SWEEP_POINTS):
        _, total = commutator_witness_D(scenario, sweep_state(float(s)))
        sweep_rows.append([_fmt(float(s), prec), _fmt(total, prec)])
    _write_csv(os.path.join(args.out, "fig2a.csv"), metadata, ["s", "D_total"], sweep_rows)

    state_rows = []
    state_values = {}
    for name in FIG2B_STATES:
        _, total = commutator_witness_D(scenario, named_state(name))
        state_rows.append([name, _fmt(total, prec)])
        state_values[name] = total
    _write_csv(os.path.join(args.out, "fig2b.csv"), metadata, ["state", "D_total"], state_rows)

    rho_grid_D = [commutator_witness_D(scenario, kcbs_mixing_state(p))[1] for p in p_grid]
    summary = {
        "scenario": "kcbs",
        "n": scenario.n,
        "p_star": p_star(),
        "s2_total_bits": total_bits,
        "contexts": _context_summaries(scenario, prec),
        "witness_grid": bc_table,
        "D_on_mixing_grid": rho_grid_D,
        "D_on_states": state_values,
        "chi_bounds": {"noncontextual": scenario.chi_nc, "no_signaling": scenario.chi_ns},
    }
    _write_json(os.path.join(args.out, "kcbs_summary.json"), summary, prec)
    return EXIT_OK


def cmd_chsh(args) -> int:
    prec = args.precision
    if args.angles is not None:
        angles = tuple(args.angles)
        regime = "custom"
    elif args.regime == "bell":
        angles, regime = BELL_OPTIMAL_ANGLES, "bell"
    else:
        angles, regime = ENTROPIC_OPTIMAL_ANGLES, "entropic"
    scenario = build_chsh(ChshConfig(*angles))
    rho = named_state("phi_plus")
    chi = cycle_correlator(scenario, rho)
    cf = contextual_fraction(chi, scenario.chi_nc, scenario.chi_ns)
    bc = {f"k{k}": chaves_fritz(scenario, rho, k) for k in range(4)}
    d_per, d_tot = commutator_witness_D(scenario, rho)
    summary = {
        "scenario": "chsh",
        "regime": regime,
        "angles": list(angles),
        "chi": chi,
        "cf": cf,
        "bc_bits": bc,
        "D_per_context": d_per,
        "D_total": d_tot,
        "contexts": _context_summaries(scenario, prec),
        "s2_total_bits": s2_total(scenario),
        "chi_bounds": {"noncontextual": scenario.chi_nc, "no_signaling": scenario.chi_ns},
    }
    _write_json(os.path.join(args.out, "chsh_summary.json"), summary, prec)
    return EXIT_OK


def cmd_ncycle(args) -> int:
    prec = args.precision
    n_values = tuple(args.n) if args.n else DEFAULT_NCYCLE
    for n in n_values:
        if n % 2 == 0 or n < 5:
            raise BadArguments(f"cycle length must be odd and >= 5, got {n}")
    rows = ncycle_scan(n_values)
    if args.format == "json":
        payload = {
            "rows": [
                {
                    "n": r.n,
                    "theta_deg": r.theta_deg,
                    "E": r.energy,
                    "s2_per_context_bits": r.s2_per_context,
                    "s2_total_bits": r.s2_total,
                    "n2_s2_per_context": r.n2_s2_per_context,
                }
                for r in rows
            ]
        }
        _write_json(os.path.join(args.out, "ncycle.json"), payload, prec)
        return EXIT_OK
    csv_rows = [
        [
            str(r.n),
            _fmt(r.theta_deg, prec),
            _fmt(r.energy, prec),
            _fmt(r.s2_per_context, prec),
            _fmt(r.s2_total, prec),
            _fmt(r.n2_s2_per_context, prec),
        ]
        for r in rows
    ]
    _write_csv(
        os.path.join(args.out, "ncycle.csv"),
        ["c_mu = 1 verified per context for every n"],
        ["n", "theta_deg", "E", "s2_per_context_bits", "s2_total_bits", "n2_s2_per_context"],
        csv_rows,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    prec = args.precision
    if args.trials < 1:
        raise BadArguments(f"trials must be >= 1, got {args.trials}")

    def exactness_payload(scenario):
        report = verify_exactness(scenario)
        return {
            "total_ordered_pairs": report.total_ordered_pairs,
            "duplicate_count": report.duplicate_count,
            "duplicate_contributions": list(report.duplicate_contributions),
            "mechanism": report.mechanism,
            "s2_total_bits": report.s2_total_bits,
        }

    mono = verify_coarse_graining(args.trials, seed=args.seed)
    payload = {
        "exactness": {
            "kcbs": exactness_payload(build_ncycle(5)),
            "chsh_bell": exactness_payload(build_chsh(ChshConfig(*BELL_OPTIMAL_ANGLES))),
            "chsh_entropic": exactness_payload(
                build_chsh(ChshConfig(*ENTROPIC_OPTIMAL_ANGLES))
            ),
        },
        "monotonicity": {
            "trials": mono.trials,
            "violations": mono.violations,
            "max_negative_delta": mono.max_negative_delta,
            "equality_cases": mono.equality_cases,
            "seed": args.seed,
        },
    }
    _write_json(os.path.join(args.out, "verify.json"), payload, prec)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; bad arguments are 3 here
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_BAD_ARGS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ctxgeom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--out",
            default=os.environ.get(OUTPUT_DIR_ENV, "."),
            help="output directory (default: $CTXGEOM_OUT or the working directory)",
        )
        p.add_argument("--precision", type=int, default=6, help="decimal places (>= 4)")

    p_kcbs = sub.add_parser("kcbs", help="5-cycle summary and figure data")
    common(p_kcbs)
    p_kcbs.add_argument("--p", type=float, action="append", help="mixing-grid point (repeatable)")
    p_kcbs.set_defaults(func=cmd_kcbs)

    p_chsh = sub.add_parser("chsh", help="4-cycle summary at a chosen angle regime")
    common(p_chsh)
    p_chsh.add_argument("--regime", choices=("bell", "entropic"), default="bell")
    p_chsh.add_argument(
        "--angles", type=float, nargs=4, metavar=("A0", "B0", "A1", "B1"), default=None
    )
    p_chsh.set_defaults(func=cmd_chsh)

    p_ncycle = sub.add_parser("ncycle", help="odd-cycle scan table")
    common(p_ncycle)
    p_ncycle.add_argument("--n", type=int, action="append", help="cycle length (repeatable)")
    p_ncycle.add_argument("--format", choices=("csv", "json"), default="csv")
    p_ncycle.set_defaults(func=cmd_ncycle)

    p_verify = sub.add_parser("verify", help="exactness audit and monotonicity fuzz")
    common(p_verify)
    p_verify.add_argument("--trials", type=int, default=10000)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 4:
        sys.stderr.write(f"error: precision must be >= 4, got {args.precision}\n")
        return EXIT_BAD_ARGS
    try:
        os.makedirs(args.out, exist_ok=True)
    except OSError as exc:
        sys.stderr.write(f"error: cannot create output directory: {exc}\n")
        return EXIT_IO
    try:
        return args.func(args)
    except BadArguments as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_ARGS
    except IOError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO
    except (EigensolverError, JointDiagonalizationError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

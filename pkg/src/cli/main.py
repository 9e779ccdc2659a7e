"""Command-line entry point: gen, gambler, run, analyze, verify and report.

Exit status is 0 on success, 1 when a verification verdict fails or the
exact cross-check of a run drifts, and 2 on a usage error (bad flags, or a
domain error raised while handling them).
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import IO, Optional

from src.builtin_gamblers import builtin_spec
from src.builtin_gamblers.params import DEFAULT_HEDGE
from src.cli.configuration import RunConfig
from src.core_model.spec import GamblerSpec
from src.core_model.spec_file import format_spec_file, parse_spec_file
from src.core_model.validation import validate_spec
from src.gale_engine import exact_crosscheck, parse_schedule, run, trace_report, write_trace, write_trace_csv
from src.recon_oracle import window_sets
from src.sequence_forge.files import load_sequence, write_sequence
from src.sequence_forge.sequence import SymbolSequence, make_sequence
from src.shared.errors import DriftExceededError, GaleError
from src.shared.configuration import BaseConfiguration
from src.shared.rationals import format_rational, parse_rational
from src.structure_lab import (
    bound_evaluators,
    closure,
    convergence_rows,
    hier_leaf_set,
    index_set_report,
    overwritten_set_A,
    ratio_constants,
)
from src.structure_lab.limits import write_rows_csv
from src.verify_graph import ALL_CHECKS, graph

logger = logging.getLogger("cli")

BUILTINS = {
    "builtin-phi": "phi",
    "builtin-f": "f",
    "builtin-phi-baseline": "phi-baseline",
}


def _emit(text: str, out: Optional[str] = None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _emit_json(payload: object, out: Optional[str] = None) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)


def _load_gambler(config: RunConfig) -> GamblerSpec:
    family = BUILTINS.get(config.gambler)
    if family is None:
        return parse_spec_file(Path(config.gambler).read_text())
    if config.h is None:
        raise ValueError(f"--h is required for {config.gambler}")
    return builtin_spec(
        family,  # type: ignore[arg-type]
        h=config.h,
        block_bits=config.block_bits,
        hedge=config.hedge_value,
        speed_numerator=config.speed,
    )


def _load_sequence(config: RunConfig) -> SymbolSequence:
    if config.sequence_path is not None:
        return load_sequence(config.sequence_path)
    family = config.family
    if family is None:
        family = {"builtin-f": "f", "builtin-phi": "phi", "builtin-phi-baseline": "phi"}.get(config.gambler, "raw")
    return make_sequence(family, h=config.h, block_bits=config.block_bits, seed=config.seed)  # type: ignore[arg-type]


def cmd_gen(args: argparse.Namespace) -> int:
    """Generate a sequence file and its sidecar."""
    sequence = make_sequence(args.family, h=args.h, block_bits=args.L, seed=args.seed)
    out = args.out or BaseConfiguration(seed=args.seed).sequence_path(args.family, args.h, args.L)
    header = write_sequence(sequence, args.length, out, seed=args.seed)
    _emit(header.model_dump_json(indent=2) + "\n")
    return 0


def cmd_gambler_build(args: argparse.Namespace) -> int:
    """Write a builtin gambler as a spec file."""
    spec = builtin_spec(
        args.builtin,
        h=args.h,
        block_bits=args.L,
        hedge=parse_rational(args.eps),
        speed_numerator=args.speed,
    )
    _emit(format_spec_file(spec, state_cap=args.state_cap), args.out)
    return 0


def cmd_gambler_validate(args: argparse.Namespace) -> int:
    """Validate a spec file."""
    spec = parse_spec_file(Path(args.spec).read_text())
    report = validate_spec(spec, state_cap=args.state_cap)
    _emit(report.model_dump_json(indent=2) + "\n")
    return 0 if report.valid else 1


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command="run",
        seed=args.seed,
        hedge=args.eps,
        family=args.family,
        h=args.h,
        block_bits=args.L,
        gambler=args.gambler,
        speed=args.speed,
        sequence_path=args.seq,
        n_max=args.n_max,
        s_values=list(args.s or []),
        checkpoints=args.checkpoints,
        out=args.out,
        exact=args.exact,
    )


def cmd_run(args: argparse.Namespace) -> int:
    """Simulate a gambler and write its checkpoint CSV."""
    config = _run_config(args)
    spec = _load_gambler(config)
    sequence = _load_sequence(config)
    n_max = config.n_max if config.n_max is not None else sequence.length_limit
    if n_max is None:
        raise ValueError("--n-max is required for generated sequences")
    family = sequence.family if sequence.family in ("phi", "f") else None
    points = parse_schedule(config.checkpoints, n_max, family=family, h=sequence.h)  # type: ignore[arg-type]
    trace = run(
        spec,
        sequence,
        n_max,
        points,
        s_values=config.s_values,
        state_cap=config.state_cap,
        config=config.echo(),
    )
    if config.exact:
        worst = exact_crosscheck(spec, sequence, n_max, state_cap=config.state_cap)
        logger.info(f"exact cross-check passed, worst relative deviation {worst:.3e}")
    if config.out is None:
        write_trace_csv(trace, sys.stdout)
    else:
        write_trace(trace, config.out)
    return 0


def _rows_out(rows: list[dict[str, str]], out: Optional[str]) -> None:
    if out is None:
        write_rows_csv(rows, sys.stdout)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as stream:
        write_rows_csv(rows, stream)


def cmd_analyze(args: argparse.Namespace) -> int:
    """Exact tables, index sets and closed-form constants."""
    what = args.what
    if what in ("beta", "rho"):
        rows = convergence_rows(args.h, args.k_max)
        if what == "beta":
            table = [
                {key: row[key] for key in ("k", "point", "n", "beta_scaled", "limit")}
                for row in rows
                if row["beta_scaled"]
            ]
        else:
            table = [{key: row[key] for key in ("k", "point", "n", "rho")} for row in rows]
        _rows_out(table, args.out)
        return 0
    if what == "bounds":
        _emit_json(bound_evaluators(args.h, args.L).as_dict(), args.out)
        return 0
    if what == "ratios":
        constants = ratio_constants(args.h, args.d)
        _emit_json(
            {
                "h": args.h,
                "d": args.d,
                "ratios": [sorted(format_rational(r) for r in t) for t in constants.ratios],
                "zeta": format_rational(constants.zeta),
                "gamma": format_rational(constants.gamma),
                "threshold": constants.threshold,
            },
            args.out,
        )
        return 0
    # sets
    if args.m is None or args.n is None:
        raise ValueError("analyze sets needs --m and --n")
    if args.family == "phi":
        v, w = window_sets(args.h, args.m, args.n)
        a = overwritten_set_A(args.h, args.n)
        report = index_set_report(
            {"family": "phi", "h": args.h, "m": args.m, "n": args.n},
            {"A": a, "V": v, "W": w},
            {"A_disjoint_V": a.isdisjoint(v)},
        )
    else:
        leaves = {f"V_{i}": hier_leaf_set(args.h, args.d, args.m, args.n, i) for i in range(1, args.h + 1)}
        closures = {f"closure_{name[2:]}": closure(s, args.h, args.n) for name, s in leaves.items()}
        report = index_set_report(
            {"family": "f", "h": args.h, "d": args.d, "m": args.m, "n": args.n},
            {**leaves, **closures},
            {},
        )
    _emit(report.model_dump_json(indent=2) + "\n", args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    """Run registered checks through the verification graph."""
    checks = list(ALL_CHECKS) if args.check == "all" else [args.check]
    configurable = {
        "checks": checks,
        "seeds": list(args.seeds),
        "heads": args.h,
        "horizon": args.n,
        "samples": args.samples,
        "depth": args.d,
        "hedge": args.eps,
    }
    result = graph.invoke({"checks": checks}, {"configurable": configurable})
    summary = result["summary"]
    _emit(summary.model_dump_json(indent=2) + "\n", args.out)
    return 0 if summary.passed else 1


def cmd_report(args: argparse.Namespace) -> int:
    """Summarize a trace CSV."""
    _emit(trace_report(args.trace).model_dump_json(indent=2) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser of every subcommand."""
    parser = argparse.ArgumentParser(
        prog="gale-lab",
        description="Simulate and verify multi-head finite-state gamblers.",
    )
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    commands = parser.add_subparsers(dest="command", required=True)
    eps = format_rational(DEFAULT_HEDGE)

    gen = commands.add_parser("gen", help="generate a sequence file")
    gen.add_argument("--family", choices=["raw", "phi", "f"], required=True)
    gen.add_argument("--h", type=int)
    gen.add_argument("--L", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--length", type=int, required=True)
    gen.add_argument("--out", help="body path (default: under GALE_CACHE_DIR)")
    gen.set_defaults(handler=cmd_gen)

    gambler = commands.add_parser("gambler", help="build or validate gambler specs")
    gambler_commands = gambler.add_subparsers(dest="gambler_command", required=True)
    build = gambler_commands.add_parser("build", help="write a builtin gambler as a spec file")
    build.add_argument("--builtin", choices=["phi", "f", "phi-baseline"], required=True)
    build.add_argument("--h", type=int, required=True)
    build.add_argument("--L", type=int, default=1)
    build.add_argument("--eps", default=eps)
    build.add_argument("--speed", type=int)
    build.add_argument("--state-cap", type=int, default=200_000)
    build.add_argument("--out")
    build.set_defaults(handler=cmd_gambler_build)
    validate = gambler_commands.add_parser("validate", help="validate a spec file")
    validate.add_argument("spec")
    validate.add_argument("--state-cap", type=int, default=200_000)
    validate.set_defaults(handler=cmd_gambler_validate)

    run_cmd = commands.add_parser("run", help="simulate a gambler over a sequence")
    run_cmd.add_argument("--gambler", default="builtin-phi")
    run_cmd.add_argument("--h", type=int)
    run_cmd.add_argument("--L", type=int, default=1)
    run_cmd.add_argument("--eps", default=eps)
    run_cmd.add_argument("--speed", type=int)
    run_cmd.add_argument("--seq")
    run_cmd.add_argument("--family", choices=["raw", "phi", "f"])
    run_cmd.add_argument("--seed", type=int, default=0)
    run_cmd.add_argument("--n-max", dest="n_max", type=int)
    run_cmd.add_argument("--s", type=float, action="append")
    run_cmd.add_argument("--checkpoints", default="boundaries")
    run_cmd.add_argument("--out")
    run_cmd.add_argument("--exact", action="store_true")
    run_cmd.set_defaults(handler=cmd_run)

    analyze = commands.add_parser("analyze", help="exact tables and index sets")
    analyze.add_argument("what", choices=["beta", "rho", "sets", "bounds", "ratios"])
    analyze.add_argument("--h", type=int, required=True)
    analyze.add_argument("--L", type=int, default=1)
    analyze.add_argument("--d", type=int, default=2)
    analyze.add_argument("--k-max", dest="k_max", type=int, default=8)
    analyze.add_argument("--family", choices=["phi", "f"], default="phi")
    analyze.add_argument("--m", type=int)
    analyze.add_argument("--n", type=int)
    analyze.add_argument("--out")
    analyze.set_defaults(handler=cmd_analyze)

    verify = commands.add_parser("verify", help="run verification checks")
    verify.add_argument("check", choices=[*ALL_CHECKS, "all"])
    verify.add_argument("--h", type=int, default=2)
    verify.add_argument("--n", type=int, default=3**8)
    verify.add_argument("--seeds", type=int, nargs="+", default=[0])
    verify.add_argument("--samples", type=int, default=20)
    verify.add_argument("--d", type=int, default=2)
    verify.add_argument("--eps", default=eps)
    verify.add_argument("--out")
    verify.set_defaults(handler=cmd_verify)

    report = commands.add_parser("report", help="summarize a trace CSV")
    report.add_argument("--trace", required=True)
    report.add_argument("--out")
    report.set_defaults(handler=cmd_report)
    return parser


def main(argv: Optional[list[str]] = None, stderr: Optional[IO[str]] = None) -> int:
    """Parse ``argv`` and dispatch; return the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    try:
        return args.handler(args)
    except DriftExceededError as err:
        (stderr or sys.stderr).write(f"{parser.prog} {args.command}: {err}\n")
        return 1
    except (GaleError, ValueError, FileNotFoundError) as err:
        (stderr or sys.stderr).write(f"{parser.prog} {args.command}: {err}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
